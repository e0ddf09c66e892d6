/*
   Copyright 2026 the h10 authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <h10/upoly.hpp>
#include <h10/zp.hpp>

#include <array>
#include <random>

namespace h10 {

struct DegreeBoundExceeded : std::runtime_error {
    explicit DegreeBoundExceeded(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// integer polynomials (dense, BigInt coefficients)
// ---------------------------------------------------------------------------

using IPoly = std::vector<BigInt>;

inline void ip_trim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int ip_deg(const IPoly& a) { return int(a.size()) - 1; }

inline IPoly ip_mul(const IPoly& a, const IPoly& b) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    ip_trim(r);
    return r;
}

inline BigInt ip_content(const IPoly& a) {
    BigInt g = 0;
    for (auto& c : a) g = big_gcd(g, c);
    return g;
}

inline IPoly ip_primitive(IPoly a, BigInt* content_out = nullptr) {
    BigInt g = ip_content(a);
    if (g == 0) g = 1;
    if (!a.empty() && a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    if (content_out) *content_out = g;
    return a;
}

// exact division test over Z
inline std::optional<IPoly> ip_divide_exact(const IPoly& a, const IPoly& b) {
    if (b.empty()) throw std::domain_error("ip_divide_exact: zero divisor");
    if (a.empty()) return IPoly{};
    if (ip_deg(a) < ip_deg(b)) return std::nullopt;
    IPoly r = a, q(a.size() - b.size() + 1, BigInt(0));
    const BigInt& lb = b.back();
    for (int i = ip_deg(a) - ip_deg(b); i >= 0; --i) {
        BigInt num = (size_t(i + ip_deg(b)) < r.size()) ? r[size_t(i + ip_deg(b))] : BigInt(0);
        if (num == 0) continue;
        if (!mpz_divisible_p(num.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        BigInt c = num / lb;
        q[size_t(i)] = c;
        for (size_t j = 0; j < b.size(); ++j) r[size_t(i) + j] -= c * b[j];
    }
    ip_trim(r);
    if (!r.empty()) return std::nullopt;
    ip_trim(q);
    return q;
}

inline ZpPoly ip_to_zp(const ZpCtx& F, const IPoly& a) {
    ZpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        BigInt m = a[i] % BigInt((unsigned long)F.p);
        if (m < 0) m += BigInt((unsigned long)F.p);
        r[i] = m.get_ui();
    }
    zp_trim(r);
    return r;
}

inline UPoly<Rational> ip_to_q(const IPoly& a) {
    std::vector<Rational> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = Rational(a[i]);
    return UPoly<Rational>(std::move(c));
}

// clear denominators: returns primitive integer polynomial and the rational
// unit u with input = u * result
inline IPoly q_to_ip(const UPoly<Rational>& f, Rational* unit = nullptr) {
    BigInt l = 1;
    for (auto& c : f.coeffs()) l = big_lcm(l, c.den());
    IPoly a(f.coeffs().size());
    for (size_t i = 0; i < a.size(); ++i) a[i] = f.coeffs()[i].num() * (l / f.coeffs()[i].den());
    BigInt cont;
    a = ip_primitive(std::move(a), &cont);
    if (unit) *unit = Rational(cont, l);
    return a;
}

// ---------------------------------------------------------------------------
// modular gcd over Q
// ---------------------------------------------------------------------------

namespace detail {
// primes just below 2^62 for CRT-based gcd
inline const std::array<uint64_t, 12> kBigPrimes = {
    4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL,
    4611686018427387761ULL, 4611686018427387731ULL, 4611686018427387661ULL,
    4611686018427387633ULL, 4611686018427387619ULL, 4611686018427387527ULL,
    4611686018427387409ULL, 4611686018427387331ULL, 4611686018427387313ULL};

// medium primes for Zassenhaus
inline const std::array<uint64_t, 16> kFactorPrimes = {
    1073741827ULL, 1073741831ULL, 1073741833ULL, 1073741839ULL,
    1073741843ULL, 1073741857ULL, 1073741891ULL, 1073741909ULL,
    1073741939ULL, 1073741953ULL, 1073742209ULL, 1073742223ULL,
    1073742233ULL, 1073742259ULL, 1073742277ULL, 1073742289ULL};
}  // namespace detail

/// gcd of rational univariate polynomials via modular images + CRT,
/// verified by exact trial division. Returns the monic gcd.
inline UPoly<Rational> qpoly_gcd(const UPoly<Rational>& fa, const UPoly<Rational>& fb) {
    if (fa.is_zero()) return fb.monic();
    if (fb.is_zero()) return fa.monic();
    IPoly A = q_to_ip(fa), B = q_to_ip(fb);
    if (ip_deg(A) == 0 || ip_deg(B) == 0) return UPoly<Rational>::constant(Rational(1));
    BigInt glc = big_gcd(A.back(), B.back());

    int best_deg = INT32_MAX;
    IPoly acc;      // CRT accumulator, coefficients of glc * monic gcd image
    BigInt modulus = 1;
    for (uint64_t p : detail::kBigPrimes) {
        ZpCtx F{p};
        if (A.back() % BigInt((unsigned long)p) == 0) continue;
        if (B.back() % BigInt((unsigned long)p) == 0) continue;
        ZpPoly g = zp_gcd(F, ip_to_zp(F, A), ip_to_zp(F, B));
        if (zp_deg(g) == 0) return UPoly<Rational>::constant(Rational(1));
        if (zp_deg(g) > best_deg) continue;  // unlucky prime
        if (zp_deg(g) < best_deg) {          // previous primes were unlucky
            best_deg = zp_deg(g);
            acc.clear();
            modulus = 1;
        }
        BigInt lmb = glc % BigInt((unsigned long)p);
        if (lmb < 0) lmb += BigInt((unsigned long)p);
        uint64_t lm = lmb.get_ui();
        ZpPoly img = zp_scale(F, g, lm);
        img.resize(size_t(best_deg) + 1, 0);
        // CRT merge
        if (modulus == 1) {
            acc.assign(img.size(), BigInt(0));
            for (size_t i = 0; i < img.size(); ++i) acc[i] = BigInt((unsigned long)img[i]);
            modulus = BigInt((unsigned long)p);
        } else {
            BigInt pb((unsigned long)p);
            BigInt minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pb.get_mpz_t());
            BigInt nm = modulus * pb;
            for (size_t i = 0; i < acc.size(); ++i) {
                BigInt r = BigInt((unsigned long)img[i]) - acc[i];
                r = (r * minv) % pb;
                if (r < 0) r += pb;
                acc[i] = acc[i] + modulus * r;
            }
            modulus = nm;
        }
        // symmetric lift + primitive part, then verify
        IPoly cand(acc.size());
        for (size_t i = 0; i < acc.size(); ++i) {
            BigInt c = acc[i] % modulus;
            if (c * 2 > modulus) c -= modulus;
            cand[i] = c;
        }
        ip_trim(cand);
        if (cand.empty()) continue;
        cand = ip_primitive(std::move(cand));
        if (ip_divide_exact(A, cand) && ip_divide_exact(B, cand))
            return ip_to_q(cand).monic();
    }
    // fall back to exact euclid (slow but certain)
    return upoly_gcd_euclid(fa, fb);
}

inline UPoly<Rational> qpoly_squarefree_part(const UPoly<Rational>& f) {
    if (f.degree() <= 0) return f.monic();
    UPoly<Rational> g = qpoly_gcd(f, f.derivative());
    return (f / g).monic();
}

inline std::vector<std::pair<UPoly<Rational>, int>> qpoly_squarefree_decomp(
    const UPoly<Rational>& f) {
    std::vector<std::pair<UPoly<Rational>, int>> out;
    if (f.degree() <= 0) return out;
    UPoly<Rational> a = f.monic();
    UPoly<Rational> g = qpoly_gcd(a, a.derivative());
    UPoly<Rational> w = a / g;
    int m = 1;
    while (w.degree() > 0) {
        UPoly<Rational> y = qpoly_gcd(w, g);
        UPoly<Rational> z = w / y;
        if (z.degree() > 0) out.emplace_back(z, m);
        g = g / y;
        w = std::move(y);
        ++m;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic polynomials, big-integer coefficients mod M)
// ---------------------------------------------------------------------------

namespace detail {

inline IPoly ip_mod(const IPoly& a, const BigInt& M) {
    IPoly r(a);
    for (auto& c : r) {
        c %= M;
        if (c < 0) c += M;
    }
    ip_trim(r);
    return r;
}
inline IPoly ip_addm(const IPoly& a, const IPoly& b, const BigInt& M) {
    IPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return ip_mod(r, M);
}
inline IPoly ip_subm(const IPoly& a, const IPoly& b, const BigInt& M) {
    IPoly r(std::max(a.size(), b.size()), BigInt(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return ip_mod(r, M);
}
inline IPoly ip_mulm(const IPoly& a, const IPoly& b, const BigInt& M) {
    return ip_mod(ip_mul(a, b), M);
}
// division with remainder by a monic polynomial, coefficients mod M
inline std::pair<IPoly, IPoly> ip_divmod_monic(IPoly a, const IPoly& b, const BigInt& M) {
    if (b.empty() || b.back() != 1) throw std::domain_error("ip_divmod_monic: divisor not monic");
    IPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, BigInt(0));
    a = ip_mod(a, M);
    while (ip_deg(a) >= ip_deg(b)) {
        size_t shift = a.size() - b.size();
        BigInt f = a.back();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] -= f * b[i];
        }
        a = ip_mod(a, M);
    }
    ip_trim(q);
    return {ip_mod(q, M), a};
}

inline ZpPoly zp_from_ip(const ZpCtx& F, const IPoly& a) { return ip_to_zp(F, a); }

inline std::tuple<ZpPoly, ZpPoly, ZpPoly> zp_ext_gcd(const ZpCtx& F, const ZpPoly& a,
                                                     const ZpPoly& b) {
    ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = zp_divmod(F, r0, r1);
        ZpPoly s = zp_sub(F, s0, zp_mul(F, q, s1));
        ZpPoly t = zp_sub(F, t0, zp_mul(F, q, t1));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
        t0 = std::move(t1); t1 = std::move(t);
    }
    uint64_t k = F.inv(r0.back());
    return {zp_scale(F, r0, k), zp_scale(F, s0, k), zp_scale(F, t0, k)};
}

inline IPoly ip_from_zp(const ZpPoly& a) {
    IPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = BigInt((unsigned long)a[i]);
    return r;
}

// One quadratic Hensel step: from f = g h (mod m), s g + t h = 1 (mod m)
// to the same congruences mod m^2. All polynomials monic except s, t.
inline void hensel_step(const IPoly& f, IPoly& g, IPoly& h, IPoly& s, IPoly& t,
                        const BigInt& m) {
    BigInt M = m * m;
    IPoly e = ip_subm(f, ip_mulm(g, h, M), M);
    auto [q, r] = ip_divmod_monic(ip_mulm(s, e, M), h, M);
    IPoly g1 = ip_addm(ip_addm(g, ip_mulm(t, e, M), M), ip_mulm(q, g, M), M);
    IPoly h1 = ip_addm(h, r, M);
    IPoly b = ip_subm(ip_addm(ip_mulm(s, g1, M), ip_mulm(t, h1, M), M), IPoly{BigInt(1)}, M);
    auto [c, d] = ip_divmod_monic(ip_mulm(s, b, M), h1, M);
    IPoly s1 = ip_subm(s, d, M);
    IPoly t1 = ip_subm(ip_subm(t, ip_mulm(t, b, M), M), ip_mulm(c, g1, M), M);
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

// lift a factorization f = prod factors (mod p) to mod p^(2^steps), f monic
inline std::vector<IPoly> hensel_lift_tree(const ZpCtx& F, const IPoly& f,
                                           std::vector<ZpPoly> factors, int steps) {
    if (factors.size() == 1) {
        IPoly r = f;  // the only factor is f itself mod p^k
        return {r};
    }
    size_t half = factors.size() / 2;
    ZpPoly gz{1}, hz{1};
    for (size_t i = 0; i < half; ++i) gz = zp_mul(F, gz, factors[i]);
    for (size_t i = half; i < factors.size(); ++i) hz = zp_mul(F, hz, factors[i]);
    auto [one, sz, tz] = zp_ext_gcd(F, gz, hz);
    if (zp_deg(one) != 0) throw std::runtime_error("hensel: factors not coprime");

    IPoly g = ip_from_zp(gz), h = ip_from_zp(hz), s = ip_from_zp(sz), t = ip_from_zp(tz);
    BigInt m((unsigned long)F.p);
    for (int i = 0; i < steps; ++i) {
        hensel_step(f, g, h, s, t, m);
        m = m * m;
    }
    std::vector<ZpPoly> left(factors.begin(), factors.begin() + long(half));
    std::vector<ZpPoly> right(factors.begin() + long(half), factors.end());
    auto lg = hensel_lift_tree(F, g, std::move(left), steps);
    auto rg = hensel_lift_tree(F, h, std::move(right), steps);
    lg.insert(lg.end(), rg.begin(), rg.end());
    return lg;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Zassenhaus factorization of monic squarefree integer polynomials
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<IPoly> factor_monic_squarefree_int(const IPoly& f) {
    int n = ip_deg(f);
    if (n <= 0) return {};
    if (n == 1) return {f};

    // pick the prime giving the fewest modular factors
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::vector<ZpPoly> best;
    uint64_t best_p = 0;
    int tried = 0;
    for (uint64_t p : kFactorPrimes) {
        ZpCtx F{p};
        ZpPoly fp = ip_to_zp(F, f);
        if (zp_deg(fp) != n) continue;  // lc vanished (cannot happen: monic)
        ZpPoly d = zp_gcd(F, fp, zp_deriv(F, fp));
        if (zp_deg(d) != 0) continue;  // not squarefree mod p
        auto fac = zp_factor_squarefree(F, fp, rng);
        if (best.empty() || fac.size() < best.size()) {
            best = std::move(fac);
            best_p = p;
        }
        if (++tried >= 4 || best.size() == 1) break;
    }
    if (best_p == 0) throw std::runtime_error("factor: no usable prime");
    if (best.size() == 1) return {f};

    // Mignotte-style bound on factor coefficients: 2^n * ||f||_2
    BigInt norm2 = 0;
    for (auto& c : f) norm2 += c * c;
    BigInt bound = (big_sqrt(norm2).first + 1) << (unsigned)n;
    bound = bound * 2 + 1;
    // lift precision p^(2^steps) > bound
    int steps = 0;
    BigInt prec((unsigned long)best_p);
    while (prec < bound) {
        prec = prec * prec;
        ++steps;
    }
    ZpCtx F{best_p};
    std::sort(best.begin(), best.end(),
              [](const ZpPoly& a, const ZpPoly& b) { return a.size() < b.size(); });
    auto lifted = detail::hensel_lift_tree(F, detail::ip_mod(f, prec), best, steps);

    auto symmetric = [&](IPoly a) {
        for (auto& c : a) {
            c %= prec;
            if (c < 0) c += prec;
            if (c * 2 > prec) c -= prec;
        }
        ip_trim(a);
        return a;
    };

    // subset recombination
    std::vector<IPoly> out;
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = int(i);
    IPoly rest = f;
    size_t take = 1;
    while (2 * take <= alive.size()) {
        bool found = false;
        std::vector<size_t> idx(take);
        for (size_t i = 0; i < take; ++i) idx[i] = i;
        while (true) {
            IPoly cand{BigInt(1)};
            for (size_t i : idx) cand = detail::ip_mod(ip_mul(cand, lifted[size_t(alive[i])]), prec);
            cand = symmetric(std::move(cand));
            if (auto q = ip_divide_exact(rest, cand)) {
                out.push_back(ip_primitive(std::move(cand)));
                rest = std::move(*q);
                std::vector<int> na;
                for (size_t i = 0, k = 0; i < alive.size(); ++i) {
                    if (k < idx.size() && idx[k] == i) { ++k; continue; }
                    na.push_back(alive[i]);
                }
                alive = std::move(na);
                found = true;
                break;
            }
            // next combination
            size_t j = take;
            while (j > 0) {
                --j;
                if (idx[j] != j + alive.size() - take) {
                    ++idx[j];
                    for (size_t k = j + 1; k < take; ++k) idx[k] = idx[k - 1] + 1;
                    break;
                }
                if (j == 0) { j = SIZE_MAX; break; }
            }
            if (j == SIZE_MAX) break;
        }
        if (!found) ++take;
    }
    if (ip_deg(rest) > 0) out.push_back(ip_primitive(std::move(rest)));
    return out;
}

}  // namespace detail

/// Irreducible factorization over Q. Returns the unit u and monic irreducible
/// factors with multiplicities such that u * prod factor^mult = f.
struct QFactorization {
    Rational unit;
    std::vector<std::pair<UPoly<Rational>, int>> factors;
};

inline QFactorization factor_rational(const UPoly<Rational>& f, int degree_bound = 64) {
    if (f.is_zero()) throw std::domain_error("factor_rational: zero polynomial");
    if (f.degree() > degree_bound)
        throw DegreeBoundExceeded("factor_rational: degree " + std::to_string(f.degree()) +
                                  " exceeds bound " + std::to_string(degree_bound));
    QFactorization out;
    out.unit = f.lc();
    if (f.degree() == 0) return out;

    UPoly<Rational> g = f.monic();
    size_t zeros = g.trailing_zero_count();
    if (zeros > 0) {
        std::vector<Rational> shifted(g.coeffs().begin() + long(zeros), g.coeffs().end());
        g = UPoly<Rational>(std::move(shifted));
        out.factors.emplace_back(UPoly<Rational>({Rational(0), Rational(1)}), int(zeros));
    }
    for (auto& [part, mult] : qpoly_squarefree_decomp(g)) {
        // monicize to an integer polynomial: y = c x with c = lcm of denominators
        BigInt c = 1;
        for (auto& a : part.coeffs()) c = big_lcm(c, a.den());
        int d = part.degree();
        IPoly pz(size_t(d) + 1);
        for (int i = 0; i <= d; ++i) {
            Rational ai = part[size_t(i)] * Rational(big_pow(c, (unsigned long)(d - i)));
            if (!ai.is_integer()) throw std::logic_error("factor_rational: monicize failed");
            pz[size_t(i)] = ai.num();
        }
        for (auto& hz : detail::factor_monic_squarefree_int(pz)) {
            // map back x -> c x, then monic
            std::vector<Rational> hc(hz.size());
            for (size_t i = 0; i < hz.size(); ++i)
                hc[i] = Rational(hz[i]) * Rational(big_pow(c, (unsigned long)i));
            out.factors.emplace_back(UPoly<Rational>(std::move(hc)).monic(), mult);
        }
    }
    // canonical order: by degree then coefficient string
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.second < b.second;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Trager factorization over a quadratic tower
// ---------------------------------------------------------------------------

namespace detail {

// conjugation negating the top generator of `tw`
inline TElem conj_top(const TElem& e, const TowerRef& tw) {
    TElem x = e.lift_to(tw);
    auto c = x.coords();
    size_t h = c.size() / 2;
    for (size_t i = h; i < c.size(); ++i) c[i] = -c[i];
    return TElem(tw, std::move(c));
}

inline UPoly<TElem> upoly_conj_top(const UPoly<TElem>& f, const TowerRef& tw) {
    std::vector<TElem> c(f.coeffs());
    for (auto& x : c) x = conj_top(x, tw);
    return UPoly<TElem>(std::move(c));
}

inline UPoly<TElem> upoly_lift(const UPoly<TElem>& f, const TowerRef& tw) {
    std::vector<TElem> c(f.coeffs());
    for (auto& x : c) x = x.lift_to(tw);
    return UPoly<TElem>(std::move(c));
}

inline std::optional<UPoly<Rational>> upoly_to_q(const UPoly<TElem>& f) {
    std::vector<Rational> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (!f.coeffs()[i].is_rational()) return std::nullopt;
        c[i] = f.coeffs()[i].rational_part();
    }
    return UPoly<Rational>(std::move(c));
}

inline UPoly<TElem> upoly_from_q(const UPoly<Rational>& f) {
    std::vector<TElem> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = TElem(f.coeffs()[i]);
    return UPoly<TElem>(std::move(c));
}

// an element of the tower below, viewed in the level above (coefficients in
// the lower half)
inline std::optional<UPoly<TElem>> upoly_descend(const UPoly<TElem>& f, const TowerRef& tw) {
    std::vector<TElem> c(f.coeffs().size());
    const TowerRef& below = tw ? tw->below() : nullptr;
    for (size_t i = 0; i < c.size(); ++i) {
        TElem x = f.coeffs()[i].lift_to(tw);
        auto co = x.coords();
        size_t h = co.size() / 2;
        for (size_t j = h; j < co.size(); ++j)
            if (!co[j].is_zero()) return std::nullopt;
        co.resize(h);
        c[i] = TElem(below, std::move(co));
    }
    return UPoly<TElem>(std::move(c));
}

}  // namespace detail

/// Irreducible factorization over a quadratic tower by recursive Trager norm
/// descent. Factors are monic over the tower of `f`'s coefficients.
inline std::vector<std::pair<UPoly<TElem>, int>> factor_tower(const UPoly<TElem>& f_in,
                                                              const TowerRef& tw,
                                                              int degree_bound = 64) {
    if (f_in.is_zero()) throw std::domain_error("factor_tower: zero polynomial");
    if (f_in.degree() > degree_bound)
        throw DegreeBoundExceeded("factor_tower: degree exceeds bound");
    std::vector<std::pair<UPoly<TElem>, int>> out;
    if (f_in.degree() <= 0) return out;

    if (!tw) {
        auto q = detail::upoly_to_q(f_in);
        if (!q) throw std::domain_error("factor_tower: non-rational coefficients over Q");
        for (auto& [g, m] : factor_rational(*q, degree_bound).factors)
            out.emplace_back(detail::upoly_from_q(g), m);
        return out;
    }

    // If every coefficient lives in the tower below, factor there first and
    // split the results over this level.
    UPoly<TElem> f = detail::upoly_lift(f_in, tw).monic();

    for (auto& [part, mult] : upoly_squarefree_decomp(f)) {
        UPoly<TElem> g = detail::upoly_lift(part, tw);
        TElem theta = TElem::top_generator(tw);
        // Trager: shift until the norm is squarefree
        for (long lam = 0;; lam = lam <= 0 ? -lam + 1 : -lam) {
            if (lam > 16) throw std::runtime_error("factor_tower: no squarefree norm shift");
            UPoly<TElem> shift{theta.lift_to(tw) * TElem(Rational(-lam)), TElem::one().lift_to(tw)};
            UPoly<TElem> gs = g.compose(shift);  // g(x - lam*theta)
            UPoly<TElem> norm_full = gs * detail::upoly_conj_top(gs, tw);
            auto norm_below = detail::upoly_descend(norm_full, tw);
            if (!norm_below) throw std::logic_error("factor_tower: norm not below");
            UPoly<TElem> norm = *norm_below;
            UPoly<TElem> sf = upoly_gcd_euclid(norm, norm.derivative());
            if (sf.degree() != 0) continue;
            auto sub = factor_tower(norm, tw ? tw->below() : nullptr, 2 * degree_bound);
            UPoly<TElem> back{theta.lift_to(tw) * TElem(Rational(lam)), TElem::one().lift_to(tw)};
            for (auto& [h, hm] : sub) {
                (void)hm;
                UPoly<TElem> hl = detail::upoly_lift(h, tw).compose(back);  // h(x + lam*theta)
                UPoly<TElem> fac = upoly_gcd_euclid(g, hl);
                if (fac.degree() > 0) out.emplace_back(fac, mult);
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first.degree() < b.first.degree();
    });
    return out;
}

}  // namespace h10
