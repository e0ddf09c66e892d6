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

#include <h10/factor.hpp>
#include <h10/mpoly.hpp>
#include <h10/zp2.hpp>

namespace h10 {

namespace detail {

inline bool mpoly_all_rational(const MPoly& p) {
    for (auto& [e, c] : p.terms())
        if (!c.is_rational()) return false;
    return true;
}

inline UPoly<Rational> mpoly_to_uq(const MPoly& p, size_t var) {
    std::vector<Rational> c(p.degree_in(var) + 1, Rational(0));
    for (auto& [e, k] : p.terms()) c[e[var]] = k.rational_part();
    return UPoly<Rational>(std::move(c));
}

inline UPoly<TElem> mpoly_to_ut(const MPoly& p, size_t var) {
    std::vector<TElem> c(p.degree_in(var) + 1, TElem::zero());
    for (auto& [e, k] : p.terms()) c[e[var]] = k;
    return UPoly<TElem>(std::move(c));
}

inline MPoly uq_to_mpoly(const UPoly<Rational>& u, const VarSetRef& vars, size_t var) {
    MPoly p(vars);
    ExpVec e(vars->size(), 0);
    for (size_t i = 0; i < u.coeffs().size(); ++i) {
        if (u.coeffs()[i].is_zero()) continue;
        e[var] = uint32_t(i);
        p.add_term(e, TElem(u.coeffs()[i]));
    }
    return p;
}

inline MPoly ut_to_mpoly(const UPoly<TElem>& u, const VarSetRef& vars, size_t var) {
    MPoly p(vars);
    ExpVec e(vars->size(), 0);
    for (size_t i = 0; i < u.coeffs().size(); ++i) {
        if (u.coeffs()[i].is_zero()) continue;
        e[var] = uint32_t(i);
        p.add_term(e, u.coeffs()[i]);
    }
    return p;
}

}  // namespace detail

MPoly mpoly_gcd(const MPoly& A, const MPoly& B);

namespace detail {

// dense coefficient view in the main variable
inline std::vector<MPoly> mpoly_dense_in(const MPoly& p, size_t var) {
    std::vector<MPoly> c(p.degree_in(var) + 1, MPoly(p.vars()));
    for (auto& [e, k] : p.terms()) {
        ExpVec rest(e);
        uint32_t d = rest[var];
        rest[var] = 0;
        c[d].add_term(rest, k);
    }
    return c;
}

inline MPoly mpoly_from_dense(const std::vector<MPoly>& c, const VarSetRef& vars, size_t var) {
    MPoly p(vars);
    for (size_t i = 0; i < c.size(); ++i)
        for (auto& [e, k] : c[i].terms()) {
            ExpVec t(e);
            t[var] += uint32_t(i);
            p.add_term(t, k);
        }
    return p;
}

inline MPoly mpoly_content(const std::vector<MPoly>& c) {
    MPoly g(c.empty() ? VarSet::make({}) : c[0].vars());
    for (auto& x : c) {
        if (x.is_zero()) continue;
        g = g.is_zero() ? x : mpoly_gcd(g, x);
        if (g.is_constant()) break;
    }
    return g;
}

// pseudo-remainder of dense polys in the main variable
inline std::vector<MPoly> mpoly_prem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
    int da = int(a.size()) - 1, db = int(b.size()) - 1;
    const MPoly& lb = b.back();
    while (da >= db) {
        MPoly la = a.back();
        // a = lb*a - la*x^(da-db)*b
        for (auto& x : a) x = x * lb;
        for (int i = 0; i <= db; ++i) a[size_t(da - db + i)] -= la * b[size_t(i)];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        da = int(a.size()) - 1;
    }
    return a;
}

// --- modular bivariate gcd over Q -----------------------------------------

// dense integer bivariate, x-major: a[i][j] = coeff of x^i y^j
using IPoly2 = std::vector<IPoly>;

inline void ip2_trim(IPoly2& a) {
    for (auto& r : a) ip_trim(r);
    while (!a.empty() && a.back().empty()) a.pop_back();
}

inline std::optional<IPoly2> ip2_divide_exact(IPoly2 a, const IPoly2& b) {
    ip2_trim(a);
    if (a.empty()) return IPoly2{};
    if (int(a.size()) < int(b.size())) return std::nullopt;
    IPoly2 q(a.size() - b.size() + 1);
    const IPoly& lb = b.back();
    for (int i = int(a.size()) - int(b.size()); i >= 0; --i) {
        size_t top = size_t(i) + b.size() - 1;
        IPoly num = top < a.size() ? a[top] : IPoly{};
        ip_trim(num);
        if (num.empty()) continue;
        auto c = ip_divide_exact(num, lb);
        if (!c) return std::nullopt;
        q[size_t(i)] = *c;
        for (size_t j = 0; j < b.size(); ++j) {
            IPoly prod = ip_mul(*c, b[j]);
            IPoly& tgt = a[size_t(i) + j];
            if (tgt.size() < prod.size()) tgt.resize(prod.size(), BigInt(0));
            for (size_t k = 0; k < prod.size(); ++k) tgt[k] -= prod[k];
            ip_trim(tgt);
        }
    }
    ip2_trim(a);
    if (!a.empty()) return std::nullopt;
    return q;
}

// MPoly (rational coefficients, depending only on vars vx, vy) -> primitive
// integer dense bivariate
inline IPoly2 mpoly_to_ip2(const MPoly& p, size_t vx, size_t vy) {
    BigInt l = 1;
    for (auto& [e, c] : p.terms()) l = big_lcm(l, c.rational_part().den());
    IPoly2 a(p.degree_in(vx) + 1);
    for (auto& [e, c] : p.terms()) {
        Rational r = c.rational_part();
        BigInt v = r.num() * (l / r.den());
        IPoly& row = a[e[vx]];
        if (row.size() <= e[vy]) row.resize(e[vy] + 1, BigInt(0));
        row[e[vy]] = v;
    }
    // primitive + sign normalization by the grlex-leading coefficient
    BigInt g = 0;
    for (auto& row : a)
        for (auto& c : row) g = big_gcd(g, c);
    if (g == 0) g = 1;
    for (auto& row : a)
        for (auto& c : row) c /= g;
    ip2_trim(a);
    return a;
}

inline MPoly ip2_to_mpoly(const IPoly2& a, const VarSetRef& vars, size_t vx, size_t vy) {
    MPoly p(vars);
    ExpVec e(vars->size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            e[vx] = uint32_t(i);
            e[vy] = uint32_t(j);
            p.add_term(e, TElem(Rational(a[i][j])));
        }
    return p;
}

inline Zp2Poly ip2_to_zp2(const ZpCtx& F, const IPoly2& a) {
    Zp2Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = ip_to_zp(F, a[i]);
    zp2_trim(r);
    return r;
}

// grlex-leading (x,y) exponent and integer coefficient
inline std::tuple<int, int, BigInt> ip2_lead_grlex(const IPoly2& a) {
    int bx = -1, by = -1;
    BigInt c = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            int ti = int(i), tj = int(j);
            bool better = false;
            if (bx < 0) better = true;
            else {
                int d1 = ti + tj, d0 = bx + by;
                if (d1 != d0) better = d1 > d0;
                else better = ti > bx;
            }
            if (better) { bx = ti; by = tj; c = a[i][j]; }
        }
    return {bx, by, c};
}

inline std::pair<int, int> zp2_lead_grlex(const Zp2Poly& a) {
    int bx = -1, by = -1;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) {
            if (a[i][j] == 0) continue;
            int ti = int(i), tj = int(j);
            bool better = false;
            if (bx < 0) better = true;
            else {
                int d1 = ti + tj, d0 = bx + by;
                if (d1 != d0) better = d1 > d0;
                else better = ti > bx;
            }
            if (better) { bx = ti; by = tj; }
        }
    return {bx, by};
}

inline uint64_t zp2_coeff(const Zp2Poly& a, int i, int j) {
    if (i < 0 || i >= int(a.size())) return 0;
    if (j < 0 || j >= int(a[size_t(i)].size())) return 0;
    return a[size_t(i)][size_t(j)];
}

/// Modular gcd for bivariate rational-coefficient polynomials: mod-p images
/// by Brown's method, CRT, symmetric lift, exact verification over Z.
inline std::optional<MPoly> mpoly_gcd_modular_bivar(const MPoly& A, const MPoly& B,
                                                    size_t vx, size_t vy) {
    IPoly2 a = mpoly_to_ip2(A, vx, vy);
    IPoly2 b = mpoly_to_ip2(B, vx, vy);
    auto [alx, aly, alc] = ip2_lead_grlex(a);
    auto [blx, bly, blc] = ip2_lead_grlex(b);
    std::pair<int, int> lead_a{alx, aly}, lead_b{blx, bly};
    BigInt glc = big_gcd(alc, blc);

    std::pair<int, int> best{INT32_MAX, INT32_MAX};
    std::map<std::pair<int, int>, BigInt> acc;
    BigInt modulus = 1;

    for (uint64_t p : detail::kBigPrimes) {
        ZpCtx F{p};
        Zp2Poly ap = ip2_to_zp2(F, a), bp = ip2_to_zp2(F, b);
        if (zp2_lead_grlex(ap) != lead_a || zp2_lead_grlex(bp) != lead_b)
            continue;  // a leading coefficient vanished mod p
        auto gp = zp2_gcd(F, ap, bp);
        if (!gp) continue;
        auto lead = zp2_lead_grlex(*gp);
        if (lead.first < 0) continue;
        if (lead.first == 0 && lead.second == 0)
            return MPoly::constant(A.vars(), TElem::one());
        int total = lead.first + lead.second;
        int btotal = best.first == INT32_MAX ? INT32_MAX : best.first + best.second;
        if (total > btotal || (total == btotal && lead.first > best.first)) continue;
        if (total < btotal || lead.first < best.first) {
            best = lead;
            acc.clear();
            modulus = 1;
        }
        // scale so the grlex-leading coefficient is glc mod p
        BigInt glm = glc % BigInt((unsigned long)p);
        if (glm < 0) glm += BigInt((unsigned long)p);
        uint64_t scale = F.mul(glm.get_ui(), F.inv(zp2_coeff(*gp, best.first, best.second)));
        // CRT accumulate
        BigInt pb((unsigned long)p);
        if (modulus == 1) {
            for (size_t i = 0; i < gp->size(); ++i)
                for (size_t j = 0; j < (*gp)[i].size(); ++j) {
                    uint64_t v = F.mul((*gp)[i][j], scale);
                    if (v) acc[{int(i), int(j)}] = BigInt((unsigned long)v);
                }
            modulus = pb;
        } else {
            BigInt minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pb.get_mpz_t());
            std::map<std::pair<int, int>, BigInt> next;
            // union of supports
            for (auto& [k, v] : acc) {
                uint64_t img = F.mul(zp2_coeff(*gp, k.first, k.second), scale);
                BigInt r = BigInt((unsigned long)img) - v;
                r = (r * minv) % pb;
                if (r < 0) r += pb;
                next[k] = v + modulus * r;
            }
            for (size_t i = 0; i < gp->size(); ++i)
                for (size_t j = 0; j < (*gp)[i].size(); ++j) {
                    std::pair<int, int> k{int(i), int(j)};
                    if ((*gp)[i][j] == 0 || next.count(k)) continue;
                    uint64_t img = F.mul((*gp)[i][j], scale);
                    BigInt r = (BigInt((unsigned long)img) * minv) % pb;
                    if (r < 0) r += pb;
                    next[k] = modulus * r;  // previous value was 0
                }
            acc = std::move(next);
            modulus = modulus * pb;
        }
        // symmetric lift -> candidate; primitive; verify
        IPoly2 cand;
        for (auto& [k, v] : acc) {
            BigInt c = v % modulus;
            if (c < 0) c += modulus;
            if (c * 2 > modulus) c -= modulus;
            if (c == 0) continue;
            if (int(cand.size()) <= k.first) cand.resize(size_t(k.first) + 1);
            IPoly& row = cand[size_t(k.first)];
            if (int(row.size()) <= k.second) row.resize(size_t(k.second) + 1, BigInt(0));
            row[size_t(k.second)] = c;
        }
        ip2_trim(cand);
        if (cand.empty()) continue;
        BigInt g = 0;
        for (auto& row : cand)
            for (auto& c : row) g = big_gcd(g, c);
        if (g == 0) continue;
        for (auto& row : cand)
            for (auto& c : row) c /= g;
        if (ip2_divide_exact(a, cand) && ip2_divide_exact(b, cand)) {
            MPoly r = ip2_to_mpoly(cand, A.vars(), vx, vy);
            return r.scaled(r.lead_coeff().inv());
        }
    }
    return std::nullopt;
}

// --- Kronecker-substitution multiplication --------------------------------

// A = scale * Aint with Aint primitive integer
inline IPoly2 mpoly_to_ip2_scaled(const MPoly& p, size_t vx, size_t vy, Rational& scale) {
    BigInt l = 1;
    for (auto& [e, c] : p.terms()) l = big_lcm(l, c.rational_part().den());
    IPoly2 a(p.degree_in(vx) + 1);
    for (auto& [e, c] : p.terms()) {
        Rational r = c.rational_part();
        BigInt v = r.num() * (l / r.den());
        IPoly& row = a[e[vx]];
        if (row.size() <= e[vy]) row.resize(e[vy] + 1, BigInt(0));
        row[e[vy]] = v;
    }
    BigInt g = 0;
    for (auto& row : a)
        for (auto& c : row) g = big_gcd(g, c);
    if (g == 0) g = 1;
    for (auto& row : a)
        for (auto& c : row) c /= g;
    ip2_trim(a);
    scale = Rational(g, l);
    return a;
}

// pack nonnegative coefficients into limb-aligned slots of a single integer
inline BigInt kron_pack(const IPoly2& a, size_t ystride, size_t slot_limbs, bool negative_part) {
    size_t total = a.size() * ystride * slot_limbs;
    std::vector<mp_limb_t> buf(total + 1, 0);
    bool any = false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) {
            const BigInt& c = a[i][j];
            if (c == 0) continue;
            if ((c < 0) != negative_part) continue;
            any = true;
            BigInt v = c < 0 ? BigInt(-c) : c;
            size_t off = (i * ystride + j) * slot_limbs;
            size_t n = mpz_size(v.get_mpz_t());
            const mp_limb_t* limbs = mpz_limbs_read(v.get_mpz_t());
            for (size_t k = 0; k < n; ++k) buf[off + k] = limbs[k];
        }
    BigInt out = 0;
    if (any) {
        mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    }
    return out;
}

inline IPoly2 kron_unpack(const BigInt& v, size_t nx, size_t ystride, size_t slot_limbs) {
    IPoly2 out(nx);
    if (v == 0) { ip2_trim(out); return out; }
    size_t nlimbs = mpz_size(v.get_mpz_t());
    const mp_limb_t* limbs = mpz_limbs_read(v.get_mpz_t());
    for (size_t i = 0; i < nx; ++i) {
        IPoly row(ystride, BigInt(0));
        bool nonzero = false;
        for (size_t j = 0; j < ystride; ++j) {
            size_t off = (i * ystride + j) * slot_limbs;
            if (off >= nlimbs) break;
            size_t n = std::min(slot_limbs, nlimbs - off);
            BigInt c;
            mpz_import(c.get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0, limbs + off);
            if (c != 0) nonzero = true;
            row[j] = c;
        }
        ip_trim(row);
        if (nonzero) out[i] = std::move(row);
    }
    ip2_trim(out);
    return out;
}

inline IPoly2 ip2_kron_mul(const IPoly2& a, const IPoly2& b) {
    if (a.empty() || b.empty()) return {};
    size_t nya = 0, nyb = 0;
    size_t bits_a = 1, bits_b = 1;
    for (auto& row : a)
        for (auto& c : row)
            if (c != 0) bits_a = std::max(bits_a, mpz_sizeinbase(c.get_mpz_t(), 2));
    for (auto& row : a) nya = std::max(nya, row.size());
    for (auto& row : b)
        for (auto& c : row)
            if (c != 0) bits_b = std::max(bits_b, mpz_sizeinbase(c.get_mpz_t(), 2));
    for (auto& row : b) nyb = std::max(nyb, row.size());
    size_t ystride = nya + nyb;  // strictly greater than any product y-degree
    size_t need = bits_a + bits_b + 64;  // generous headroom for term count
    size_t slot_limbs = (need + 63) / 64;

    BigInt ap = kron_pack(a, ystride, slot_limbs, false);
    BigInt an = kron_pack(a, ystride, slot_limbs, true);
    BigInt bp = kron_pack(b, ystride, slot_limbs, false);
    BigInt bn = kron_pack(b, ystride, slot_limbs, true);
    BigInt pos = ap * bp + an * bn;
    BigInt neg = ap * bn + an * bp;
    size_t nx = a.size() + b.size() - 1;
    IPoly2 p = kron_unpack(pos, nx, ystride, slot_limbs);
    IPoly2 n = kron_unpack(neg, nx, ystride, slot_limbs);
    IPoly2 r(std::max(p.size(), n.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        const IPoly& pr = i < p.size() ? p[i] : IPoly{};
        const IPoly& nr = i < n.size() ? n[i] : IPoly{};
        IPoly row(std::max(pr.size(), nr.size()), BigInt(0));
        for (size_t j = 0; j < pr.size(); ++j) row[j] = pr[j];
        for (size_t j = 0; j < nr.size(); ++j) row[j] -= nr[j];
        ip_trim(row);
        r[i] = std::move(row);
    }
    ip2_trim(r);
    return r;
}

// definitive fast coprimality certificate: a univariate specialization with
// intact leading structure and constant gcd proves the gcd is constant
inline bool zp2_coprime_certificate(const ZpCtx& F, const Zp2Poly& a, const Zp2Poly& b,
                                    int atries = 3) {
    if (a.empty() || b.empty()) return false;
    std::mt19937_64 rng(0x2545F4914F6CDD1DULL);
    for (int t = 0; t < atries; ++t) {
        uint64_t y0 = rng() % F.p;
        ZpPoly av = zp2_eval_y(F, a, y0), bv = zp2_eval_y(F, b, y0);
        if (zp_deg(av) != zp2_deg_x(a) || zp_deg(bv) != zp2_deg_x(b)) continue;
        if (zp_deg(zp_gcd(F, av, bv)) == 0) {
            // x-part is trivial; y-contents must be coprime too
            ZpPoly ca{}, cb{};
            for (auto& c : a) ca = zp_gcd(F, ca, c);
            for (auto& c : b) cb = zp_gcd(F, cb, c);
            if (zp_deg(zp_gcd(F, ca, cb)) == 0) return true;
            return false;
        }
    }
    return false;
}

}  // namespace detail

struct GcdCofactors {
    MPoly g, ca, cb;  // A = g*ca, B = g*cb (up to the stated normalizations)
};

MPoly mpoly_gcd(const MPoly& A, const MPoly& B);
MPoly mpoly_div_exact(const MPoly& a, const MPoly& b);

/// Product with a dense Kronecker fast path for rational bivariate input.
inline MPoly mpoly_mul(const MPoly& A, const MPoly& B) {
    if (A.is_zero() || B.is_zero()) return MPoly::zero(A.vars());
    if (A.is_constant() || B.is_constant() || A.term_count() * B.term_count() < 256)
        return A * B;
    if (!detail::mpoly_all_rational(A) || !detail::mpoly_all_rational(B)) return A * B;
    const VarSetRef& vars = A.vars();
    std::vector<size_t> dep;
    for (size_t v = 0; v < vars->size(); ++v)
        if (A.depends_on(v) || B.depends_on(v)) dep.push_back(v);
    if (dep.size() != 2) return A * B;
    Rational sa, sb;
    detail::IPoly2 a = detail::mpoly_to_ip2_scaled(A, dep[0], dep[1], sa);
    detail::IPoly2 b = detail::mpoly_to_ip2_scaled(B, dep[0], dep[1], sb);
    detail::IPoly2 r = detail::ip2_kron_mul(a, b);
    MPoly out = detail::ip2_to_mpoly(r, vars, dep[0], dep[1]);
    Rational s = sa * sb;
    if (!s.is_one()) out = out.scaled(TElem(s));
    return out;
}

/// gcd together with both cofactors; the fast path shares the modular work.
inline GcdCofactors mpoly_gcd_cofactors(const MPoly& A, const MPoly& B) {
    if (!A.is_zero() && !B.is_zero() && !A.is_constant() && !B.is_constant() &&
        detail::mpoly_all_rational(A) && detail::mpoly_all_rational(B)) {
        const VarSetRef& vars = A.vars();
        std::vector<size_t> dep;
        for (size_t v = 0; v < vars->size(); ++v)
            if (A.depends_on(v) || B.depends_on(v)) dep.push_back(v);
        if (dep.size() == 2) {
            size_t vx = dep[0], vy = dep[1];
            Rational sa, sb;
            detail::IPoly2 a = detail::mpoly_to_ip2_scaled(A, vx, vy, sa);
            detail::IPoly2 b = detail::mpoly_to_ip2_scaled(B, vx, vy, sb);
            // cheap coprimality certificate first
            {
                ZpCtx F{detail::kBigPrimes[0]};
                if (detail::zp2_coprime_certificate(F, detail::ip2_to_zp2(F, a),
                                                    detail::ip2_to_zp2(F, b)))
                    return {MPoly::constant(vars, TElem::one()), A, B};
            }
            if (auto g = detail::mpoly_gcd_modular_bivar(A, B, vx, vy)) {
                Rational sg;
                detail::IPoly2 gi = detail::mpoly_to_ip2_scaled(*g, vx, vy, sg);
                auto ca = detail::ip2_divide_exact(a, gi);
                auto cb = detail::ip2_divide_exact(b, gi);
                if (ca && cb) {
                    MPoly mca = detail::ip2_to_mpoly(*ca, vars, vx, vy).scaled(TElem(sa / sg));
                    MPoly mcb = detail::ip2_to_mpoly(*cb, vars, vx, vy).scaled(TElem(sb / sg));
                    return {*g, std::move(mca), std::move(mcb)};
                }
            }
        }
    }
    MPoly g = mpoly_gcd(A, B);
    if (g.is_constant()) return {MPoly::constant(A.vars(), TElem::one()), A, B};
    return {g, mpoly_div_exact(A, g), mpoly_div_exact(B, g)};
}

/// gcd of multivariate polynomials over the constant tower, normalized so the
/// grlex-leading coefficient is 1. Univariate inputs take the fast modular
/// path, rational bivariate inputs Brown's modular algorithm; the general
/// case runs a primitive PRS.
inline MPoly mpoly_gcd(const MPoly& A, const MPoly& B) {
    if (A.is_zero()) return B.is_zero() ? B : B.scaled(B.lead_coeff().inv());
    if (B.is_zero()) return A.scaled(A.lead_coeff().inv());
    const VarSetRef& vars = A.vars();
    if (A.is_constant() || B.is_constant())
        return MPoly::constant(vars, TElem::one());

    // main variable: highest-priority variable occurring in either
    size_t var = 0;
    while (var < vars->size() && !A.depends_on(var) && !B.depends_on(var)) ++var;

    if (A.is_univariate_in(var) && B.is_univariate_in(var)) {
        if (detail::mpoly_all_rational(A) && detail::mpoly_all_rational(B)) {
            auto g = qpoly_gcd(detail::mpoly_to_uq(A, var), detail::mpoly_to_uq(B, var));
            return detail::uq_to_mpoly(g, vars, var);
        }
        auto g = upoly_gcd_euclid(detail::mpoly_to_ut(A, var), detail::mpoly_to_ut(B, var));
        return detail::ut_to_mpoly(g, vars, var);
    }

    if (detail::mpoly_all_rational(A) && detail::mpoly_all_rational(B)) {
        // dependent-variable set; two variables take the modular route
        std::vector<size_t> dep;
        for (size_t v = 0; v < vars->size(); ++v)
            if (A.depends_on(v) || B.depends_on(v)) dep.push_back(v);
        if (dep.size() == 2) {
            if (auto g = detail::mpoly_gcd_modular_bivar(A, B, dep[0], dep[1])) return *g;
        }
    }

    auto da = detail::mpoly_dense_in(A, var);
    auto db = detail::mpoly_dense_in(B, var);
    MPoly ca = detail::mpoly_content(da);
    MPoly cb = detail::mpoly_content(db);
    for (auto& x : da) x = *x.divided_exact(ca);
    for (auto& x : db) x = *x.divided_exact(cb);
    MPoly cg = mpoly_gcd(ca, cb);

    // primitive PRS on the primitive parts
    std::vector<MPoly> u = std::move(da), v = std::move(db);
    if (u.size() < v.size()) std::swap(u, v);
    while (true) {
        if (v.empty()) break;
        if (v.size() == 1) {  // nonzero constant in main var
            v.clear();
            u.assign(1, MPoly::constant(vars, TElem::one()));
            break;
        }
        auto r = detail::mpoly_prem(u, v);
        u = std::move(v);
        v = std::move(r);
        if (!v.empty()) {
            MPoly c = detail::mpoly_content(v);
            for (auto& x : v) x = *x.divided_exact(c);
        }
    }
    MPoly pp = detail::mpoly_from_dense(u, vars, var);
    MPoly g = pp * cg;
    return g.scaled(g.lead_coeff().inv());
}

/// Exact quotient helper for reduced fractions.
inline MPoly mpoly_div_exact(const MPoly& a, const MPoly& b) {
    auto q = a.divided_exact(b);
    if (!q) throw std::domain_error("mpoly_div_exact: not divisible");
    return *q;
}

}  // namespace h10
