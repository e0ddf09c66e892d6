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

#include <h10/rational.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace h10 {

// Word-size prime field arithmetic; p must stay below 2^62.
struct ZpCtx {
    uint64_t p;
    uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t mul(uint64_t a, uint64_t b) const {
        return uint64_t((unsigned __int128)a * b % p);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a % p, p - 2); }
    uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
};

using ZpPoly = std::vector<uint64_t>;  // c[i] coeff of x^i, no trailing zeros

inline void zp_trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int zp_deg(const ZpPoly& a) { return int(a.size()) - 1; }

inline ZpPoly zp_add(const ZpCtx& F, const ZpPoly& a, const ZpPoly& b) {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    zp_trim(r);
    return r;
}
inline ZpPoly zp_sub(const ZpCtx& F, const ZpPoly& a, const ZpPoly& b) {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    zp_trim(r);
    return r;
}
inline ZpPoly zp_mul(const ZpCtx& F, const ZpPoly& a, const ZpPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    zp_trim(r);
    return r;
}
inline ZpPoly zp_scale(const ZpCtx& F, const ZpPoly& a, uint64_t k) {
    ZpPoly r(a);
    for (auto& x : r) x = F.mul(x, k);
    zp_trim(r);
    return r;
}
inline std::pair<ZpPoly, ZpPoly> zp_divmod(const ZpCtx& F, ZpPoly a, const ZpPoly& b) {
    if (b.empty()) throw std::domain_error("zp_divmod: division by zero");
    ZpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    uint64_t linv = F.inv(b.back());
    while (zp_deg(a) >= zp_deg(b)) {
        size_t shift = a.size() - b.size();
        uint64_t f = F.mul(a.back(), linv);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = F.sub(a[shift + i], F.mul(f, b[i]));
        zp_trim(a);
        if (a.empty()) break;
    }
    zp_trim(q);
    return {q, a};
}
inline ZpPoly zp_mod(const ZpCtx& F, const ZpPoly& a, const ZpPoly& b) {
    return zp_divmod(F, a, b).second;
}
inline ZpPoly zp_monic(const ZpCtx& F, const ZpPoly& a) {
    if (a.empty()) return a;
    return zp_scale(F, a, F.inv(a.back()));
}
inline ZpPoly zp_gcd(const ZpCtx& F, ZpPoly a, ZpPoly b) {
    while (!b.empty()) {
        ZpPoly r = zp_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_monic(F, a);
}
inline ZpPoly zp_deriv(const ZpCtx& F, const ZpPoly& a) {
    if (a.size() <= 1) return {};
    ZpPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    zp_trim(r);
    return r;
}
inline ZpPoly zp_powmod(const ZpCtx& F, ZpPoly base, BigInt e, const ZpPoly& mod) {
    ZpPoly r{1};
    base = zp_mod(F, base, mod);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = zp_mod(F, zp_mul(F, r, base), mod);
        base = zp_mod(F, zp_mul(F, base, base), mod);
        e >>= 1;
    }
    return r;
}

/// Cantor-Zassenhaus factorization of a squarefree monic polynomial over F_p
/// (p odd). Returns monic irreducible factors.
inline std::vector<ZpPoly> zp_factor_squarefree(const ZpCtx& F, const ZpPoly& f_in,
                                                std::mt19937_64& rng) {
    std::vector<ZpPoly> out;
    ZpPoly f = zp_monic(F, f_in);
    if (zp_deg(f) <= 0) return out;

    // distinct-degree splitting
    std::vector<std::pair<ZpPoly, int>> stages;  // (product of irreducibles of degree d, d)
    {
        ZpPoly h{0, 1};  // x
        ZpPoly rest = f;
        int d = 0;
        while (zp_deg(rest) > 0) {
            ++d;
            if (2 * d > zp_deg(rest)) {
                stages.emplace_back(rest, zp_deg(rest));
                break;
            }
            h = zp_powmod(F, h, BigInt(F.p), rest);  // h = x^(p^d) mod rest
            ZpPoly hx = zp_sub(F, h, ZpPoly{0, 1});
            ZpPoly g = zp_gcd(F, hx, rest);
            if (zp_deg(g) > 0) {
                stages.emplace_back(g, d);
                rest = zp_divmod(F, rest, g).first;
                h = zp_mod(F, h, rest);
            }
        }
    }

    // equal-degree splitting
    BigInt pe_half;
    for (auto& [prod, d] : stages) {
        std::vector<ZpPoly> work{prod};
        pe_half = (big_pow(BigInt((unsigned long)F.p), (unsigned long)d) - 1) / 2;
        while (!work.empty()) {
            ZpPoly g = work.back();
            work.pop_back();
            if (zp_deg(g) == d) {
                out.push_back(zp_monic(F, g));
                continue;
            }
            // random split
            while (true) {
                ZpPoly r(size_t(zp_deg(g)), 0);
                for (auto& c : r) c = rng() % F.p;
                zp_trim(r);
                if (r.empty()) continue;
                ZpPoly t = zp_powmod(F, r, pe_half, g);
                t = zp_sub(F, t, ZpPoly{1});
                ZpPoly h = zp_gcd(F, t, g);
                if (zp_deg(h) > 0 && zp_deg(h) < zp_deg(g)) {
                    work.push_back(h);
                    work.push_back(zp_divmod(F, g, h).first);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace h10
