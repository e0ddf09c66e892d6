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

#include <h10/zp.hpp>

namespace h10 {

// Bivariate polynomials over F_p, x-major: b[i] is the F_p[y] coefficient
// of x^i. Used only inside the modular gcd; no trailing zero rows.
using Zp2Poly = std::vector<ZpPoly>;

inline void zp2_trim(Zp2Poly& a) {
    while (!a.empty() && a.back().empty()) a.pop_back();
}
inline int zp2_deg_x(const Zp2Poly& a) { return int(a.size()) - 1; }
inline int zp2_deg_y(const Zp2Poly& a) {
    int d = -1;
    for (auto& c : a) d = std::max(d, zp_deg(c));
    return d;
}

inline ZpPoly zp2_eval_y(const ZpCtx& F, const Zp2Poly& a, uint64_t t) {
    ZpPoly r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t acc = 0;
        for (size_t j = a[i].size(); j-- > 0;) acc = F.add(F.mul(acc, t), a[i][j]);
        r[i] = acc;
    }
    zp_trim(r);
    return r;
}

inline Zp2Poly zp2_mul(const ZpCtx& F, const Zp2Poly& a, const Zp2Poly& b) {
    if (a.empty() || b.empty()) return {};
    Zp2Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = zp_add(F, r[i + j], zp_mul(F, a[i], b[j]));
    zp2_trim(r);
    return r;
}

// exact division in F_p[y][x]; nullopt if not exactly divisible
inline std::optional<Zp2Poly> zp2_divide_exact(const ZpCtx& F, Zp2Poly a, const Zp2Poly& b) {
    if (b.empty()) throw std::domain_error("zp2_divide_exact: zero divisor");
    zp2_trim(a);
    if (a.empty()) return Zp2Poly{};
    if (zp2_deg_x(a) < zp2_deg_x(b)) return std::nullopt;
    Zp2Poly q(a.size() - b.size() + 1);
    const ZpPoly& lb = b.back();
    for (int i = zp2_deg_x(a) - zp2_deg_x(b); i >= 0; --i) {
        size_t top = size_t(i) + b.size() - 1;
        ZpPoly num = top < a.size() ? a[top] : ZpPoly{};
        if (num.empty()) { q[size_t(i)] = {}; continue; }
        auto [c, rem] = zp_divmod(F, num, lb);
        if (!rem.empty()) return std::nullopt;
        q[size_t(i)] = c;
        for (size_t j = 0; j < b.size(); ++j)
            a[size_t(i) + j] = zp_sub(F, a[size_t(i) + j], zp_mul(F, c, b[j]));
    }
    zp2_trim(a);
    if (!a.empty()) return std::nullopt;
    zp2_trim(q);
    return q;
}

/// Brown's evaluation/interpolation gcd in F_p[x,y]. Returns the gcd
/// normalized with monic grlex-leading coefficient... here: primitive wrt y
/// and monic in its leading x-coefficient's leading y-coefficient.
inline std::optional<Zp2Poly> zp2_gcd(const ZpCtx& F, Zp2Poly A, Zp2Poly B) {
    zp2_trim(A);
    zp2_trim(B);
    if (A.empty()) return B;
    if (B.empty()) return A;

    // y-contents
    ZpPoly contA{}, contB{};
    for (auto& c : A) contA = zp_gcd(F, contA, c);
    for (auto& c : B) contB = zp_gcd(F, contB, c);
    for (auto& c : A) c = zp_divmod(F, c, contA).first;
    for (auto& c : B) c = zp_divmod(F, c, contB).first;
    ZpPoly contG = zp_gcd(F, contA, contB);

    ZpPoly gamma = zp_gcd(F, A.back(), B.back());
    int bound = zp_deg(gamma) + std::min(zp2_deg_y(A), zp2_deg_y(B)) + 1;

    int dmin = INT32_MAX;
    // Newton interpolation state per x-degree
    std::vector<uint64_t> points;
    std::vector<ZpPoly> newton;   // newton[k] = y-poly coefficient column for x^k
    ZpPoly prod{1};               // prod (y - t_i)
    int stable = 0;

    for (uint64_t t = 0; t < (uint64_t)bound + 64; ++t) {
        if (t >= F.p) break;
        uint64_t gv = 0;
        for (size_t j = gamma.size(); j-- > 0;) gv = F.add(F.mul(gv, t), gamma[j]);
        if (gv == 0) continue;
        ZpPoly a = zp2_eval_y(F, A, t), b = zp2_eval_y(F, B, t);
        if (zp_deg(a) != zp2_deg_x(A) || zp_deg(b) != zp2_deg_x(B)) continue;  // lc vanished
        ZpPoly g = zp_gcd(F, a, b);
        if (zp_deg(g) == 0) {
            // gcd has no x-part
            return Zp2Poly{contG};
        }
        if (zp_deg(g) > dmin) continue;  // unlucky point
        if (zp_deg(g) < dmin) {          // previous points unlucky: reset
            dmin = zp_deg(g);
            points.clear();
            newton.assign(size_t(dmin) + 1, ZpPoly{});
            prod = ZpPoly{1};
            stable = 0;
        }
        g = zp_scale(F, g, F.mul(gv, F.inv(g.back())));
        // Newton update: value minus current interpolant at t, divided by prod(t)
        uint64_t pv = 0;
        for (size_t j = prod.size(); j-- > 0;) pv = F.add(F.mul(pv, t), prod[j]);
        uint64_t pinv = F.inv(pv);
        bool changed = false;
        for (size_t k = 0; k < newton.size(); ++k) {
            uint64_t cur = 0;
            for (size_t j = newton[k].size(); j-- > 0;) cur = F.add(F.mul(cur, t), newton[k][j]);
            uint64_t val = k < g.size() ? g[k] : 0;
            uint64_t diff = F.sub(val, cur);
            if (diff != 0) {
                changed = true;
                newton[k] = zp_add(F, newton[k], zp_scale(F, prod, F.mul(diff, pinv)));
            }
        }
        prod = zp_mul(F, prod, ZpPoly{F.neg(t), 1});
        points.push_back(t);
        stable = changed ? 0 : stable + 1;

        if (stable >= 1 && int(points.size()) >= 2) {
            // candidate: strip y-content, restore contG, verify by division
            Zp2Poly H(newton.size());
            ZpPoly ch{};
            for (size_t k = 0; k < newton.size(); ++k) {
                H[k] = newton[k];
                ch = zp_gcd(F, ch, H[k]);
            }
            if (!ch.empty())
                for (auto& c : H) c = zp_divmod(F, c, ch).first;
            for (auto& c : H) c = zp_mul(F, c, contG);
            zp2_trim(H);
            if (H.empty()) continue;
            Zp2Poly Afull = A, Bfull = B;
            for (auto& c : Afull) c = zp_mul(F, c, contA);
            for (auto& c : Bfull) c = zp_mul(F, c, contB);
            if (zp2_divide_exact(F, Afull, H) && zp2_divide_exact(F, Bfull, H)) return H;
        }
        if (int(points.size()) > bound + 2) break;
    }
    return std::nullopt;  // give up at this prime
}

}  // namespace h10
