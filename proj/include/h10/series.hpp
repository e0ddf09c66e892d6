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

#include <h10/quadext.hpp>

namespace h10 {

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& m) : std::runtime_error(m) {}
};

/// Truncated Laurent series sum_{k} c[k] t^(off+k) + O(t^(off+size)).
/// Leading coefficients that are known to vanish are stripped so `off` is
/// the true order whenever any stored coefficient is nonzero.
template <class C>
struct LSeries {
    long off = 0;
    std::vector<C> c;

    LSeries() = default;
    LSeries(long o, std::vector<C> cs) : off(o), c(std::move(cs)) { normalize(); }

    static LSeries constant(const C& v, int prec) {
        std::vector<C> cs(size_t(prec), v - v);
        cs[0] = v;
        return LSeries(0, std::move(cs));
    }
    static LSeries uniformizer(const C& one, int prec) {  // the series t
        std::vector<C> cs(size_t(prec), one - one);
        cs[0] = one;
        return LSeries(1, std::move(cs));
    }

    int prec() const { return int(c.size()); }
    bool exhausted() const { return c.empty(); }
    bool is_zero() const {  // known zero within precision
        for (auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    long order() const {
        if (c.empty() || c[0].is_zero())
            throw PrecisionExhausted("LSeries: order not visible at this precision");
        return off;
    }
    const C& lead() const {
        if (c.empty() || c[0].is_zero())
            throw PrecisionExhausted("LSeries: leading coefficient not visible");
        return c[0];
    }

    void normalize() {
        size_t k = 0;
        while (k < c.size() && c[k].is_zero()) ++k;
        if (k > 0) {
            c.erase(c.begin(), c.begin() + long(k));
            off += long(k);
        }
    }

    C zero_c() const {
        if (c.empty()) throw PrecisionExhausted("LSeries: no coefficient context");
        return c[0] - c[0];
    }
    LSeries fld_one() const { return constant(c.at(0).fld_one(), std::max(prec(), 1)); }

    LSeries operator-() const {
        LSeries r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend LSeries operator+(const LSeries& a, const LSeries& b) {
        if (a.c.empty() || b.c.empty()) throw PrecisionExhausted("LSeries: add on exhausted");
        long lo = std::min(a.off, b.off);
        long end = std::min(a.off + a.prec(), b.off + b.prec());
        if (end <= lo) throw PrecisionExhausted("LSeries: no overlap");
        C z = a.zero_c();
        std::vector<C> cs(size_t(end - lo), z);
        for (long k = lo; k < end; ++k) {
            C v = z;
            if (k >= a.off && k < a.off + a.prec()) v = v + a.c[size_t(k - a.off)];
            if (k >= b.off && k < b.off + b.prec()) v = v + b.c[size_t(k - b.off)];
            cs[size_t(k - lo)] = v;
        }
        return LSeries(lo, std::move(cs));
    }
    friend LSeries operator-(const LSeries& a, const LSeries& b) { return a + (-b); }
    friend LSeries operator*(const LSeries& a, const LSeries& b) {
        if (a.c.empty() || b.c.empty()) throw PrecisionExhausted("LSeries: mul on exhausted");
        int n = std::min(a.prec(), b.prec());
        C z = a.zero_c();
        std::vector<C> cs(size_t(n), z);
        for (int i = 0; i < a.prec(); ++i) {
            if (a.c[size_t(i)].is_zero()) continue;
            for (int j = 0; j < b.prec() && i + j < n; ++j)
                cs[size_t(i + j)] = cs[size_t(i + j)] + a.c[size_t(i)] * b.c[size_t(j)];
        }
        return LSeries(a.off + b.off, std::move(cs));
    }
    LSeries inv() const {
        LSeries s = *this;
        s.normalize();
        if (s.c.empty() || s.c[0].is_zero())
            throw PrecisionExhausted("LSeries: inverse needs a visible leading term");
        C l = s.c[0].fld_one() / s.c[0];
        C z = s.zero_c();
        int n = s.prec();
        std::vector<C> b(size_t(n), z);
        b[0] = l;
        for (int k = 1; k < n; ++k) {
            C acc = z;
            for (int i = 1; i <= k; ++i) acc = acc + s.c[size_t(i)] * b[size_t(k - i)];
            b[size_t(k)] = -(l * acc);
        }
        return LSeries(-s.off, std::move(b));
    }
    friend LSeries operator/(const LSeries& a, const LSeries& b) { return a * b.inv(); }

    bool operator==(const LSeries& o) const { return (*this - o).is_zero(); }
    bool operator!=(const LSeries& o) const { return !(*this == o); }

    /// Square root of a series with even order and leading coefficient
    /// square root supplied by the caller.
    static LSeries sqrt_with(const LSeries& a, const C& sqrt_lead) {
        LSeries s = a;
        s.normalize();
        if (s.c.empty()) throw PrecisionExhausted("LSeries: sqrt on exhausted");
        if (s.off % 2 != 0) throw std::domain_error("LSeries: sqrt of odd order");
        int n = s.prec();
        C z = s.zero_c();
        C two = sqrt_lead.fld_one() + sqrt_lead.fld_one();
        std::vector<C> r(size_t(n), z);
        r[0] = sqrt_lead;
        for (int k = 1; k < n; ++k) {
            C acc = z;
            for (int i = 1; i < k; ++i) acc = acc + r[size_t(i)] * r[size_t(k - i)];
            r[size_t(k)] = (s.c[size_t(k)] - acc) / (two * sqrt_lead);
        }
        return LSeries(s.off / 2, std::move(r));
    }
};

}  // namespace h10
