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

#include <h10/tower.hpp>

#include <functional>
#include <tuple>
#include <vector>

namespace h10 {

/// Dense univariate polynomial over a field-like coefficient type.
/// c[i] is the coefficient of x^i; the vector never ends in a zero.
template <class C>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<C> c) : c_(std::move(c)) { trim(); }
    UPoly(std::initializer_list<C> c) : c_(c) { trim(); }

    static UPoly zero() { return UPoly(); }
    static UPoly constant(const C& c) { return UPoly(std::vector<C>{c}); }
    static UPoly x(int deg = 1, const C& lead = C(1)) {
        std::vector<C> c(size_t(deg) + 1, C(0));
        c.back() = lead;
        return UPoly(std::move(c));
    }

    const std::vector<C>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    const C& operator[](size_t i) const {
        static const C z = C(0);
        return i < c_.size() ? c_[i] : z;
    }
    const C& lc() const {
        if (c_.empty()) throw std::domain_error("UPoly: lc of zero");
        return c_.back();
    }
    C constant_term() const { return c_.empty() ? C(0) : c_[0]; }

    void set_coeff(size_t i, const C& v) {
        if (i >= c_.size()) {
            if (is_zero_c(v)) return;
            c_.resize(i + 1, C(0));
        }
        c_[i] = v;
        trim();
    }

    UPoly operator-() const {
        std::vector<C> r(c_);
        for (auto& x : r) x = -x;
        return UPoly(std::move(r));
    }
    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_c(a.c_[i])) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    UPoly& operator+=(const UPoly& o) { *this = *this + o; return *this; }
    UPoly& operator-=(const UPoly& o) { *this = *this - o; return *this; }
    UPoly& operator*=(const UPoly& o) { *this = *this * o; return *this; }

    UPoly scaled(const C& k) const {
        if (is_zero_c(k)) return UPoly();
        std::vector<C> r(c_);
        for (auto& x : r) x = x * k;
        return UPoly(std::move(r));
    }

    bool operator==(const UPoly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!is_zero_c(c_[i] - o.c_[i])) return false;
        return true;
    }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    UPoly monic() const {
        if (is_zero()) return *this;
        return scaled(C(1) / lc());
    }

    // division with remainder over a field
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
        UPoly r = a;
        std::vector<C> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1, C(0));
        C linv = C(1) / b.lc();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            size_t shift = size_t(r.degree() - b.degree());
            C f = r.lc() * linv;
            q[shift] = q[shift] + f;
            // r -= f * x^shift * b
            for (size_t i = 0; i < b.c_.size(); ++i)
                r.c_[shift + i] = r.c_[shift + i] - f * b.c_[i];
            r.trim();
        }
        return {UPoly(std::move(q)), r};
    }

    UPoly operator%(const UPoly& o) const { return divmod(*this, o).second; }
    UPoly operator/(const UPoly& o) const { return divmod(*this, o).first; }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<C> r(c_.size() - 1, C(0));
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * C(long(i));
        return UPoly(std::move(r));
    }

    template <class V>
    V eval(const V& x, const V& zero, const std::function<V(const C&)>& lift) const {
        V acc = zero;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + lift(c_[i]);
        return acc;
    }
    C eval(const C& x) const {
        C acc = C(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    UPoly compose(const UPoly& g) const {
        UPoly acc;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(c_[i]);
        return acc;
    }

    // a(x) -> a(x^2)
    UPoly inflate2() const {
        if (is_zero()) return UPoly();
        std::vector<C> r(2 * c_.size() - 1, C(0));
        for (size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
        return UPoly(std::move(r));
    }
    // a(x) -> a(-x)
    UPoly flip_sign() const {
        std::vector<C> r(c_);
        for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return UPoly(std::move(r));
    }
    UPoly shifted_up(size_t k) const {  // multiply by x^k
        if (is_zero()) return UPoly();
        std::vector<C> r(c_.size() + k, C(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
        return UPoly(std::move(r));
    }

    size_t trailing_zero_count() const {
        size_t k = 0;
        while (k < c_.size() && is_zero_c(c_[k])) ++k;
        return k;
    }

  private:
    static bool is_zero_c(const C& c) { return c == C(0); }
    void trim() {
        while (!c_.empty() && is_zero_c(c_.back())) c_.pop_back();
    }
    std::vector<C> c_;
};

// monic Euclidean gcd over a field; gcd(0,0) = 0
template <class C>
UPoly<C> upoly_gcd_euclid(UPoly<C> a, UPoly<C> b) {
    while (!b.is_zero()) {
        UPoly<C> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// extended gcd: returns (g, s, t) with g = s*a + t*b, g monic
template <class C>
std::tuple<UPoly<C>, UPoly<C>, UPoly<C>> upoly_ext_gcd(const UPoly<C>& a, const UPoly<C>& b) {
    UPoly<C> r0 = a, r1 = b;
    UPoly<C> s0 = UPoly<C>::constant(C(1)), s1;
    UPoly<C> t0, t1 = UPoly<C>::constant(C(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UPoly<C> s = s0 - q * s1, t = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s);
        t0 = std::move(t1); t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    C k = C(1) / r0.lc();
    return {r0.scaled(k), s0.scaled(k), t0.scaled(k)};
}

// resultant over a field, by the Euclidean remainder sequence
template <class C>
C upoly_resultant(UPoly<C> a, UPoly<C> b) {
    if (a.is_zero() || b.is_zero()) return C(0);
    C acc = C(1);
    bool neg = false;
    while (true) {
        if (b.degree() == 0) {
            acc = acc * pow_c(b.lc(), a.degree());
            break;
        }
        UPoly<C> r = a % b;
        if (r.is_zero()) return C(0);
        // res(a,b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        acc = acc * pow_c(b.lc(), a.degree() - r.degree());
        a = std::move(b);
        b = std::move(r);
    }
    return neg ? -acc : acc;
}

template <class C>
C pow_c(C base, long e) {
    C acc = C(1);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

/// Yun squarefree decomposition over characteristic zero:
/// returns list of (factor, multiplicity) with factors pairwise coprime,
/// squarefree, and product of factor^mult = input up to a constant.
template <class C>
std::vector<std::pair<UPoly<C>, int>> upoly_squarefree_decomp(const UPoly<C>& f) {
    std::vector<std::pair<UPoly<C>, int>> out;
    if (f.degree() <= 0) return out;
    UPoly<C> a = f.monic();
    UPoly<C> g = upoly_gcd_euclid(a, a.derivative());
    UPoly<C> w = a / g;
    int m = 1;
    while (w.degree() > 0) {
        UPoly<C> y = upoly_gcd_euclid(w, g);
        UPoly<C> z = w / y;
        if (z.degree() > 0) out.emplace_back(z, m);
        g = g / y;
        w = std::move(y);
        ++m;
    }
    return out;
}

// product of distinct irreducible factors
template <class C>
UPoly<C> upoly_squarefree_part(const UPoly<C>& f) {
    if (f.degree() <= 0) return f.monic();
    UPoly<C> g = upoly_gcd_euclid(f, f.derivative());
    return (f / g).monic();
}

}  // namespace h10
