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

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

namespace h10 {

class Tower;
using TowerRef = std::shared_ptr<const Tower>;  // nullptr means plain Q

class TElem;

/// One quadratic step of the constant field: the tower below plus a square
/// root of `radicand`, an element of the tower below that is certified
/// non-square there. The chain of steps realizes the constant field as a
/// finitely generated subfield of a fixed algebraic closure, grown on demand.
class Tower : public std::enable_shared_from_this<Tower> {
  public:
    static TowerRef rationals() { return nullptr; }

    // defined after TElem
    static TowerRef extend(const TowerRef& below, const TElem& radicand,
                           const std::string& name, std::string certificate);

    const TowerRef& below() const { return below_; }
    int level() const { return level_; }                 // number of generators
    size_t dim() const { return size_t(1) << level_; }   // degree over Q
    const std::string& gen_name() const { return name_; }
    const std::string& certificate() const { return cert_; }
    const std::vector<Rational>& radicand_coords() const { return rad_coords_; }

    std::string describe() const;  // "r1^2 = -1; r2^2 = 2" style legend

  private:
    Tower(TowerRef below, std::vector<Rational> rad, std::string name, std::string cert, int lvl)
        : below_(std::move(below)), rad_coords_(std::move(rad)),
          name_(std::move(name)), cert_(std::move(cert)), level_(lvl) {}

    TowerRef below_;
    std::vector<Rational> rad_coords_;  // radicand as element of `below_`
    std::string name_;
    std::string cert_;
    int level_;

    friend class TElem;
};

inline int tower_level(const TowerRef& t) { return t ? t->level() : 0; }

inline bool tower_is_ancestor(const TowerRef& anc, const TowerRef& t) {
    TowerRef cur = t;
    while (true) {
        if (anc.get() == cur.get()) return true;
        if (!cur) return false;
        cur = cur->below();
    }
}

// The finer of two towers when one contains the other.
inline TowerRef tower_join(const TowerRef& a, const TowerRef& b) {
    if (tower_is_ancestor(a, b)) return b;
    if (tower_is_ancestor(b, a)) return a;
    throw std::domain_error("tower_join: incompatible towers");
}

/// Element of a quadratic tower, stored as coordinates over the power basis
/// of the generators (bit i of the index = generator i present).
class TElem {
  public:
    TElem() : tw_(nullptr), c_(1, Rational(0)) {}
    TElem(const Rational& r) : tw_(nullptr), c_(1, r) {}
    TElem(long n) : tw_(nullptr), c_(1, Rational(n)) {}
    TElem(TowerRef tw, std::vector<Rational> coords) : tw_(std::move(tw)), c_(std::move(coords)) {
        if (c_.size() != (tw_ ? tw_->dim() : 1))
            throw std::invalid_argument("TElem: coordinate count mismatch");
    }

    static TElem zero() { return TElem(Rational(0)); }
    static TElem one() { return TElem(Rational(1)); }

    // the i-th generator of `tw` as an element of `tw`
    static TElem generator(const TowerRef& tw, int i) {
        std::vector<Rational> c(tw->dim(), Rational(0));
        c[size_t(1) << i] = Rational(1);
        return TElem(tw, c);
    }
    // the newest generator
    static TElem top_generator(const TowerRef& tw) { return generator(tw, tw->level() - 1); }

    TElem fld_one() const { return one().lift_to(tw_); }

    const TowerRef& tower() const { return tw_; }
    const std::vector<Rational>& coords() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_one() const {
        if (!c_[0].is_one()) return false;
        for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
        return true;
    }
    Rational rational_part() const { return c_[0]; }
    Rational as_rational() const {
        if (!is_rational()) throw std::domain_error("TElem: not a rational");
        return c_[0];
    }

    TElem lift_to(const TowerRef& target) const {
        if (target.get() == tw_.get()) return *this;
        if (!tower_is_ancestor(tw_, target))
            throw std::domain_error("TElem::lift_to: not an ancestor tower");
        std::vector<Rational> c(target ? target->dim() : 1, Rational(0));
        for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        return TElem(target, c);
    }

    TElem operator-() const {
        std::vector<Rational> c(c_);
        for (auto& x : c) x = -x;
        return TElem(tw_, std::move(c));
    }

    friend TElem operator+(const TElem& a, const TElem& b) {
        auto [x, y, tw] = aligned(a, b);
        for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        return TElem(tw, std::move(x));
    }
    friend TElem operator-(const TElem& a, const TElem& b) {
        auto [x, y, tw] = aligned(a, b);
        for (size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
        return TElem(tw, std::move(x));
    }
    friend TElem operator*(const TElem& a, const TElem& b) {
        auto [x, y, tw] = aligned(a, b);
        std::vector<Rational> r = mul_rec(x, y, tw);
        return TElem(tw, std::move(r));
    }
    friend TElem operator/(const TElem& a, const TElem& b) { return a * b.inv(); }

    TElem& operator+=(const TElem& o) { *this = *this + o; return *this; }
    TElem& operator-=(const TElem& o) { *this = *this - o; return *this; }
    TElem& operator*=(const TElem& o) { *this = *this * o; return *this; }

    bool operator==(const TElem& o) const { return (*this - o).is_zero(); }
    bool operator!=(const TElem& o) const { return !(*this == o); }

    TElem inv() const {
        if (is_zero()) throw std::domain_error("TElem: inverse of zero");
        std::vector<Rational> r = inv_rec(c_, tw_);
        return TElem(tw_, std::move(r));
    }

    TElem pow(long e) const {
        if (e < 0) return inv().pow(-e);
        TElem acc = one().lift_to(tw_), base = *this;
        long k = e;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    /// Exact square root inside the tower, if one exists there.
    std::optional<TElem> sqrt_in_tower() const {
        auto r = sqrt_rec(c_, tw_);
        if (!r) return std::nullopt;
        return TElem(tw_, std::move(*r));
    }
    bool is_square() const { return sqrt_in_tower().has_value(); }

    /// Human-readable reason why this element is not a square in its tower
    /// (empty when it is one); stored as the certificate on tower extension.
    std::string nonsquare_reason() const {
        std::string why;
        if (nonsquare_rec(c_, tw_, why)) return "";  // is a square
        return why;
    }

    std::string str() const;

  private:
    TowerRef tw_;
    std::vector<Rational> c_;

    static std::tuple<std::vector<Rational>, std::vector<Rational>, TowerRef>
    aligned(const TElem& a, const TElem& b) {
        TowerRef tw = tower_join(a.tw_, b.tw_);
        TElem x = a.lift_to(tw), y = b.lift_to(tw);
        return {std::move(x.c_), std::move(y.c_), tw};
    }

    static std::vector<Rational> radicand_of(const TowerRef& tw) {
        return tw->radicand_coords();
    }

    // recursive Karatsuba-style multiplication over the binary basis:
    // (a0 + a1 g)(b0 + b1 g) = (a0 b0 + a1 b1 d) + (a0 b1 + a1 b0) g
    static std::vector<Rational> mul_rec(const std::vector<Rational>& a,
                                         const std::vector<Rational>& b,
                                         const TowerRef& tw) {
        if (!tw) return {a[0] * b[0]};
        size_t h = a.size() / 2;
        const TowerRef& below = tw->below();
        std::vector<Rational> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
        std::vector<Rational> b0(b.begin(), b.begin() + h), b1(b.begin() + h, b.end());
        auto d = radicand_of(tw);
        auto lo = mul_rec(a0, b0, below);
        auto t = mul_rec(mul_rec(a1, b1, below), d, below);
        for (size_t i = 0; i < h; ++i) lo[i] += t[i];
        auto hi = mul_rec(a0, b1, below);
        auto t2 = mul_rec(a1, b0, below);
        for (size_t i = 0; i < h; ++i) hi[i] += t2[i];
        std::vector<Rational> r(a.size());
        for (size_t i = 0; i < h; ++i) { r[i] = lo[i]; r[h + i] = hi[i]; }
        return r;
    }

    static bool all_zero(const std::vector<Rational>& v) {
        for (auto& x : v) if (!x.is_zero()) return false;
        return true;
    }

    // (a0 + a1 g)^(-1) = (a0 - a1 g) / (a0^2 - a1^2 d)
    static std::vector<Rational> inv_rec(const std::vector<Rational>& a, const TowerRef& tw) {
        if (!tw) return {a[0].inv()};
        size_t h = a.size() / 2;
        const TowerRef& below = tw->below();
        std::vector<Rational> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
        auto d = radicand_of(tw);
        auto n = mul_rec(a0, a0, below);
        auto t = mul_rec(mul_rec(a1, a1, below), d, below);
        for (size_t i = 0; i < h; ++i) n[i] -= t[i];
        auto ninv = inv_rec(n, below);
        auto r0 = mul_rec(a0, ninv, below);
        auto r1 = mul_rec(a1, ninv, below);
        std::vector<Rational> r(a.size());
        for (size_t i = 0; i < h; ++i) { r[i] = r0[i]; r[h + i] = -r1[i]; }
        return r;
    }

    // Square root by descent: x = a0 + a1 g over T(g), g^2 = d.
    // If a1 = 0: sqrt(a0) in T, or sqrt(a0/d)*g.
    // Else need s = sqrt(a0^2 - a1^2 d) in T, then u^2 = (a0 +- s)/2, v = a1/(2u).
    static std::optional<std::vector<Rational>> sqrt_rec(const std::vector<Rational>& a,
                                                         const TowerRef& tw) {
        if (!tw) {
            auto s = a[0].sqrt_exact();
            if (!s) return std::nullopt;
            return std::vector<Rational>{*s};
        }
        size_t h = a.size() / 2;
        const TowerRef& below = tw->below();
        std::vector<Rational> a0(a.begin(), a.begin() + h), a1(a.begin() + h, a.end());
        auto d = radicand_of(tw);
        auto pack = [&](std::vector<Rational> lo, std::vector<Rational> hi) {
            std::vector<Rational> r(a.size());
            for (size_t i = 0; i < h; ++i) { r[i] = lo[i]; r[h + i] = hi[i]; }
            return r;
        };
        if (all_zero(a1)) {
            if (auto s = sqrt_rec(a0, below)) return pack(*s, std::vector<Rational>(h, Rational(0)));
            auto q = mul_rec(a0, inv_rec(d, below), below);
            if (auto t = sqrt_rec(q, below)) return pack(std::vector<Rational>(h, Rational(0)), *t);
            return std::nullopt;
        }
        auto n = mul_rec(a0, a0, below);
        auto t = mul_rec(mul_rec(a1, a1, below), d, below);
        for (size_t i = 0; i < h; ++i) n[i] -= t[i];
        auto s = sqrt_rec(n, below);
        if (!s) return std::nullopt;
        for (int sign = 0; sign < 2; ++sign) {
            auto cand = a0;
            for (size_t i = 0; i < h; ++i) {
                cand[i] = sign == 0 ? (a0[i] + (*s)[i]) : (a0[i] - (*s)[i]);
                cand[i] = cand[i] / Rational(2);
            }
            if (all_zero(cand)) continue;
            if (auto u = sqrt_rec(cand, below)) {
                auto half = mul_rec(a1, inv_rec(*u, below), below);
                for (auto& x : half) x = x / Rational(2);
                return pack(*u, half);
            }
        }
        return std::nullopt;
    }

    static bool nonsquare_rec(const std::vector<Rational>& a, const TowerRef& tw,
                              std::string& why) {
        auto r = sqrt_rec(a, tw);
        if (r) return true;
        std::ostringstream os;
        os << "no square root at tower level " << tower_level(tw);
        if (!tw) {
            os << ": rational " << a[0].str() << " is not a perfect square";
        } else {
            os << " (norm/half-trace descent fails over the tower below)";
        }
        why = os.str();
        return false;
    }
};

inline TowerRef Tower::extend(const TowerRef& below, const TElem& radicand,
                              const std::string& name, std::string certificate) {
    if (radicand.is_zero()) throw std::domain_error("Tower::extend: zero radicand");
    TElem rad = radicand.lift_to(below);
    if (rad.is_square()) throw std::domain_error("Tower::extend: radicand is a square");
    if (certificate.empty()) certificate = rad.nonsquare_reason();
    return TowerRef(new Tower(below, rad.coords(), name,
                              std::move(certificate), tower_level(below) + 1));
}

inline std::string Tower::describe() const {
    std::string below = below_ ? below_->describe() + "; " : "";
    TElem rad(below_, rad_coords_);
    return below + name_ + "^2 = " + rad.str();
}

inline std::string TElem::str() const {
    if (!tw_) return c_[0].str();
    // collect generator names per basis index
    std::vector<std::string> names;
    TowerRef cur = tw_;
    while (cur) { names.push_back(cur->gen_name()); cur = cur->below(); }
    std::reverse(names.begin(), names.end());
    std::string out;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string mono;
        for (size_t b = 0; b < names.size(); ++b)
            if (i & (size_t(1) << b)) mono += (mono.empty() ? "" : "*") + names[b];
        std::string coeff = c_[i].str();
        std::string term;
        if (mono.empty()) term = coeff;
        else if (coeff == "1") term = mono;
        else if (coeff == "-1") term = "-" + mono;
        else term = coeff + "*" + mono;
        if (first) { out = term; first = false; }
        else if (!term.empty() && term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return first ? "0" : out;
}

}  // namespace h10
