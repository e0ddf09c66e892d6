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

#include <h10/mgcd.hpp>

namespace h10 {

/// Reduced fraction of multivariate polynomials. The denominator is nonzero,
/// coprime to the numerator, and normalized to leading coefficient 1 under
/// the fixed grlex order.
class RatFunc {
  public:
    RatFunc() : num_(), den_() {}
    explicit RatFunc(MPoly p) : num_(std::move(p)), den_(MPoly::constant(num_.vars(), TElem::one())) {}
    RatFunc(MPoly n, MPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static RatFunc zero(const VarSetRef& vars) { return RatFunc(MPoly::zero(vars)); }
    static RatFunc one(const VarSetRef& vars) {
        return RatFunc(MPoly::constant(vars, TElem::one()));
    }
    static RatFunc constant(const VarSetRef& vars, const TElem& c) {
        return RatFunc(MPoly::constant(vars, c));
    }
    static RatFunc variable(const VarSetRef& vars, size_t i) {
        return RatFunc(MPoly::variable(vars, i));
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const VarSetRef& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    RatFunc fld_one() const { return one(vars()); }
    TElem constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator-() const { return RatFunc::raw(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(mpoly_mul(a.num_, b.den_) + mpoly_mul(b.num_, a.den_),
                       mpoly_mul(a.den_, b.den_));
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(mpoly_mul(a.num_, b.den_) - mpoly_mul(b.num_, a.den_),
                       mpoly_mul(a.den_, b.den_));
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // cross-reduce before multiplying to keep intermediates small
        auto g1 = mpoly_gcd_cofactors(a.num_, b.den_);
        auto g2 = mpoly_gcd_cofactors(b.num_, a.den_);
        MPoly n = mpoly_mul(g1.ca, g2.ca);
        MPoly d = mpoly_mul(g2.cb, g1.cb);
        return RatFunc::normalized_coprime(std::move(n), std::move(d));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return a * b.inv();
    }
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    bool operator==(const RatFunc& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc::raw_normalized(den_, num_);
    }

    RatFunc pow(long e) const {
        if (e < 0) return inv().pow(-e);
        RatFunc acc = one(vars()), b = *this;
        while (e > 0) {
            if (e & 1) acc *= b;
            b *= b;
            e >>= 1;
        }
        return acc;
    }

    /// Order of vanishing along the coordinate hyperplane of `var`
    /// (the place cut out by that variable).
    long ord_at_var(size_t var) const {
        if (is_zero()) throw std::domain_error("RatFunc: ord of zero");
        return long(num_.trailing_degree_in(var)) - long(den_.trailing_degree_in(var));
    }

    /// Substitute one variable by a rational function.
    RatFunc subst(size_t var, const RatFunc& val) const {
        // expand num and den as polynomials in `var`, then Horner with val
        auto eval_poly = [&](const MPoly& p) {
            auto cs = p.coeffs_in(var);
            RatFunc acc = zero(vars());
            uint32_t prev = 0;
            bool first = true;
            for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
                if (first) {
                    acc = RatFunc(it->second);
                    prev = it->first;
                    first = false;
                    continue;
                }
                acc = acc * val.pow(long(prev - it->first)) + RatFunc(it->second);
                prev = it->first;
            }
            if (first) return zero(vars());
            return acc * val.pow(long(prev));
        };
        RatFunc dn = eval_poly(den_);
        if (dn.is_zero()) throw std::domain_error("RatFunc::subst: denominator vanishes");
        return eval_poly(num_) / dn;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        std::string n = num_.term_count() > 1 ? "(" + num_.str() + ")" : num_.str();
        std::string d = den_.term_count() > 1 ? "(" + den_.str() + ")" : den_.str();
        return n + "/" + d;
    }

  private:
    static RatFunc raw(MPoly n, MPoly d) {
        RatFunc r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
    static RatFunc normalized_coprime(MPoly n, MPoly d) {
        RatFunc r = raw(std::move(n), std::move(d));
        r.normalize_lc();
        return r;
    }
    static RatFunc raw_normalized(MPoly n, MPoly d) {
        RatFunc r = raw(std::move(n), std::move(d));
        r.normalize_lc();
        return r;
    }

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = MPoly::constant(num_.vars(), TElem::one());
            return;
        }
        auto gc = mpoly_gcd_cofactors(num_, den_);
        num_ = std::move(gc.ca);
        den_ = std::move(gc.cb);
        normalize_lc();
    }
    void normalize_lc() {
        if (num_.is_zero()) {
            den_ = MPoly::constant(num_.vars(), TElem::one());
            return;
        }
        TElem l = den_.lead_coeff();
        if (!l.is_one()) {
            TElem inv = l.inv();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    MPoly num_, den_;
};

// ---------------------------------------------------------------------------
// certify_nonsquare
// ---------------------------------------------------------------------------

/// Witness that a rational function has odd order at an irreducible place of
/// the rational function field, hence is not a square over any constant
/// extension.
struct NonSquareWitness {
    MPoly place;  // irreducible polynomial defining the place
    long order;   // odd order of the input at that place
};

/// Try to certify that d is not a square in the rational-function field by
/// exhibiting an irreducible place of odd order. Inconclusive failure is a
/// legal outcome (d may or may not be a square).
inline std::optional<NonSquareWitness> certify_nonsquare(const RatFunc& d) {
    if (d.is_zero()) throw std::domain_error("certify_nonsquare: zero input");
    const VarSetRef& vars = d.vars();

    // candidate places: the coordinate hyperplanes, then irreducible factors
    // of univariate odd parts of numerator and denominator
    for (size_t v = 0; v < vars->size(); ++v) {
        if (!d.num().depends_on(v) && !d.den().depends_on(v)) continue;
        long ord = d.ord_at_var(v);
        if (ord % 2 != 0) return NonSquareWitness{MPoly::variable(vars, v), ord};
    }
    auto scan_poly = [&](const MPoly& p, int sign) -> std::optional<NonSquareWitness> {
        for (size_t v = 0; v < vars->size(); ++v) {
            if (!p.is_univariate_in(v) || !p.depends_on(v)) continue;
            if (!detail::mpoly_all_rational(p)) continue;
            UPoly<Rational> u = detail::mpoly_to_uq(p, v);
            for (auto& [f, m] : qpoly_squarefree_decomp(u)) {
                if (m % 2 == 0) continue;
                for (auto& [irr, mm] : factor_rational(f).factors) {
                    if (irr.degree() == 0) continue;
                    (void)mm;
                    return NonSquareWitness{detail::uq_to_mpoly(irr, vars, v), sign * m};
                }
            }
        }
        return std::nullopt;
    };
    if (auto w = scan_poly(d.num(), +1)) return w;
    if (auto w = scan_poly(d.den(), -1)) return w;
    return std::nullopt;
}

/// Independent recheck of a witness: the order of d at the witness place,
/// recomputed from scratch by repeated exact division.
inline long order_at_place(const RatFunc& d, const MPoly& place) {
    auto count = [&](MPoly p) {
        long k = 0;
        while (true) {
            auto q = p.divided_exact(place);
            if (!q) break;
            p = *q;
            ++k;
        }
        return k;
    };
    return count(d.num()) - count(d.den());
}

}  // namespace h10
