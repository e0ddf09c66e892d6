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

#include <h10/curve.hpp>
#include <h10/ltower.hpp>

#include <sstream>

namespace h10 {

/// The function field of E in one variable: T(z1)[h1]/(h1^2 - f1), with the
/// distinguished points P = (z1, h1) and Tb = (0, sqrt(b)). The sign
/// convention fixes the +sqrt(b) branch; the constant tower is extended at
/// construction when sqrt(b) is missing.
class CurveField {
  public:
    using CF = QuadExt<RatFunc>;

    explicit CurveField(CurveParams params = CurveParams(), TowerRef tower = nullptr)
        : params_(std::move(params)), tower_(std::move(tower)), vars_(VarSet::make({"z1"})) {
        if (!tower_is_ancestor(params_.a.tower(), tower_) ||
            !tower_is_ancestor(params_.b.tower(), tower_))
            throw std::domain_error("CurveField: curve parameters outside tower");
        TElem b = params_.b.lift_to(tower_);
        auto sb = b.sqrt_in_tower();
        if (!sb) {
            tower_ = Tower::extend(tower_, b, "sqb", "");
            sb = b.lift_to(tower_).sqrt_in_tower();
        }
        sqrt_b_ = *sb;
        RatFunc z = RatFunc::variable(vars_, 0);
        f1_ = z * z * z + RatFunc::constant(vars_, params_.a) * z + RatFunc::constant(vars_, params_.b);
        ctx_ = CF::make_ctx(f1_, "h1");
    }

    const CurveParams& params() const { return params_; }
    const TowerRef& tower() const { return tower_; }
    const VarSetRef& vars() const { return vars_; }
    const RatFunc& f1() const { return f1_; }
    UPoly<TElem> f1_upoly() const { return detail::mpoly_to_ut(f1_.num(), 0); }
    const CF::CtxRef& ctx() const { return ctx_; }
    const TElem& sqrt_b() const { return sqrt_b_; }

    CF from_ratfunc(const RatFunc& r) const { return CF::from_base(ctx_, r); }
    CF make(const RatFunc& c, const RatFunc& d) const { return CF(ctx_, c, d); }
    CF zero() const { return from_ratfunc(RatFunc::zero(vars_)); }
    CF one() const { return from_ratfunc(RatFunc::one(vars_)); }
    CF z() const { return from_ratfunc(RatFunc::variable(vars_, 0)); }
    CF h() const { return CF::gen(ctx_); }
    CF a_cf() const { return from_ratfunc(RatFunc::constant(vars_, params_.a.lift_to(tower_))); }

    CurvePoint<CF> generic_point() const { return CurvePoint<CF>::affine(z(), h()); }
    CurvePoint<CF> torsion_free_point() const {  // Tb = (0, +sqrt(b)), infinite order
        return CurvePoint<CF>::affine(zero(),
                                      from_ratfunc(RatFunc::constant(vars_, sqrt_b_)));
    }

    /// x(s*(z1,h1) + r*(0,+sqrt b)); exceptional combinations are errors.
    CF pullback_x(long s, long r) const {
        CurvePoint<CF> p = ec_add(a_cf(), ec_mul(a_cf(), s, generic_point()),
                                  ec_mul(a_cf(), r, torsion_free_point()));
        if (p.inf)
            throw ExceptionalPoint("pullback_x: " + combo(s, r) + " is the point at infinity");
        if (p.x.is_zero())
            throw ExceptionalPoint("pullback_x: " + combo(s, r) + " has x-coordinate 0");
        return p.x;
    }

    CurveField extended(const TElem& radicand, const std::string& name) const {
        CurveField out = *this;
        out.tower_ = Tower::extend(tower_, radicand, name, "");
        out.sqrt_b_ = sqrt_b_.lift_to(out.tower_);
        return out;
    }

  private:
    static std::string combo(long s, long r) {
        return std::to_string(s) + "*P + " + std::to_string(r) + "*Tb";
    }
    CurveParams params_;
    TowerRef tower_;
    VarSetRef vars_;
    RatFunc f1_;
    CF::CtxRef ctx_;
    TElem sqrt_b_;
};

// ---------------------------------------------------------------------------
// residue fields T[z]/(p)
// ---------------------------------------------------------------------------

/// Arithmetic in the residue field at a finite place base.
struct ResidueField {
    UPoly<TElem> base;  // monic irreducible over the tower
    TowerRef tower;

    UPoly<TElem> reduce(const UPoly<TElem>& a) const { return a % base; }
    UPoly<TElem> mul(const UPoly<TElem>& a, const UPoly<TElem>& b) const {
        return (a * b) % base;
    }
    UPoly<TElem> inv(const UPoly<TElem>& a) const {
        auto [g, s, t] = upoly_ext_gcd(a % base, base);
        (void)t;
        if (g.degree() != 0) throw std::domain_error("ResidueField: not invertible");
        return (s.scaled(TElem::one().lift_to(tower) / g.lc())) % base;
    }
    // image of a rational function of nonnegative order at this place
    UPoly<TElem> of_ratfunc(const RatFunc& r) const {
        if (r.is_zero()) return UPoly<TElem>();
        UPoly<TElem> n = detail::mpoly_to_ut(r.num(), 0);
        UPoly<TElem> d = detail::mpoly_to_ut(r.den(), 0);
        long kn = 0, kd = 0;
        while (true) {
            auto [q, rem] = divmod(n, base);
            if (!rem.is_zero()) break;
            n = q;
            ++kn;
        }
        while (true) {
            auto [q, rem] = divmod(d, base);
            if (!rem.is_zero()) break;
            d = q;
            ++kd;
        }
        if (kn < kd) throw std::domain_error("ResidueField: negative order");
        if (kn > kd) return UPoly<TElem>();
        return mul(n % base, inv(d % base));
    }
    // norm down to the tower via the resultant
    TElem norm(const UPoly<TElem>& a) const {
        UPoly<TElem> r = a % base;
        if (r.is_zero()) return TElem::zero().lift_to(tower);
        TElem res = upoly_resultant(base, r);
        // res(base, r) = prod r(alpha_i), base monic
        return res;
    }
    /// Square root of a nonzero residue element, if one exists in this
    /// residue field (Trager norm descent into the constant tower).
    std::optional<UPoly<TElem>> sqrt(const UPoly<TElem>& e_in) const {
        UPoly<TElem> e = e_in % base;
        if (e.is_zero()) return UPoly<TElem>();
        int d = base.degree();
        if (d == 1) {
            TElem v = (-base.constant_term());  // the root alpha
            TElem val = e.eval(v);
            auto s = val.sqrt_in_tower();
            if (!s) return std::nullopt;
            return UPoly<TElem>::constant(*s);
        }
        // g(X) = X^2 - e over k_p; Trager with shifts g(X - lam*theta)
        for (long lam = 0; lam <= 8; lam = lam <= 0 ? -lam + 1 : -lam) {
            // N(X) = prod over roots alpha of base of ((X - lam*alpha)^2 - e(alpha)),
            // obtained by interpolation from norms of evaluations.
            int nd = 2 * d;
            std::vector<TElem> xs, ys;
            long x0 = -nd;
            for (long k = 0; xs.size() < size_t(nd) + 1 && k < 8 * nd + 16; ++k) {
                TElem xv(Rational(x0 + k));
                // element (xv - lam*theta)^2 - e  in k_p
                UPoly<TElem> lin{xv.lift_to(tower), TElem(Rational(-lam)).lift_to(tower)};
                UPoly<TElem> g = (lin * lin) % base - e;
                TElem nv = norm(g % base);
                xs.push_back(xv.lift_to(tower));
                ys.push_back(nv);
            }
            // Lagrange interpolation of N
            UPoly<TElem> N;
            for (size_t i = 0; i < xs.size(); ++i) {
                UPoly<TElem> li = UPoly<TElem>::constant(TElem::one().lift_to(tower));
                TElem denom = TElem::one().lift_to(tower);
                for (size_t j = 0; j < xs.size(); ++j) {
                    if (i == j) continue;
                    li = li * UPoly<TElem>{-xs[j], TElem::one().lift_to(tower)};
                    denom = denom * (xs[i] - xs[j]);
                }
                N = N + li.scaled(ys[i] / denom);
            }
            if (upoly_gcd_euclid(N, N.derivative()).degree() != 0) continue;  // shift again
            auto factors = factor_tower(N, tower, 4 * d + 8);
            for (auto& [G, m] : factors) {
                (void)m;
                // gcd over k_p of (X - lam*theta)^2 - e and G(X)
                // polynomials over k_p represented coefficient-wise
                std::vector<UPoly<TElem>> gq = {
                    ((UPoly<TElem>{TElem::zero().lift_to(tower), TElem(Rational(-lam)).lift_to(tower)} *
                      UPoly<TElem>{TElem::zero().lift_to(tower), TElem(Rational(-lam)).lift_to(tower)}) %
                     base) - e,  // const coeff: (lam*theta)^2 - e
                    reduce(UPoly<TElem>{TElem::zero().lift_to(tower),
                                        TElem(Rational(-2 * lam)).lift_to(tower)}),  // X coeff
                    UPoly<TElem>::constant(TElem::one().lift_to(tower))};            // X^2
                std::vector<UPoly<TElem>> Gq;
                for (auto& c : G.coeffs()) Gq.push_back(UPoly<TElem>::constant(c.lift_to(tower)));
                auto gg = kp_poly_gcd(gq, Gq);
                if (gg.size() == 2) {
                    // monic linear: root = -const
                    UPoly<TElem> root = reduce(-gg[0]);
                    // undo the shift: actual root of X^2 - e is root + lam*theta... wait:
                    // factors found are of g(X) itself (we shifted inside), so root is of
                    // (X - lam*theta)^2 - e; the root of X^2 - e is root - lam*theta.
                    UPoly<TElem> gamma =
                        reduce(root - UPoly<TElem>{TElem::zero().lift_to(tower),
                                                   TElem(Rational(lam)).lift_to(tower)});
                    if (reduce(mul(gamma, gamma) - e).is_zero()) return gamma;
                }
            }
            return std::nullopt;  // squarefree norm fully factored: no root
        }
        throw std::runtime_error("ResidueField::sqrt: no squarefree shift found");
    }

    /// gcd of polynomials with k_p coefficients (each coefficient a residue
    /// polynomial); returns monic coefficient list, lowest degree first.
    std::vector<UPoly<TElem>> kp_poly_gcd(std::vector<UPoly<TElem>> A,
                                          std::vector<UPoly<TElem>> B) const {
        auto trim = [&](std::vector<UPoly<TElem>>& v) {
            for (auto& c : v) c = reduce(c);
            while (!v.empty() && v.back().is_zero()) v.pop_back();
        };
        trim(A);
        trim(B);
        while (!B.empty()) {
            // A mod B
            UPoly<TElem> linv = inv(B.back());
            while (A.size() >= B.size() && !A.empty()) {
                UPoly<TElem> f = mul(A.back(), linv);
                size_t shift = A.size() - B.size();
                for (size_t i = 0; i < B.size(); ++i)
                    A[shift + i] = reduce(A[shift + i] - mul(f, B[i]));
                while (!A.empty() && A.back().is_zero()) A.pop_back();
            }
            std::swap(A, B);
        }
        if (!A.empty()) {
            UPoly<TElem> linv = inv(A.back());
            for (auto& c : A) c = mul(c, linv);
        }
        return A;
    }
};

// ---------------------------------------------------------------------------
// places and divisors
// ---------------------------------------------------------------------------

/// A closed place of the curve function field over the current tower.
struct Place {
    enum class Kind { FiniteSplit, FiniteRamified, FiniteInert, Infinite };
    Kind kind = Kind::Infinite;
    UPoly<TElem> base;   // monic irreducible (finite kinds)
    UPoly<TElem> gamma;  // split: chosen square root of f1 mod base
    int branch = 0;      // split: +1 for h1 -> +gamma, -1 for h1 -> -gamma
    int degree = 1;      // number of geometric points above this place

    std::string key() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::Infinite: return "inf";
            case Kind::FiniteRamified: os << "ram["; break;
            case Kind::FiniteInert: os << "inert["; break;
            case Kind::FiniteSplit: os << (branch > 0 ? "split+[" : "split-["); break;
        }
        for (auto& c : base.coeffs()) os << c.str() << ",";
        os << "]";
        if (kind == Kind::FiniteSplit) {
            os << "@";
            for (auto& c : gamma.coeffs()) os << c.str() << ",";
        }
        return os.str();
    }
    std::string str() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::Infinite: return "place(infinity)";
            case Kind::FiniteRamified: os << "place(ramified, "; break;
            case Kind::FiniteInert: os << "place(inert, "; break;
            case Kind::FiniteSplit:
                os << "place(split" << (branch > 0 ? "+" : "-") << ", ";
                break;
        }
        os << upoly_str(base) << ", deg " << degree << ")";
        return os.str();
    }
    static std::string upoly_str(const UPoly<TElem>& p) {
        std::ostringstream os;
        bool first = true;
        for (size_t i = p.coeffs().size(); i-- > 0;) {
            const TElem& c = p.coeffs()[i];
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            if (i == 0 || !(c.is_rational() && c.rational_part().is_one())) {
                os << (c.is_rational() ? c.str() : "(" + c.str() + ")");
                if (i > 0) os << "*";
            }
            if (i > 0) {
                os << "z1";
                if (i > 1) os << "^" << i;
            }
        }
        if (first) os << "0";
        return os.str();
    }
};

/// Divisor of a function: places with nonzero integer orders; the total
/// degree (orders weighted by place degrees) is zero by construction.
struct Divisor {
    std::vector<std::pair<Place, long>> entries;  // sorted by place key
    TowerRef tower;                               // tower the places live over

    long total_degree() const {
        long s = 0;
        for (auto& [p, o] : entries) s += o * p.degree;
        return s;
    }
    long zeros_with_multiplicity() const {
        long s = 0;
        for (auto& [p, o] : entries)
            if (o > 0) s += o * p.degree;
        return s;
    }
    bool all_orders_even() const {
        for (auto& [p, o] : entries)
            if (o % 2 != 0) return false;
        return true;
    }
    std::optional<std::pair<Place, long>> first_odd() const {
        for (auto& [p, o] : entries)
            if (o % 2 != 0) return std::make_pair(p, o);
        return std::nullopt;
    }
    void sort_entries() {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first.key() < b.first.key(); });
    }
    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < entries.size(); ++i) {
            if (i) os << ", ";
            os << entries[i].first.str() << " -> " << entries[i].second;
        }
        os << "]";
        return os.str();
    }
    friend Divisor operator+(const Divisor& a, const Divisor& b) {
        if (a.tower.get() != b.tower.get())
            throw std::domain_error("Divisor: mismatched towers");
        std::map<std::string, std::pair<Place, long>> acc;
        for (auto& [p, o] : a.entries) acc[p.key()] = {p, o};
        for (auto& [p, o] : b.entries) {
            auto it = acc.find(p.key());
            if (it == acc.end()) acc[p.key()] = {p, o};
            else {
                it->second.second += o;
                if (it->second.second == 0) acc.erase(it);
            }
        }
        Divisor r;
        r.tower = a.tower;
        for (auto& [k, v] : acc) r.entries.push_back(v);
        return r;
    }
    bool operator==(const Divisor& o) const {
        if (entries.size() != o.entries.size()) return false;
        for (size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].first.key() != o.entries[i].first.key()) return false;
            if (entries[i].second != o.entries[i].second) return false;
        }
        return true;
    }
};

namespace detail {

inline long upoly_multiplicity(UPoly<TElem> a, const UPoly<TElem>& p) {
    long k = 0;
    while (!a.is_zero()) {
        auto [q, r] = divmod(a, p);
        if (!r.is_zero()) break;
        a = q;
        ++k;
    }
    return k;
}

// order of a rational function at the place cut out by irreducible p
inline long ratfunc_ord_at(const RatFunc& r, const UPoly<TElem>& p) {
    if (r.is_zero()) throw std::domain_error("ratfunc_ord_at: zero");
    return upoly_multiplicity(mpoly_to_ut(r.num(), 0), p) -
           upoly_multiplicity(mpoly_to_ut(r.den(), 0), p);
}

// polynomial degree of a univariate rational function (num minus den)
inline long ratfunc_deg(const RatFunc& r) {
    if (r.is_zero()) throw std::domain_error("ratfunc_deg: zero");
    return long(r.num().degree_in(0)) - long(r.den().degree_in(0));
}

}  // namespace detail

/// Result of a full divisor computation; the field may have grown a tower
/// extension while resolving split branches over degree-one bases.
struct DivisorResult {
    Divisor divisor;
    CurveField field;  // the (possibly extended) field the places live over
};

DivisorResult divisor_of(const CurveField& fld, const CurveField::CF& f);

namespace detail {

inline UPoly<TElem> lift_upoly(const UPoly<TElem>& p, const TowerRef& tw) {
    std::vector<TElem> c(p.coeffs());
    for (auto& x : c) x = x.lift_to(tw);
    return UPoly<TElem>(std::move(c));
}

inline RatFunc lift_ratfunc(const RatFunc& r, const TowerRef& tw) {
    auto lift_mpoly = [&](const MPoly& p) {
        MPoly out(p.vars());
        for (auto& [e, c] : p.terms()) out.add_term(e, c.lift_to(tw));
        return out;
    };
    return RatFunc(lift_mpoly(r.num()), lift_mpoly(r.den()));
}

}  // namespace detail

/// Complete divisor of a nonzero function c + d*h1 over the algebraic
/// closure of the constant tower, represented by closed places over the
/// (possibly extended) tower. Orders at split places follow the local
/// expansion of c +- d*sqrt(f1); ramified places use h1 as uniformizer;
/// infinity uses z1/h1.
inline DivisorResult divisor_of(const CurveField& fld, const CurveField::CF& f) {
    if (f.is_zero()) throw std::domain_error("divisor_of: zero function");
    CurveField field = fld;

restart:
    const TowerRef& tw = field.tower();
    RatFunc c = detail::lift_ratfunc(f.re(), tw);
    RatFunc d = detail::lift_ratfunc(f.im(), tw);
    RatFunc f1 = detail::lift_ratfunc(field.f1(), tw);
    UPoly<TElem> f1u = detail::mpoly_to_ut(f1.num(), 0);

    // candidate bases: irreducible factors of everything in sight
    std::map<std::string, UPoly<TElem>> candidates;
    auto add_candidates = [&](const MPoly& p) {
        if (p.is_constant()) return;
        UPoly<TElem> u = detail::lift_upoly(detail::mpoly_to_ut(p, 0), tw);
        for (auto& [g, m] : factor_tower(u, tw, 256)) {
            (void)m;
            if (g.degree() == 0) continue;
            candidates.emplace(Place::upoly_str(g), g);
        }
    };
    add_candidates(c.num());
    add_candidates(c.den());
    std::optional<RatFunc> norm;
    if (!d.is_zero()) {
        add_candidates(d.num());
        add_candidates(d.den());
        norm = c * c - d * d * f1;
        add_candidates(norm->num());
        add_candidates(norm->den());
    }
    add_candidates(f1.num());

    Divisor div;
    div.tower = tw;

    for (auto& [key, p] : candidates) {
        (void)key;
        long ordc = c.is_zero() ? LONG_MAX : detail::ratfunc_ord_at(c, p);
        long ordd = d.is_zero() ? LONG_MAX : detail::ratfunc_ord_at(d, p);

        if (detail::upoly_multiplicity(f1u, p) > 0) {
            // ramified above p | f1 (f1 squarefree: multiplicity is 1)
            long o = std::min(ordc == LONG_MAX ? LONG_MAX : 2 * ordc,
                              ordd == LONG_MAX ? LONG_MAX : 2 * ordd + 1);
            if (o != 0 && o != LONG_MAX) {
                Place pl;
                pl.kind = Place::Kind::FiniteRamified;
                pl.base = p;
                pl.degree = p.degree();
                div.entries.emplace_back(pl, o);
            }
            continue;
        }

        long mu = std::min(ordc, ordd);
        if (mu == LONG_MAX) continue;
        if (d.is_zero()) {
            // pure base function: both branches (or the inert place) carry ord_p(c)
            if (ordc == 0) continue;
            ResidueField kp0{p, tw};
            UPoly<TElem> f1bar0 = detail::lift_upoly(f1u, tw) % p;
            auto g0 = kp0.sqrt(f1bar0);
            if (!g0 && p.degree() == 1) {
                TElem alpha = -p.constant_term();
                TElem val = detail::lift_upoly(f1u, tw).eval(alpha);
                field = field.extended(val, "s" + std::to_string(tower_level(tw) + 1));
                goto restart;
            }
            if (!g0) {
                Place pl;
                pl.kind = Place::Kind::FiniteInert;
                pl.base = p;
                pl.degree = 2 * p.degree();
                div.entries.emplace_back(pl, ordc);
            } else {
                Place plus, minus;
                plus.kind = minus.kind = Place::Kind::FiniteSplit;
                plus.base = minus.base = p;
                plus.gamma = minus.gamma = *g0;
                plus.branch = +1;
                minus.branch = -1;
                plus.degree = minus.degree = p.degree();
                div.entries.emplace_back(plus, ordc);
                div.entries.emplace_back(minus, ordc);
            }
            continue;
        }
        long nu = detail::ratfunc_ord_at(*norm, p);
        if (mu == 0 && nu == 0) continue;

        ResidueField kp{p, tw};
        UPoly<TElem> f1bar = detail::lift_upoly(f1u, tw) % p;
        auto gamma = kp.sqrt(f1bar);
        if (!gamma && p.degree() == 1) {
            // extend the tower so the two points over this base become visible
            TElem alpha = -p.constant_term();
            TElem val = detail::lift_upoly(f1u, tw).eval(alpha);
            field = field.extended(val, "s" + std::to_string(tower_level(tw) + 1));
            goto restart;
        }
        if (!gamma) {
            // inert: single place, residue degree 2, all geometric orders = mu
            if (mu != 0) {
                Place pl;
                pl.kind = Place::Kind::FiniteInert;
                pl.base = p;
                pl.degree = 2 * p.degree();
                div.entries.emplace_back(pl, mu);
            }
            continue;
        }
        // split: orders {mu, nu - mu}; the residue test decides which branch
        long hi = nu - mu;
        Place plus, minus;
        plus.kind = minus.kind = Place::Kind::FiniteSplit;
        plus.base = minus.base = p;
        plus.gamma = minus.gamma = *gamma;
        plus.branch = +1;
        minus.branch = -1;
        plus.degree = minus.degree = p.degree();
        long ord_plus, ord_minus;
        if (hi == mu) {
            ord_plus = ord_minus = mu;
        } else {
            // strip p^mu and evaluate c' + d'*gamma in k_p
            RatFunc pr = RatFunc(detail::ut_to_mpoly(p, c.vars(), 0));
            RatFunc cs = c.is_zero() ? c : c * pr.pow(-mu);
            RatFunc ds = d.is_zero() ? d : d * pr.pow(-mu);
            UPoly<TElem> cv = cs.is_zero() ? UPoly<TElem>() : kp.of_ratfunc(cs);
            UPoly<TElem> dv = ds.is_zero() ? UPoly<TElem>() : kp.of_ratfunc(ds);
            UPoly<TElem> resid = kp.reduce(cv + kp.mul(dv, *gamma));
            if (!resid.is_zero()) {
                ord_plus = mu;
                ord_minus = hi;
            } else {
                ord_plus = hi;
                ord_minus = mu;
            }
        }
        if (ord_plus != 0) div.entries.emplace_back(plus, ord_plus);
        if (ord_minus != 0) div.entries.emplace_back(minus, ord_minus);
    }

    // infinity: ord(c) = -2 deg c, ord(d*h1) = -2 deg d - 3; parities differ
    {
        long oc = c.is_zero() ? LONG_MAX : -2 * detail::ratfunc_deg(c);
        long od = d.is_zero() ? LONG_MAX : -2 * detail::ratfunc_deg(d) - 3;
        long o = std::min(oc, od);
        if (o != 0 && o != LONG_MAX) {
            Place pl;
            pl.kind = Place::Kind::Infinite;
            pl.degree = 1;
            div.entries.emplace_back(pl, o);
        }
    }

    div.sort_entries();
    if (div.total_degree() != 0)
        throw std::logic_error("divisor_of: total degree " + std::to_string(div.total_degree()) +
                               " != 0 for " + f.str());
    return {std::move(div), std::move(field)};
}

// ---------------------------------------------------------------------------
// square classes over the algebraically closed constants
// ---------------------------------------------------------------------------

/// Witness that a curve function is not a square over any constant
/// extension: a place (or a squarefree collective base whose places all
/// share the stated parity) where the function has odd order.
struct CurveNonSquareWitness {
    Place place;          // concrete place when available
    long order = 0;       // odd order at that place
    bool collective = false;  // base may be reducible; every place above it is odd
    std::string note;
};

struct SquareDecision {
    bool square = false;  // divisor even: square over the closed constants
    std::optional<CurveNonSquareWitness> witness;
};

/// Decide squareness over the algebraic closure by divisor parity. The full
/// divisor is computed for moderate degrees; beyond that a parity analysis
/// of the norm and the ramified/infinite places finds an odd place without
/// any factorization.
inline SquareDecision is_square_over_closure(const CurveField& fld, const CurveField::CF& f,
                                             int full_divisor_degree_limit = 48) {
    if (f.is_zero()) throw std::domain_error("is_square_over_closure: zero function");
    const RatFunc& c = f.re();
    const RatFunc& d = f.im();
    long sz = long(c.is_zero() ? 0 : c.num().degree() + c.den().degree()) +
              long(d.is_zero() ? 0 : d.num().degree() + d.den().degree());

    if (sz <= full_divisor_degree_limit) {
        DivisorResult dr = divisor_of(fld, f);
        if (auto odd = dr.divisor.first_odd())
            return {false, CurveNonSquareWitness{odd->first, odd->second, false, ""}};
        return {true, std::nullopt};
    }

    // ---- parity fast path (no factorization) ----
    // Write c = C/E, d = D/E over a common denominator. At a finite place p
    // away from f1 the two branch orders are {mu, nu-mu} with
    // mu = ord_p gcd(C,D) - ord_p E and nu = ord_p(C^2 - D^2 f1) - 2 ord_p E,
    // so an odd place above p exists iff mu or nu is odd. Ramified places and
    // infinity are checked exactly. This decides parity completely.
    const TowerRef& tw = fld.tower();
    UPoly<TElem> f1u = detail::lift_upoly(fld.f1_upoly(), tw);

    auto odd_part = [&](const UPoly<TElem>& u) -> UPoly<TElem> {
        UPoly<TElem> acc = UPoly<TElem>::constant(TElem::one().lift_to(tw));
        if (u.degree() <= 0) return acc;
        std::vector<std::pair<UPoly<TElem>, int>> dec;
        if (auto q = detail::upoly_to_q(u)) {
            for (auto& [g, m] : qpoly_squarefree_decomp(*q))
                dec.emplace_back(detail::upoly_lift(detail::upoly_from_q(g), tw), m);
        } else {
            dec = upoly_squarefree_decomp(u);
        }
        for (auto& [g, m] : dec)
            if (m % 2 != 0) acc = acc * g;
        return acc;
    };
    auto strip = [&](UPoly<TElem> u, const UPoly<TElem>& away) {
        while (u.degree() > 0) {
            UPoly<TElem> g = upoly_gcd_euclid(u, away);
            if (g.degree() == 0) return u;
            u = (u / g).monic();
        }
        return u;
    };

    UPoly<TElem> E, C, D;
    {
        UPoly<TElem> dc = detail::lift_upoly(detail::mpoly_to_ut(c.den(), 0), tw);
        UPoly<TElem> dd = d.is_zero()
                              ? UPoly<TElem>::constant(TElem::one().lift_to(tw))
                              : detail::lift_upoly(detail::mpoly_to_ut(d.den(), 0), tw);
        UPoly<TElem> g = upoly_gcd_euclid(dc, dd);
        E = dc * (dd / g);
        C = c.is_zero() ? UPoly<TElem>()
                        : detail::lift_upoly(detail::mpoly_to_ut(c.num(), 0), tw) * (E / dc);
        D = d.is_zero() ? UPoly<TElem>()
                        : detail::lift_upoly(detail::mpoly_to_ut(d.num(), 0), tw) * (E / dd);
    }

    // finite places away from f1
    {
        UPoly<TElem> G = upoly_gcd_euclid(C, D);  // handles C or D zero
        UPoly<TElem> mu_odd = strip(odd_part(G * E), f1u);
        if (mu_odd.degree() > 0) {
            Place pl;
            pl.kind = Place::Kind::FiniteSplit;
            pl.base = mu_odd.monic();
            pl.degree = mu_odd.degree();
            return {false, CurveNonSquareWitness{pl, 1, true,
                                                 "odd minimal order at every place above this base"}};
        }
        UPoly<TElem> N = C * C - D * D * f1u;
        if (N.is_zero()) throw std::logic_error("is_square_over_closure: zero norm");
        UPoly<TElem> nu_odd = strip(odd_part(N), f1u);
        if (nu_odd.degree() > 0) {
            Place pl;
            pl.kind = Place::Kind::FiniteSplit;
            pl.base = nu_odd.monic();
            pl.degree = nu_odd.degree();
            return {false, CurveNonSquareWitness{pl, 1, true,
                                                 "odd branch order above this base"}};
        }
    }
    // ramified places: ord = min(2 ord_p c, 2 ord_p d + 1)
    for (auto& [q, m] : factor_tower(f1u, tw, 16)) {
        (void)m;
        long oc = c.is_zero() ? LONG_MAX : detail::ratfunc_ord_at(c, q);
        long od = d.is_zero() ? LONG_MAX : detail::ratfunc_ord_at(d, q);
        if (od == LONG_MAX) continue;  // even order 2*oc
        if (oc == LONG_MAX || od < oc) {
            Place pl;
            pl.kind = Place::Kind::FiniteRamified;
            pl.base = q;
            pl.degree = q.degree();
            return {false, CurveNonSquareWitness{pl, 2 * od + 1, false,
                                                 "h1 component dominates at ramified place"}};
        }
    }
    // infinity: ord = min(-2 deg c, -2 deg d - 3)
    {
        long oc = c.is_zero() ? LONG_MAX : -2 * detail::ratfunc_deg(c);
        long od = d.is_zero() ? LONG_MAX : -2 * detail::ratfunc_deg(d) - 3;
        if (od != LONG_MAX && od < oc) {
            Place pl;
            pl.kind = Place::Kind::Infinite;
            return {false, CurveNonSquareWitness{pl, od, false, "h1 component dominates at infinity"}};
        }
    }
    return {true, std::nullopt};
}

/// Pairwise square-class independence: true iff no ratio f_i/f_j has even
/// divisor. Returns the first offending pair when false, and odd-order
/// witnesses for every distinct pair.
struct SquareClassReport {
    bool distinct = true;
    std::optional<std::pair<size_t, size_t>> equal_pair;
    std::vector<std::tuple<size_t, size_t, CurveNonSquareWitness>> witnesses;
};

inline SquareClassReport square_classes_distinct(const CurveField& fld,
                                                 const std::vector<CurveField::CF>& fs) {
    SquareClassReport rep;
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = i + 1; j < fs.size(); ++j) {
            CurveField::CF ratio = fs[i] / fs[j];
            SquareDecision dec = is_square_over_closure(fld, ratio);
            if (dec.square) {
                rep.distinct = false;
                if (!rep.equal_pair) rep.equal_pair = {i, j};
            } else {
                rep.witnesses.emplace_back(i, j, *dec.witness);
            }
        }
    return rep;
}

}  // namespace h10
