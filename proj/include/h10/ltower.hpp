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

#include <array>
#include <map>
#include <mutex>

namespace h10 {

/// The function field L = F0(z1,z2)[h1,h2]/(h1^2-f1, h2^2-f2), a rank-4
/// module over the rational-function base with basis {1, h1, h2, h1*h2},
/// together with the points P1 = (z1,h1), P2 = (z2,h2) on E.
///
/// Multiples of P1 (resp. P2) are computed in the rank-2 subring in h1
/// (resp. h2) and embedded; only the final mixed addition pays full rank-4
/// arithmetic.
class LTower {
  public:
    using C = QuadExt<RatFunc>;  // rank-2 layer
    using L = QuadExt<C>;        // rank-4 layer

    explicit LTower(CurveParams params = CurveParams(), std::string zn1 = "z1",
                    std::string zn2 = "z2", std::string hn1 = "h1", std::string hn2 = "h2")
        : params_(std::move(params)), vars_(VarSet::make({std::move(zn1), std::move(zn2)})) {
        RatFunc z1v = RatFunc::variable(vars_, 0);
        RatFunc z2v = RatFunc::variable(vars_, 1);
        f1_ = curve_rhs(z1v);
        f2_ = curve_rhs(z2v);
        c1_ = C::make_ctx(f1_, hn1);
        c2_ = C::make_ctx(f2_, hn2);
        lctx_ = L::make_ctx(C::from_base(c1_, f2_), hn2);
    }

    const CurveParams& params() const { return params_; }
    const VarSetRef& vars() const { return vars_; }
    const RatFunc& f1() const { return f1_; }
    const RatFunc& f2() const { return f2_; }
    const C::CtxRef& h1_ctx() const { return c1_; }
    const C::CtxRef& h2_ctx() const { return c2_; }
    const L::CtxRef& l_ctx() const { return lctx_; }

    RatFunc curve_rhs(const RatFunc& x) const {
        RatFunc a = RatFunc::constant(vars_, params_.a);
        RatFunc b = RatFunc::constant(vars_, params_.b);
        return x * x * x + a * x + b;
    }

    // --- constants and generators -----------------------------------------
    L from_ratfunc(const RatFunc& r) const { return L::from_base(lctx_, C::from_base(c1_, r)); }
    L zero() const { return from_ratfunc(RatFunc::zero(vars_)); }
    L one() const { return from_ratfunc(RatFunc::one(vars_)); }
    L z1() const { return from_ratfunc(RatFunc::variable(vars_, 0)); }
    L z2() const { return from_ratfunc(RatFunc::variable(vars_, 1)); }
    L h1() const { return L::from_base(lctx_, C::gen(c1_)); }
    L h2() const { return L::gen(lctx_); }
    L a_l() const { return from_ratfunc(RatFunc::constant(vars_, params_.a)); }
    L b_l() const { return from_ratfunc(RatFunc::constant(vars_, params_.b)); }

    CurvePoint<L> point_p1() const { return CurvePoint<L>::affine(z1(), h1()); }
    CurvePoint<L> point_p2() const { return CurvePoint<L>::affine(z2(), h2()); }

    // --- rank-2 embeddings -------------------------------------------------
    L embed_h1(const C& v) const { return L::from_base(lctx_, v); }
    L embed_h2(const C& v) const {  // v lives in F0(z1,z2)[h2]
        return L(lctx_, C::from_base(c1_, v.re()), C::from_base(c1_, v.im()));
    }

    CurvePoint<C> multiple_p1(long n) const {
        C a = C::from_base(c1_, RatFunc::constant(vars_, params_.a));
        CurvePoint<C> p1 = CurvePoint<C>::affine(C::from_base(c1_, RatFunc::variable(vars_, 0)),
                                                 C::gen(c1_));
        return ec_mul(a, n, p1);
    }
    CurvePoint<C> multiple_p2(long r) const {
        C a = C::from_base(c2_, RatFunc::constant(vars_, params_.a));
        CurvePoint<C> p2 = CurvePoint<C>::affine(C::from_base(c2_, RatFunc::variable(vars_, 1)),
                                                 C::gen(c2_));
        return ec_mul(a, r, p2);
    }

    /// The point nP1 + rP2 in E(L).
    CurvePoint<L> point_combination(long n, long r) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find({n, r});
            if (it != cache_.end()) return it->second;
        }
        CurvePoint<C> a1 = multiple_p1(n);
        CurvePoint<C> a2 = multiple_p2(r);
        CurvePoint<L> q1 = a1.inf ? CurvePoint<L>::infinity()
                                  : CurvePoint<L>::affine(embed_h1(a1.x), embed_h1(a1.y));
        CurvePoint<L> q2 = a2.inf ? CurvePoint<L>::infinity()
                                  : CurvePoint<L>::affine(embed_h2(a2.x), embed_h2(a2.y));
        CurvePoint<L> s = ec_add(a_l(), q1, q2);
        {
            std::lock_guard<std::mutex> lock(mu_);
            cache_.emplace(std::pair<long, long>{n, r}, s);
        }
        return s;
    }

    /// x(nP1 + rP2), defined only when the point is affine with nonzero x.
    L x_combination(long n, long r) const {
        CurvePoint<L> p = point_combination(n, r);
        if (p.inf)
            throw ExceptionalPoint("x_combination: " + combo_str(n, r) + " is the point at infinity");
        if (p.x.is_zero())
            throw ExceptionalPoint("x_combination: " + combo_str(n, r) + " has x-coordinate 0");
        return p.x;
    }
    L y_combination(long n, long r) const {
        CurvePoint<L> p = point_combination(n, r);
        if (p.inf) throw ExceptionalPoint("y_combination: point at infinity");
        return p.y;
    }

    bool on_curve_l(const CurvePoint<L>& p) const { return on_curve(a_l(), b_l(), p); }

    // --- rendering ----------------------------------------------------------
    static std::array<RatFunc, 4> coords(const L& v) {
        return {v.re().re(), v.re().im(), v.im().re(), v.im().im()};
    }
    static std::string str(const L& v) {
        auto c = coords(v);
        return "(" + c[0].str() + ", " + c[1].str() + ", " + c[2].str() + ", " + c[3].str() + ")";
    }

  private:
    static std::string combo_str(long n, long r) {
        return std::to_string(n) + "*P1 + " + std::to_string(r) + "*P2";
    }

    CurveParams params_;
    VarSetRef vars_;
    RatFunc f1_, f2_;
    C::CtxRef c1_, c2_;
    L::CtxRef lctx_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<long, long>, CurvePoint<L>> cache_;
};

}  // namespace h10
