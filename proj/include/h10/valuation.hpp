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

#include <h10/places.hpp>
#include <h10/series.hpp>

#include <mutex>

namespace h10 {

/// An element of L rewritten in the generators (z1, h1, z2', h2') with
/// z2' = x(mP1 + P2) and h2' = y(mP1 + P2). The carrier is a second
/// rank-4 tower over the variables (z1, z2').
struct ReexpressedL {
    long m = 0;
    LTower::L value;  // element of the (z1, z2') tower
};

/// Exact order and unit residue of an element under the valuation w_m
/// measuring vanishing of z2' = x(mP1 + P2), at the +sqrt(b) branch.
struct ValuationOutcome {
    long order = 0;
    CurveField::CF unit_residue;  // image in the curve function field T(z1)[h1]
};

/// Witness refuting solvability of a*y^2 + b*z^2 = 1 in L*: the valuation
/// pattern (w_m(a) = 0, w_m(b) odd) plus a non-square certificate for the
/// residue of a over the closed constants.
struct RefutationWitness {
    long m = 0;
    long order_a = 0;
    long order_b = 0;
    CurveField::CF residue;
    CurveNonSquareWitness nonsquare;

    std::string str() const {
        std::ostringstream os;
        os << "refutation{m=" << m << ", w_m(a)=" << order_a << ", w_m(b)=" << order_b
           << ", residue non-square at " << nonsquare.place.str() << " with odd order "
           << nonsquare.order << "}";
        return os.str();
    }
};

struct GateResult {
    enum class Status { Possible, Refuted, NotApplicable };
    Status status = Status::Possible;
    std::optional<RefutationWitness> witness;
    std::string reason;
};

/// The w_m machinery over the base configuration (alpha = 1, L = F).
class ValuationLab {
  public:
    using CF = CurveField::CF;
    using Ser = LSeries<CF>;

    // precision ladder for the local expansions
    static constexpr int kInitPrec = 8;

    explicit ValuationLab(CurveParams params = CurveParams())
        : l_(params), m2_(params, "z1", "z2p", "h1", "h2p"), cf_(params) {}

    const LTower& l() const { return l_; }
    const LTower& m2() const { return m2_; }
    const CurveField& residue_field() const { return cf_; }

    // --- exact rewriting ---------------------------------------------------

    /// Rewrite f in the generators (z1, h1, z2', h2'); exact substitution
    /// z2 -> x(P2' - mP1), h2 -> y(P2' - mP1) carried out in the second
    /// rank-4 tower.
    ReexpressedL change_generators(long m, const LTower::L& f) const {
        CurvePoint<LTower::L> q = m2_.point_combination(-m, 1);
        if (q.inf || q.x.is_zero())
            throw ExceptionalPoint("change_generators: P2' - mP1 exceptional");
        auto comps = LTower::coords(f);
        LTower::L acc = eval_bivariate(comps[0], q.x) +
                        eval_bivariate(comps[1], q.x) * m2_.h1() +
                        (eval_bivariate(comps[2], q.x) + eval_bivariate(comps[3], q.x) * m2_.h1()) *
                            q.y;
        return ReexpressedL{m, std::move(acc)};
    }

    /// Substitute z2' = x(mP1+P2), h2' = y(mP1+P2) back; recovers the
    /// original element exactly.
    LTower::L restore(const ReexpressedL& r) const {
        LTower::L xq = l_.x_combination(r.m, 1);
        LTower::L yq = l_.y_combination(r.m, 1);
        auto comps = LTower::coords(r.value);
        auto ev = [&](const RatFunc& c) { return eval_bivariate_l(c, xq); };
        return ev(comps[0]) + ev(comps[1]) * l_.h1() + (ev(comps[2]) + ev(comps[3]) * l_.h1()) * yq;
    }

    // --- the valuation -----------------------------------------------------

    /// Order and unit residue of f at the z2'-adic place, +sqrt(b) branch.
    /// Computed by local expansion: z2' becomes the uniformizer t, h2'
    /// the series sqrt(t^3 + a t + b), and the generators z2, h2 the
    /// coordinates of P2' - mP1 over the completion.
    ValuationOutcome w_m(long m, const LTower::L& f) const {
        if (f.is_zero()) throw std::domain_error("w_m: valuation of zero");
        for (int prec = kInitPrec; prec <= 256; prec *= 2) {
            try {
                Ser s = expand_at(m, f, prec);
                return ValuationOutcome{s.order(), s.lead()};
            } catch (const PrecisionExhausted&) {
                continue;
            }
        }
        throw std::runtime_error("w_m: precision limit exceeded");
    }

    /// Exact valuation data for the bundle elements x(nP1 + rP2), computed
    /// through the identity nP1 + rP2 = sP1 + rP2' with s = n - m r: the
    /// element is x(sP1 + rP2') in the (z1, z2') tower, whose z2'-adic order
    /// and +sqrt(b) residue are read off the coordinate 4-tuple directly.
    ValuationOutcome w_m_combination(long m, long n, long r) const {
        long s = n - m * r;
        if (s == 0 && r == 0)
            throw ExceptionalPoint("w_m_combination: x(O) undefined");
        LTower::L u = m2_.x_combination(s, r);
        return branch_order_residue(u);
    }

    /// Order and residue of an element of the (z1, z2') tower at the place
    /// z2' = 0, h2' = +sqrt(b).
    ValuationOutcome branch_order_residue(const LTower::L& u) const {
        if (u.is_zero()) throw std::domain_error("branch_order_residue: zero element");
        auto comps = LTower::coords(u);
        long mu = LONG_MAX;
        for (auto& c : comps)
            if (!c.is_zero()) mu = std::min(mu, c.ord_at_var(1));
        CF sqb = cf_.from_ratfunc(RatFunc::constant(cf_.vars(), cf_.sqrt_b()));
        auto shifted0 = [&](const RatFunc& c) -> CF {  // (c / t^mu)(t = 0)
            if (c.is_zero()) return cf_.zero();
            if (c.ord_at_var(1) > mu) return cf_.zero();
            return cf_.from_ratfunc(eval_t0(c, mu));
        };
        CF res_a = shifted0(comps[0]) + shifted0(comps[1]) * cf_.h();
        CF res_b = shifted0(comps[2]) + shifted0(comps[3]) * cf_.h();
        CF res_plus = res_a + res_b * sqb;
        if (!res_plus.is_zero()) return ValuationOutcome{mu, res_plus};
        // cancellation on the + branch: the order is nu - mu with
        // nu = ord(norm) and the residue comes through the conjugate
        CF res_minus = res_a - res_b * sqb;
        if (res_minus.is_zero())
            throw std::logic_error("branch_order_residue: both branch residues vanish");
        LTower::C norm = u.norm();  // A^2 - B^2 f2(z2')
        long nu = LONG_MAX;
        if (!norm.re().is_zero()) nu = std::min(nu, norm.re().ord_at_var(1));
        if (!norm.im().is_zero()) nu = std::min(nu, norm.im().ord_at_var(1));
        auto shiftn = [&](const RatFunc& c) -> CF {
            if (c.is_zero()) return cf_.zero();
            if (c.ord_at_var(1) > nu) return cf_.zero();
            return cf_.from_ratfunc(eval_t0(c, nu));
        };
        CF res_norm = shiftn(norm.re()) + shiftn(norm.im()) * cf_.h();
        if (res_norm.is_zero())
            throw std::logic_error("branch_order_residue: norm residue vanishes");
        return ValuationOutcome{nu - mu, res_norm / res_minus};
    }

    /// Lemma gate: with w_m(a) = 0 and w_m(b) odd, solvability of
    /// a y^2 + b z^2 = 1 in L* forces the residue of a to be a square in the
    /// residue field; a non-square residue over the closed constants refutes.
    GateResult lemma_square_gate(const LTower::L& a, const LTower::L& b, long m) const {
        ValuationOutcome va = w_m(m, a);
        if (va.order != 0)
            return {GateResult::Status::NotApplicable, std::nullopt,
                    "w_m(a) = " + std::to_string(va.order) + ", expected 0"};
        ValuationOutcome vb = w_m(m, b);
        if (vb.order % 2 == 0)
            return {GateResult::Status::NotApplicable, std::nullopt,
                    "w_m(b) = " + std::to_string(vb.order) + ", expected odd"};
        SquareDecision dec = is_square_over_closure(cf_, va.unit_residue);
        if (dec.square)
            return {GateResult::Status::Possible, std::nullopt, "residue is a square"};
        RefutationWitness w;
        w.m = m;
        w.order_a = va.order;
        w.order_b = vb.order;
        w.residue = va.unit_residue;
        w.nonsquare = *dec.witness;
        return {GateResult::Status::Refuted, std::move(w), ""};
    }

    // --- helpers -----------------------------------------------------------

    /// x(mP1) and y(mP1) as elements of the one-variable curve field.
    CurvePoint<CF> multiple_p1_cf(long m) const {
        return ec_mul(cf_.a_cf(), m, cf_.generic_point());
    }

    /// (c / z2'^k) evaluated at z2' = 0, as a one-variable rational function.
    RatFunc eval_t0(const RatFunc& c, long k) const {
        long on = long(c.num().trailing_degree_in(1));
        long od = long(c.den().trailing_degree_in(1));
        // ord = on - od; dividing by t^k and evaluating keeps t-degree
        // (on - k) in the numerator and od in the denominator
        MPoly n0 = c.num().coeff_of(1, uint32_t(on));
        MPoly d0 = c.den().coeff_of(1, uint32_t(od));
        if (on - od != k)
            throw std::domain_error("eval_t0: order mismatch");
        MPoly n1(cf_.vars()), d1(cf_.vars());
        for (auto& [e, cc] : n0.terms()) n1.add_term(ExpVec{e[0]}, cc);
        for (auto& [e, cc] : d0.terms()) d1.add_term(ExpVec{e[0]}, cc);
        return RatFunc(n1, d1);
    }

    CF cf_of_z1(const MPoly& p) const {  // z1-only polynomial into the curve field
        MPoly q(cf_.vars());
        for (auto& [e, c] : p.terms()) {
            if (e.size() > 1 && e[1] != 0)
                throw std::domain_error("cf_of_z1: unexpected z2 dependence");
            ExpVec t(1, e[0]);
            q.add_term(t, c);
        }
        return cf_.from_ratfunc(RatFunc(q));
    }

  private:
    // evaluate a bivariate rational function at z2 = v in the second tower
    LTower::L eval_bivariate(const RatFunc& c, const LTower::L& v) const {
        LTower::L num = eval_mpoly(c.num(), v, m2_);
        LTower::L den = eval_mpoly(c.den(), v, m2_);
        return num / den;
    }
    LTower::L eval_bivariate_l(const RatFunc& c, const LTower::L& v) const {
        LTower::L num = eval_mpoly(c.num(), v, l_);
        LTower::L den = eval_mpoly(c.den(), v, l_);
        return num / den;
    }
    // p(z1, z2) -> p(z1_tower, v) by Horner in the second variable
    static LTower::L eval_mpoly(const MPoly& p, const LTower::L& v, const LTower& tw) {
        auto by_deg = p.coeffs_in(1);
        LTower::L acc = tw.zero();
        uint32_t prev = 0;
        bool first = true;
        for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
            LTower::L coeff = tw.from_ratfunc(RatFunc(strip_z2(it->second, tw)));
            if (first) {
                acc = coeff;
                prev = it->first;
                first = false;
                continue;
            }
            for (uint32_t k = it->first; k < prev; ++k) acc = acc * v;
            acc = acc + coeff;
            prev = it->first;
        }
        if (first) return tw.zero();
        for (uint32_t k = 0; k < prev; ++k) acc = acc * v;
        return acc;
    }
    static MPoly strip_z2(const MPoly& p, const LTower& tw) {
        MPoly q(tw.vars());
        for (auto& [e, c] : p.terms()) {
            ExpVec t(2, 0);
            t[0] = e[0];
            q.add_term(t, c);
        }
        return q;
    }

    // --- series expansion at the place z2' = 0, h2' = +sqrt(b) -------------

    Ser cser(const CF& v, int prec) const { return Ser::constant(v, prec); }

    Ser h2p_series(int prec) const {  // sqrt(t^3 + a t + b)
        CF one = cf_.one();
        CF z = one - one;
        std::vector<CF> f(size_t(prec), z);
        f[0] = cf_.from_ratfunc(RatFunc::constant(cf_.vars(), cf_.params().b));
        if (prec > 1) f[1] = cf_.from_ratfunc(RatFunc::constant(cf_.vars(), cf_.params().a));
        if (prec > 3) f[3] = one;
        Ser fe(0, std::move(f));
        CF sqrt_b = cf_.from_ratfunc(RatFunc::constant(cf_.vars(), cf_.sqrt_b()));
        return Ser::sqrt_with(fe, sqrt_b);
    }

    // coordinates of Q = P2' - mP1 over the completion, cached per (m, prec)
    std::pair<Ser, Ser> expansion_point(long m, int prec) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = point_cache_.find({m, prec});
            if (it != point_cache_.end()) return it->second;
        }
        CF one = cf_.one();
        Ser t = Ser::uniformizer(one, prec);
        Ser h2p = h2p_series(prec);
        CurvePoint<Ser> p2p = CurvePoint<Ser>::affine(t, h2p);
        Ser xq, yq;
        if (m == 0) {
            xq = t;
            yq = h2p;
        } else {
            CurvePoint<CF> mp1 = multiple_p1_cf(m);
            CurvePoint<Ser> mp1s = CurvePoint<Ser>::affine(cser(mp1.x, prec), cser(mp1.y, prec));
            Ser a = cser(cf_.a_cf(), prec);
            CurvePoint<Ser> q = ec_sub(a, p2p, mp1s);
            if (q.inf) throw std::logic_error("expansion_point: generic subtraction hit infinity");
            xq = q.x;
            yq = q.y;
        }
        std::lock_guard<std::mutex> lock(mu_);
        point_cache_.emplace(std::pair<long, int>{m, prec}, std::pair<Ser, Ser>{xq, yq});
        return {xq, yq};
    }

    Ser expand_at(long m, const LTower::L& f, int prec) const {
        auto [xq, yq] = expansion_point(m, prec);
        auto comps = LTower::coords(f);
        auto ev = [&](const RatFunc& c) {
            Ser num = eval_mpoly_series(c.num(), xq, prec);
            Ser den = eval_mpoly_series(c.den(), xq, prec);
            return num / den;
        };
        CF h1 = cf_.h();
        Ser acc;
        bool have = false;
        auto push = [&](const Ser& s) {
            acc = have ? acc + s : s;
            have = true;
        };
        if (!comps[0].is_zero()) push(ev(comps[0]));
        if (!comps[1].is_zero()) push(ev(comps[1]) * cser(h1, prec));
        if (!comps[2].is_zero()) push(ev(comps[2]) * yq);
        if (!comps[3].is_zero()) push(ev(comps[3]) * cser(h1, prec) * yq);
        if (!have) throw std::domain_error("expand_at: zero element");
        if (acc.is_zero())
            throw PrecisionExhausted("expand_at: element vanishes to working precision");
        acc.normalize();
        return acc;
    }

    Ser eval_mpoly_series(const MPoly& p, const Ser& v, int prec) const {
        auto by_deg = p.coeffs_in(1);
        Ser acc;
        uint32_t prev = 0;
        bool first = true;
        for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
            Ser coeff = cser(cf_of_z1(it->second), prec);
            if (first) {
                acc = coeff;
                prev = it->first;
                first = false;
                continue;
            }
            for (uint32_t k = it->first; k < prev; ++k) acc = acc * v;
            acc = acc + coeff;
            prev = it->first;
        }
        if (first) return cser(cf_.zero(), prec);
        for (uint32_t k = 0; k < prev; ++k) acc = acc * v;
        return acc;
    }

    LTower l_;
    LTower m2_;
    CurveField cf_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<long, int>, std::pair<Ser, Ser>> point_cache_;
};

}  // namespace h10
