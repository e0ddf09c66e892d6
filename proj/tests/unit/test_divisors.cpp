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

#include <doctest.h>

#include <h10/places.hpp>

#include <random>

using namespace h10;

namespace {
const CurveField& field() {
    static CurveField f;
    return f;
}
}  // namespace

TEST_CASE("pullback_x basics") {
    const CurveField& F = field();
    CHECK(F.pullback_x(1, 0) == F.z());
    CHECK_THROWS_AS(F.pullback_x(0, 1), ExceptionalPoint);  // x(Tb) = 0
    CHECK_THROWS_AS(F.pullback_x(0, 0), ExceptionalPoint);  // infinity

    // (1,1): chord between (z1,h1) and (0,1)
    CurveField::CF lam = (F.one() - F.h()) / (F.zero() - F.z());
    CurveField::CF expect = lam * lam - F.z();
    CHECK(F.pullback_x(1, 1) == expect);
    // the full point stays on the curve
    auto p = ec_add(F.a_cf(), F.generic_point(), F.torsion_free_point());
    CHECK(p.y * p.y == p.x * p.x * p.x + F.a_cf() * p.x + F.one());
}

TEST_CASE("divisor of x: two simple zeros at (0,+-1), double pole at infinity") {
    const CurveField& F = field();
    auto dr = divisor_of(F, F.z());
    REQUIRE(dr.divisor.entries.size() == 3);
    long zeros = 0, infs = 0;
    for (auto& [p, o] : dr.divisor.entries) {
        if (p.kind == Place::Kind::Infinite) {
            CHECK(o == -2);
            ++infs;
        } else {
            REQUIRE(p.kind == Place::Kind::FiniteSplit);
            CHECK(o == 1);
            CHECK(p.base.degree() == 1);
            CHECK(p.base.constant_term().is_zero());  // base z1
            // branch datum: gamma = +-1 since f1(0) = b = 1
            CHECK(p.gamma.degree() == 0);
            ++zeros;
        }
    }
    CHECK(zeros == 2);
    CHECK(infs == 1);
    CHECK(dr.divisor.total_degree() == 0);
}

TEST_CASE("divisor of y: three simple zeros at roots of f1, order -3 at infinity") {
    const CurveField& F = field();
    auto dr = divisor_of(F, F.h());
    REQUIRE(dr.divisor.entries.size() == 2);
    for (auto& [p, o] : dr.divisor.entries) {
        if (p.kind == Place::Kind::Infinite) {
            CHECK(o == -3);
        } else {
            CHECK(p.kind == Place::Kind::FiniteRamified);
            CHECK(o == 1);
            CHECK(p.base.degree() == 3);  // z1^3 + z1 + 1 irreducible
            CHECK(p.degree == 3);
        }
    }
}

TEST_CASE("divisor is a homomorphism and squares double orders") {
    const CurveField& F = field();
    auto dz = divisor_of(F, F.z()).divisor;
    auto dz2 = divisor_of(F, F.z() * F.z()).divisor;
    CHECK(dz + dz == dz2);

    std::mt19937_64 rng(23);
    auto rand_cf = [&]() {
        auto rf = [&]() {
            std::vector<Rational> c(size_t(rng() % 3) + 1);
            for (auto& x : c) x = Rational(long(rng() % 9) - 4);
            return RatFunc(detail::uq_to_mpoly(UPoly<Rational>(std::move(c)), F.vars(), 0));
        };
        return F.make(rf(), rf());
    };
    int done = 0;
    for (int it = 0; it < 40 && done < 12; ++it) {
        CurveField::CF a = rand_cf(), b = rand_cf();
        if (a.is_zero() || b.is_zero()) continue;
        auto da = divisor_of(F, a);
        auto db = divisor_of(da.field, b);
        if (db.field.tower().get() != da.field.tower().get()) continue;  // tower grew mid-pair
        auto dab = divisor_of(db.field, a * b);
        if (dab.field.tower().get() != db.field.tower().get()) continue;
        auto da2 = divisor_of(dab.field, a);
        CHECK(da2.divisor + db.divisor == dab.divisor);
        CHECK(dab.divisor.total_degree() == 0);
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("tower extension on demand: z1 - 2 needs sqrt(11)") {
    const CurveField& F = field();
    RatFunc zm2 = RatFunc(detail::uq_to_mpoly(UPoly<Rational>({Rational(-2), Rational(1)}),
                                              F.vars(), 0));
    auto dr = divisor_of(F, F.from_ratfunc(zm2));
    // f1(2) = 11 is not a rational square: the tower must have grown
    CHECK(tower_level(dr.field.tower()) == tower_level(F.tower()) + 1);
    long zeros = 0;
    for (auto& [p, o] : dr.divisor.entries)
        if (o > 0) {
            CHECK(p.kind == Place::Kind::FiniteSplit);
            zeros += o * p.degree;
        }
    CHECK(zeros == 2);
}

TEST_CASE("claim 3 reproduction: pullback_x(s,r) has 2s^2 simple zeros") {
    const CurveField& F = field();
    for (long s = 1; s <= 2; ++s)
        for (long r = 0; r <= 2; ++r) {
            CurveField::CF f = F.pullback_x(s, r);
            auto dr = divisor_of(F, f);
            long zeros = dr.divisor.zeros_with_multiplicity();
            CHECK(zeros == 2 * s * s);
            for (auto& [p, o] : dr.divisor.entries)
                if (o > 0) CHECK(o == 1);  // all simple
        }
}

TEST_CASE("square detection over the closure") {
    const CurveField& F = field();
    // z1 is not a square: witness at a zero of x
    auto d1 = is_square_over_closure(F, F.z());
    CHECK(!d1.square);
    CHECK(d1.witness->order % 2 != 0);
    // z1^2 is a square
    CHECK(is_square_over_closure(F, F.z() * F.z()).square);
    // pullback_x(1,1): nonsquare with witness at one of its 2 simple zeros
    auto d2 = is_square_over_closure(F, F.pullback_x(1, 1));
    CHECK(!d2.square);
    CHECK(d2.witness->order == 1);

    // f^2 square for random f
    std::mt19937_64 rng(31);
    for (int it = 0; it < 10; ++it) {
        std::vector<Rational> cc(size_t(rng() % 3) + 1), dd(size_t(rng() % 2) + 1);
        for (auto& x : cc) x = Rational(long(rng() % 7) - 3);
        for (auto& x : dd) x = Rational(long(rng() % 7) - 3);
        CurveField::CF f =
            F.make(RatFunc(detail::uq_to_mpoly(UPoly<Rational>(cc), F.vars(), 0)),
                   RatFunc(detail::uq_to_mpoly(UPoly<Rational>(dd), F.vars(), 0)));
        if (f.is_zero()) continue;
        CHECK(is_square_over_closure(F, f * f).square);
    }

    // parity fast path must agree with the divisor path
    auto fast = is_square_over_closure(F, F.pullback_x(2, 1), /*full_divisor_degree_limit=*/0);
    CHECK(!fast.square);
    CHECK(is_square_over_closure(F, F.pullback_x(2, 1)).square == fast.square);
    auto fast_sq = is_square_over_closure(F, F.z() * F.z(), 0);
    CHECK(fast_sq.square);
    auto fast_h = is_square_over_closure(F, F.h(), 0);
    CHECK(!fast_h.square);
}

TEST_CASE("square class independence") {
    const CurveField& F = field();
    // [z1, z1^3]: ratio z1^2 is a square -> not distinct, offending pair (0,1)
    auto r1 = square_classes_distinct(F, {F.z(), F.z() * F.z() * F.z()});
    CHECK(!r1.distinct);
    CHECK(r1.equal_pair == std::pair<size_t, size_t>{0, 1});

    // [x(P), x(2P)] distinct
    auto r2 = square_classes_distinct(F, {F.pullback_x(1, 0), F.pullback_x(2, 0)});
    CHECK(r2.distinct);
    REQUIRE(r2.witnesses.size() == 1);
    CHECK(std::get<2>(r2.witnesses[0]).order % 2 != 0);

    // singleton
    CHECK(square_classes_distinct(F, {F.z()}).distinct);
}
