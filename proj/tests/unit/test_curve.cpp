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

#include <h10/curve.hpp>

#include <random>

using namespace h10;

namespace {
const Rational qa(1), qb(1);
CurvePoint<Rational> gen() { return CurvePoint<Rational>::affine(Rational(0), Rational(1)); }
}  // namespace

TEST_CASE("on_curve examples") {
    CHECK(on_curve(qa, qb, gen()));
    CHECK(on_curve(qa, qb, CurvePoint<Rational>::infinity()));
    CHECK(!on_curve(qa, qb, CurvePoint<Rational>::affine(Rational(1), Rational(1))));
}

TEST_CASE("curve params guardrails") {
    CHECK_THROWS(CurveParams(TElem(Rational(1)), TElem(Rational(0))));
    // 4a^3 + 27b^2 = 0: a = -3, b = 2
    CHECK_THROWS(CurveParams(TElem(Rational(-3)), TElem(Rational(2))));
}

TEST_CASE("small multiples of (0,1) on y^2 = x^3 + x + 1") {
    auto p2 = ec_mul(qa, 2, gen());
    CHECK(p2.x == Rational(BigInt(1), BigInt(4)));
    CHECK(p2.y == Rational(BigInt(-9), BigInt(8)));
    auto p3 = ec_mul(qa, 3, gen());
    CHECK(p3.x == Rational(72));
    CHECK(p3.y == Rational(611));
    // identity case
    auto p = ec_add(qa, gen(), CurvePoint<Rational>::infinity());
    CHECK(!p.inf);
    CHECK(p.x == Rational(0));

    // P + (-P) = O
    CHECK(ec_add(qa, p3, ec_neg(p3)).inf);
}

TEST_CASE("multiples 1..12 of (0,1) are distinct affine curve points") {
    std::vector<CurvePoint<Rational>> pts;
    for (long k = 1; k <= 12; ++k) {
        auto p = ec_mul(qa, k, gen());
        REQUIRE(!p.inf);
        CHECK(on_curve(qa, qb, p));
        for (auto& q : pts) CHECK(!(q.x == p.x && q.y == p.y));
        pts.push_back(p);
    }
}

TEST_CASE("group axioms on random combinations over Q") {
    std::mt19937_64 rng(5);
    auto rand_pt = [&]() { return ec_mul(qa, long(rng() % 9) - 4, gen()); };
    for (int it = 0; it < 200; ++it) {
        auto P = rand_pt(), Q = rand_pt(), R = rand_pt();
        auto lhs = ec_add(qa, ec_add(qa, P, Q), R);
        auto rhs = ec_add(qa, P, ec_add(qa, Q, R));
        CHECK(lhs.inf == rhs.inf);
        if (!lhs.inf) {
            CHECK(lhs.x == rhs.x);
            CHECK(lhs.y == rhs.y);
        }
        CHECK(ec_add(qa, P, ec_neg(P)).inf);
    }
}
