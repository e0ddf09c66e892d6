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

#include <h10/factor.hpp>

#include <random>

using namespace h10;

namespace {

UPoly<Rational> qp(std::vector<long> c) {
    std::vector<Rational> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = Rational(c[i]);
    return UPoly<Rational>(std::move(r));
}

UPoly<Rational> reassemble(const QFactorization& f) {
    UPoly<Rational> acc = UPoly<Rational>::constant(f.unit);
    for (auto& [g, m] : f.factors)
        for (int i = 0; i < m; ++i) acc *= g;
    return acc;
}

}  // namespace

TEST_CASE("modular gcd agrees with euclid") {
    std::mt19937_64 rng(7);
    auto rand_poly = [&](int deg) {
        std::vector<Rational> c(size_t(deg) + 1);
        for (auto& x : c) x = Rational(long(rng() % 21) - 10);
        return UPoly<Rational>(std::move(c));
    };
    for (int it = 0; it < 30; ++it) {
        UPoly<Rational> g = rand_poly(3);
        UPoly<Rational> a = rand_poly(5) * g, b = rand_poly(4) * g;
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(qpoly_gcd(a, b) == upoly_gcd_euclid(a, b));
    }
}

TEST_CASE("factor over Q: spec examples") {
    // z1^2 - 1 -> (z1-1)(z1+1)
    auto f1 = factor_rational(qp({-1, 0, 1}));
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0].first.degree() == 1);
    CHECK(f1.factors[1].first.degree() == 1);
    CHECK(reassemble(f1) == qp({-1, 0, 1}));

    // z1^3 + z1 + 1 irreducible over Q
    auto f2 = factor_rational(qp({1, 1, 0, 1}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].first.degree() == 3);
    CHECK(f2.factors[0].second == 1);
}

TEST_CASE("factor over Q: products with multiplicities and bigger degrees") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 8; ++it) {
        UPoly<Rational> a = qp({long(rng() % 9) - 4, 1});
        UPoly<Rational> b = qp({long(rng() % 5) + 1, long(rng() % 7) - 3, 1});
        UPoly<Rational> c = qp({1, 0, 0, long(rng() % 5) - 2, 1});
        UPoly<Rational> f = a * a * b * c;
        auto fac = factor_rational(f);
        CHECK(reassemble(fac) == f);
        int total = 0;
        for (auto& [g, m] : fac.factors) {
            total += g.degree() * m;
            CHECK(upoly_gcd_euclid(g, g.derivative()).degree() == 0);
        }
        CHECK(total == f.degree());
    }
    // degree bound
    CHECK_THROWS_AS(factor_rational(UPoly<Rational>::x(70)), DegreeBoundExceeded);
}

TEST_CASE("factor over Q(i): z1^2+1 splits") {
    auto Qi = Tower::extend(Tower::rationals(), TElem(Rational(-1)), "i", "");
    UPoly<TElem> f{TElem::one().lift_to(Qi), TElem::zero().lift_to(Qi), TElem::one().lift_to(Qi)};
    auto fac = factor_tower(f, Qi);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first.degree() == 1);
    CHECK(fac[1].first.degree() == 1);
    UPoly<TElem> prod = fac[0].first * fac[1].first;
    CHECK(prod == f);
    // roots are +-i
    TElem i = TElem::top_generator(Qi);
    TElem r0 = -fac[0].first.constant_term();
    CHECK((r0 == i || r0 == -i));
}

TEST_CASE("factor over tower of degree 4") {
    auto Q2 = Tower::extend(Tower::rationals(), TElem(Rational(2)), "r2", "");
    auto Q23 = Tower::extend(Q2, TElem(Rational(3)), "r3", "");
    // x^4 - 10x^2 + 1 = minpoly of r2+r3, splits into linears over Q(r2,r3)
    UPoly<TElem> f{TElem(Rational(1)).lift_to(Q23), TElem::zero().lift_to(Q23),
                   TElem(Rational(-10)).lift_to(Q23), TElem::zero().lift_to(Q23),
                   TElem(Rational(1)).lift_to(Q23)};
    auto fac = factor_tower(f, Q23);
    REQUIRE(fac.size() == 4);
    UPoly<TElem> prod = UPoly<TElem>::constant(TElem::one().lift_to(Q23));
    for (auto& [g, m] : fac) {
        CHECK(g.degree() == 1);
        CHECK(m == 1);
        prod *= g;
    }
    CHECK(prod == f);
}
