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

#include <h10/mpoly.hpp>
#include <h10/tower.hpp>
#include <h10/upoly.hpp>

#include <random>

using namespace h10;

TEST_CASE("rational basics") {
    Rational a(BigInt(6), BigInt(-4));
    CHECK(a.num() == -3);
    CHECK(a.den() == 2);
    CHECK((a * a.inv()).is_one());
    CHECK(Rational(BigInt(49), BigInt(4)).sqrt_exact().value() == Rational(BigInt(7), BigInt(2)));
    CHECK(!Rational(2).is_square());
    CHECK(!Rational(-4).is_square());
}

TEST_CASE("tower arithmetic and square detection") {
    // Q(i)
    auto Qi = Tower::extend(Tower::rationals(), TElem(Rational(-1)), "i", "");
    TElem i = TElem::top_generator(Qi);
    CHECK((i * i) == TElem(Rational(-1)).lift_to(Qi));
    CHECK((i.inv() * i).is_one());

    // Q(i, sqrt2)
    auto Qi2 = Tower::extend(Qi, TElem(Rational(2)), "r2", "");
    TElem r2 = TElem::top_generator(Qi2);
    CHECK((r2 * r2) == TElem(Rational(2)).lift_to(Qi2));

    // (1+i)^2 = 2i, so 2i is a square in Q(i)
    TElem one_plus_i = TElem::one().lift_to(Qi) + i;
    TElem two_i = one_plus_i * one_plus_i;
    auto s = two_i.sqrt_in_tower();
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == two_i);

    // 2 is not a square in Q(i)
    CHECK(!TElem(Rational(2)).lift_to(Qi).is_square());
    CHECK(!TElem(Rational(2)).lift_to(Qi).nonsquare_reason().empty());
    // but is in Q(i, r2)
    CHECK(TElem(Rational(2)).lift_to(Qi2).is_square());

    // mixed element inverse round-trip
    TElem x = TElem(Rational(3)).lift_to(Qi2) + r2 + i.lift_to(Qi2) * TElem(Rational(2));
    CHECK((x * x.inv()).is_one());

    // extending by a square must fail
    CHECK_THROWS(Tower::extend(Qi, two_i, "bad", ""));
}

TEST_CASE("mpoly arithmetic and canonical rendering") {
    auto vars = VarSet::make({"z1", "z2"});
    MPoly z1 = MPoly::variable(vars, 0);
    MPoly z2 = MPoly::variable(vars, 1);
    MPoly one = MPoly::constant(vars, TElem::one());

    // (z1+1)*(z1-1) = z1^2 - 1
    CHECK((z1 + one) * (z1 - one) == z1 * z1 - one);
    // p + 0 = p
    MPoly p = z1 * z1 * z2 - z2.pow(3) + one;
    CHECK(p + MPoly::zero(vars) == p);

    CHECK(p.degree() == 3);
    CHECK(p.degree_in(0) == 2);
    CHECK(p.degree_in(1) == 3);

    // grlex: z1^2*z2 > z2^3 > 1
    CHECK(p.str() == "z1^2*z2 - z2^3 + 1");
    CHECK(MPoly::parse(vars, p.str()) == p);

    MPoly q = z1.pow(2) - z2.scaled(TElem(Rational(BigInt(1), BigInt(2))));
    CHECK(MPoly::parse(vars, q.str()) == q);
    CHECK(q.str() == "z1^2 - 1/2*z2");

    // substitution
    MPoly r = p.subst(1, z1 + one);  // z2 -> z1+1
    MPoly expect = z1 * z1 * (z1 + one) - (z1 + one).pow(3) + one;
    CHECK(r == expect);
}

TEST_CASE("mpoly ring axioms on random triples") {
    auto vars = VarSet::make({"z1", "z2"});
    std::mt19937_64 rng(42);
    auto rand_poly = [&]() {
        MPoly p(vars);
        int terms = int(rng() % 4) + 1;
        for (int t = 0; t < terms; ++t) {
            ExpVec e{uint32_t(rng() % 4), uint32_t(rng() % 4)};
            long num = long(rng() % 11) - 5;
            long den = long(rng() % 3) + 1;
            p.add_term(e, TElem(Rational(BigInt(num), BigInt(den))));
        }
        return p;
    };
    for (int it = 0; it < 1000; ++it) {
        MPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + (-a)).is_zero());
    }
}

TEST_CASE("upoly divmod and gcd") {
    // (z1^3+z1+1) divmod (z1-1) -> quotient z1^2+z1+2, remainder 3
    UPoly<Rational> f({Rational(1), Rational(1), Rational(0), Rational(1)});
    UPoly<Rational> d({Rational(-1), Rational(1)});
    auto [q, r] = divmod(f, d);
    CHECK(q == UPoly<Rational>({Rational(2), Rational(1), Rational(1)}));
    CHECK(r == UPoly<Rational>::constant(Rational(3)));
    CHECK(q * d + r == f);

    // gcd(z1^2-1, z1-1) = z1-1
    UPoly<Rational> a({Rational(-1), Rational(0), Rational(1)});
    UPoly<Rational> b({Rational(-1), Rational(1)});
    CHECK(upoly_gcd_euclid(a, b) == b.monic());

    // gcd(p, 0) = monic(p)
    CHECK(upoly_gcd_euclid(a.scaled(Rational(3)), UPoly<Rational>()) == a.monic());

    // gcd(z1^4-1, z1^6-1) = z1^2-1
    UPoly<Rational> p4 = UPoly<Rational>::x(4) - UPoly<Rational>::constant(Rational(1));
    UPoly<Rational> p6 = UPoly<Rational>::x(6) - UPoly<Rational>::constant(Rational(1));
    UPoly<Rational> g = upoly_gcd_euclid(p4, p6);
    CHECK(g == UPoly<Rational>({Rational(-1), Rational(0), Rational(1)}));
}

TEST_CASE("squarefree part") {
    // (z1-1)^2 -> z1-1
    UPoly<Rational> lin({Rational(-1), Rational(1)});
    CHECK(upoly_squarefree_part(lin * lin) == lin);
    // z1^2-1 unchanged
    UPoly<Rational> sq({Rational(-1), Rational(0), Rational(1)});
    CHECK(upoly_squarefree_part(sq) == sq);
    // (z1^2+1)^3 (z1-2) -> (z1^2+1)(z1-2)
    UPoly<Rational> c({Rational(1), Rational(0), Rational(1)});
    UPoly<Rational> l({Rational(-2), Rational(1)});
    UPoly<Rational> big = c * c * c * l;
    CHECK(upoly_squarefree_part(big) == (c * l).monic());
    // checkable via gcd(p, p') on the result being constant
    auto res = upoly_squarefree_part(big);
    CHECK(upoly_gcd_euclid(res, res.derivative()).degree() == 0);
}
