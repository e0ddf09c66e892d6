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

#include <h10/quadext.hpp>

namespace h10 {

/// Parameters of E: y^2 = x^3 + a x + b over the constant tower.
/// b != 0 and the discriminant -16(4a^3+27b^2) != 0 are enforced.
struct CurveParams {
    TElem a, b;

    CurveParams() : a(Rational(1)), b(Rational(1)) {}
    CurveParams(TElem a_, TElem b_) : a(std::move(a_)), b(std::move(b_)) {
        if (b.is_zero()) throw std::domain_error("CurveParams: b must be nonzero");
        TElem four(Rational(4)), twenty7(Rational(27));
        TElem disc = four * a * a * a + twenty7 * b * b;
        if (disc.is_zero()) throw std::domain_error("CurveParams: singular curve");
    }
};

struct ExceptionalPoint : std::runtime_error {
    explicit ExceptionalPoint(const std::string& m) : std::runtime_error(m) {}
};

/// Point of E over an arbitrary coefficient field F. Infinity is an explicit
/// tag, never encoded through coordinates.
template <class F>
struct CurvePoint {
    bool inf = true;
    F x{}, y{};

    static CurvePoint infinity() { return CurvePoint{}; }
    static CurvePoint affine(F px, F py) { return CurvePoint{false, std::move(px), std::move(py)}; }
};

template <class F>
bool on_curve(const F& a, const F& b, const CurvePoint<F>& P) {
    if (P.inf) return true;
    return P.y * P.y == P.x * P.x * P.x + a * P.x + b;
}

template <class F>
CurvePoint<F> ec_neg(const CurvePoint<F>& P) {
    if (P.inf) return P;
    return CurvePoint<F>::affine(P.x, -P.y);
}

/// Chord-and-tangent addition. Degenerate chords are rerouted to the
/// doubling and inverse cases, so no division by zero escapes.
template <class F>
CurvePoint<F> ec_add(const F& a, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    F lambda{};
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return CurvePoint<F>::infinity();
        // tangent: (3x^2 + a) / (2y)
        F one = P.x.fld_one();
        F three = one + one + one;
        F two = one + one;
        lambda = (three * P.x * P.x + a) / (two * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    F x3 = lambda * lambda - P.x - Q.x;
    F y3 = lambda * (P.x - x3) - P.y;
    return CurvePoint<F>::affine(std::move(x3), std::move(y3));
}

template <class F>
CurvePoint<F> ec_sub(const F& a, const CurvePoint<F>& P, const CurvePoint<F>& Q) {
    return ec_add(a, P, ec_neg(Q));
}

// double-and-add
template <class F>
CurvePoint<F> ec_mul(const F& a, long n, const CurvePoint<F>& P) {
    if (n == 0 || P.inf) return CurvePoint<F>::infinity();
    CurvePoint<F> base = n < 0 ? ec_neg(P) : P;
    unsigned long k = n < 0 ? (unsigned long)(-n) : (unsigned long)n;
    CurvePoint<F> acc = CurvePoint<F>::infinity();
    while (k > 0) {
        if (k & 1) acc = ec_add(a, acc, base);
        k >>= 1;
        if (k) base = ec_add(a, base, base);
    }
    return acc;
}

// convenience for fields whose elements can be built from the tower constants
template <class F>
CurvePoint<F> ec_mul_sum(const F& a, long n, const CurvePoint<F>& P, long r,
                         const CurvePoint<F>& Q) {
    return ec_add(a, ec_mul(a, n, P), ec_mul(a, r, Q));
}

}  // namespace h10
