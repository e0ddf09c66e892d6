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

#include <h10/ratfunc.hpp>

namespace h10 {

/// Quadratic ring extension K[h]/(h^2 - m): elements a + b*h. A field
/// whenever m is a non-square in K; inversion goes through the conjugate.
template <class K>
class QuadExt {
  public:
    struct Ctx {
        K modulus;  // h^2 reduces to this
        std::string sym;
    };
    using CtxRef = std::shared_ptr<const Ctx>;

    QuadExt() = default;
    QuadExt(CtxRef ctx, K a, K b) : ctx_(std::move(ctx)), a_(std::move(a)), b_(std::move(b)) {}

    static CtxRef make_ctx(K modulus, std::string sym) {
        return std::make_shared<const Ctx>(Ctx{std::move(modulus), std::move(sym)});
    }
    static QuadExt from_base(CtxRef ctx, K a) {
        K z = a - a;  // zero of the right shape
        return QuadExt(std::move(ctx), std::move(a), std::move(z));
    }
    static QuadExt gen(CtxRef ctx) {
        K one = ctx->modulus.fld_one();
        K z = one - one;
        return QuadExt(std::move(ctx), z, one);
    }

    const CtxRef& ctx() const { return ctx_; }
    const K& re() const { return a_; }  // coefficient of 1
    const K& im() const { return b_; }  // coefficient of h

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool in_base() const { return b_.is_zero(); }
    QuadExt fld_one() const { return from_base(ctx_, a_.fld_one()); }

    QuadExt conj() const { return QuadExt(ctx_, a_, -b_); }
    K norm() const { return a_ * a_ - b_ * b_ * ctx_->modulus; }

    QuadExt operator-() const { return QuadExt(ctx_, -a_, -b_); }
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.ctx_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.ctx_, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return QuadExt(x.ctx_, x.a_ * y.a_ + x.b_ * y.b_ * x.ctx_->modulus,
                       x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inv(); }
    QuadExt& operator+=(const QuadExt& o) { *this = *this + o; return *this; }
    QuadExt& operator-=(const QuadExt& o) { *this = *this - o; return *this; }
    QuadExt& operator*=(const QuadExt& o) { *this = *this * o; return *this; }

    bool operator==(const QuadExt& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const QuadExt& o) const { return !(*this == o); }

    QuadExt inv() const {
        if (is_zero()) throw std::domain_error("QuadExt: inverse of zero");
        K n = norm();
        if (n.is_zero()) throw std::domain_error("QuadExt: norm vanishes (modulus is a square?)");
        K ninv = n.fld_one() / n;
        return QuadExt(ctx_, a_ * ninv, -(b_ * ninv));
    }

    QuadExt pow(long e) const {
        if (e < 0) return inv().pow(-e);
        QuadExt acc = fld_one(), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const {
        std::string out = a_.str();
        if (!b_.is_zero()) out += " + (" + b_.str() + ")*" + ctx_->sym;
        return out;
    }

  private:
    CtxRef ctx_;
    K a_, b_;
};

}  // namespace h10
