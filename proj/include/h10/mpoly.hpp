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

#include <h10/tower.hpp>

#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace h10 {

/// Ordered variable universe. Index 0 is the highest-priority variable;
/// the canonical order everywhere is graded lexicographic with
/// z1 > z2 > compiler-generated auxiliaries (in creation order).
class VarSet {
  public:
    static std::shared_ptr<const VarSet> make(std::vector<std::string> names) {
        return std::shared_ptr<const VarSet>(new VarSet(std::move(names)));
    }
    size_t size() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int index_of(const std::string& n) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return int(i);
        return -1;
    }
    std::shared_ptr<const VarSet> extended(const std::string& n) const {
        auto names = names_;
        names.push_back(n);
        return make(std::move(names));
    }

  private:
    explicit VarSet(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using VarSetRef = std::shared_ptr<const VarSet>;

using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), uint32_t(0));
}

// graded lex, descending: leading term iterates first
struct GrlexDesc {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

/// Sparse multivariate polynomial over a constant-field tower.
class MPoly {
  public:
    using TermMap = std::map<ExpVec, TElem, GrlexDesc>;

    MPoly() : vars_(VarSet::make({})) {}
    explicit MPoly(VarSetRef vars) : vars_(std::move(vars)) {}
    MPoly(VarSetRef vars, const TElem& c) : vars_(std::move(vars)) {
        if (!c.is_zero()) terms_[ExpVec(vars_->size(), 0)] = c;
    }

    static MPoly zero(VarSetRef vars) { return MPoly(std::move(vars)); }
    static MPoly constant(VarSetRef vars, const TElem& c) { return MPoly(std::move(vars), c); }
    static MPoly variable(VarSetRef vars, size_t i, uint32_t e = 1) {
        MPoly p(vars);
        ExpVec ev(vars->size(), 0);
        ev[i] = e;
        p.terms_[ev] = TElem::one();
        return p;
    }

    const VarSetRef& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }
    TElem constant_value() const {
        if (terms_.empty()) return TElem::zero();
        return terms_.begin()->second;
    }
    size_t term_count() const { return terms_.size(); }

    uint32_t degree() const {  // total degree, zero poly -> 0
        return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
    }
    uint32_t degree_in(size_t var) const {
        uint32_t d = 0;
        for (auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    uint32_t trailing_degree_in(size_t var) const {  // min exponent of var
        if (terms_.empty()) return 0;
        uint32_t d = UINT32_MAX;
        for (auto& [e, c] : terms_) d = std::min(d, e[var]);
        return d;
    }
    bool depends_on(size_t var) const { return degree_in(var) > 0; }
    bool is_univariate_in(size_t var) const {
        for (auto& [e, c] : terms_)
            for (size_t i = 0; i < e.size(); ++i)
                if (i != var && e[i] != 0) return false;
        return true;
    }

    // leading term under grlex
    const ExpVec& lead_exp() const {
        if (terms_.empty()) throw std::domain_error("MPoly: leading term of zero");
        return terms_.begin()->first;
    }
    const TElem& lead_coeff() const {
        if (terms_.empty()) throw std::domain_error("MPoly: leading coeff of zero");
        return terms_.begin()->second;
    }

    void add_term(const ExpVec& e, const TElem& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MPoly operator-() const {
        MPoly r(vars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        check_vars(a, b);
        MPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) {
        check_vars(a, b);
        MPoly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        check_vars(a, b);
        MPoly r(a.vars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                ExpVec e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
    MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
    MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

    MPoly scaled(const TElem& c) const {
        MPoly r(vars_);
        if (c.is_zero()) return r;
        for (auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }

    bool operator==(const MPoly& o) const { return (*this - o).is_zero(); }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(uint32_t e) const {
        MPoly acc = constant(vars_, TElem::one()), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /// Monomial exact division of every term by the given term; throws if
    /// any term is not divisible.
    MPoly divide_monomial(const ExpVec& e, const TElem& c) const {
        MPoly r(vars_);
        for (auto& [te, tc] : terms_) {
            ExpVec q(te);
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] < e[i]) throw std::domain_error("MPoly: monomial division fails");
                q[i] -= e[i];
            }
            r.terms_.emplace(q, tc / c);
        }
        return r;
    }

    /// Exact multivariate division: returns quotient iff divisor divides
    /// this polynomial exactly.
    std::optional<MPoly> divided_exact(const MPoly& d) const {
        check_vars(*this, d);
        if (d.is_zero()) throw std::domain_error("MPoly: division by zero");
        MPoly rem = *this, q(vars_);
        const ExpVec& de = d.lead_exp();
        const TElem& dc = d.lead_coeff();
        while (!rem.is_zero()) {
            const ExpVec& re = rem.lead_exp();
            ExpVec qe(re);
            bool ok = true;
            for (size_t i = 0; i < qe.size(); ++i) {
                if (qe[i] < de[i]) { ok = false; break; }
                qe[i] -= de[i];
            }
            if (!ok) return std::nullopt;
            TElem qc = rem.lead_coeff() / dc;
            MPoly t(vars_);
            t.terms_.emplace(qe, qc);
            q += t;
            rem -= t * d;
        }
        return q;
    }

    MPoly derivative(size_t var) const {
        MPoly r(vars_);
        for (auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            ExpVec d(e);
            d[var] -= 1;
            r.add_term(d, c * TElem(Rational(long(e[var]))));
        }
        return r;
    }

    /// View as univariate in `var`: exponent -> coefficient polynomial in
    /// the remaining variables (same universe, exponent of `var` zeroed).
    std::map<uint32_t, MPoly> coeffs_in(size_t var) const {
        std::map<uint32_t, MPoly> r;
        for (auto& [e, c] : terms_) {
            ExpVec rest(e);
            uint32_t d = rest[var];
            rest[var] = 0;
            auto it = r.find(d);
            if (it == r.end()) it = r.emplace(d, MPoly(vars_)).first;
            it->second.add_term(rest, c);
        }
        return r;
    }

    MPoly coeff_of(size_t var, uint32_t e) const {
        MPoly r(vars_);
        for (auto& [ev, c] : terms_) {
            if (ev[var] != e) continue;
            ExpVec rest(ev);
            rest[var] = 0;
            r.add_term(rest, c);
        }
        return r;
    }

    /// Substitute variables by values in a commutative ring R (needs +,*,
    /// R(long) one/zero semantics via the supplied maker).
    template <class R>
    R eval(const std::vector<R>& values, const R& zero, const R& one,
           const std::function<R(const TElem&)>& lift) const {
        R acc = zero;
        for (auto& [e, c] : terms_) {
            R t = lift(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (uint32_t k = 0; k < e[i]; ++k) t = t * values[i];
            acc = acc + t;
        }
        (void)one;
        return acc;
    }

    /// Substitute a single variable by a polynomial (same universe).
    MPoly subst(size_t var, const MPoly& value) const {
        check_vars(*this, value);
        auto by_deg = coeffs_in(var);
        // Horner from the highest exponent down
        MPoly acc(vars_);
        uint32_t prev = 0;
        bool first = true;
        for (auto it = by_deg.rbegin(); it != by_deg.rend(); ++it) {
            if (first) {
                acc = it->second;
                prev = it->first;
                first = false;
                continue;
            }
            uint32_t gap = prev - it->first;
            for (uint32_t k = 0; k < gap; ++k) acc *= value;
            acc += it->second;
            prev = it->first;
        }
        if (first) return MPoly(vars_);
        for (uint32_t k = 0; k < prev; ++k) acc *= value;
        return acc;
    }

    /// Map this polynomial into a larger variable universe (positions given
    /// by name lookup).
    MPoly reindexed(const VarSetRef& target) const {
        std::vector<int> pos(vars_->size());
        for (size_t i = 0; i < vars_->size(); ++i) {
            pos[i] = target->index_of(vars_->name(i));
            if (pos[i] < 0) throw std::domain_error("MPoly: variable missing in target universe");
        }
        MPoly r(target);
        for (auto& [e, c] : terms_) {
            ExpVec t(target->size(), 0);
            for (size_t i = 0; i < e.size(); ++i) t[size_t(pos[i])] = e[i];
            r.add_term(t, c);
        }
        return r;
    }

    std::string str() const;
    static MPoly parse(const VarSetRef& vars, const std::string& text,
                       const TowerRef& tower = nullptr);

  private:
    static void check_vars(const MPoly& a, const MPoly& b) {
        if (a.vars_.get() != b.vars_.get() && a.vars_->names() != b.vars_->names())
            throw std::domain_error("MPoly: variable universe mismatch");
    }

    VarSetRef vars_;
    TermMap terms_;
};

inline std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_->name(i);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coeff;
        bool neg = false;
        if (c.is_rational()) {
            Rational r = c.rational_part();
            neg = r.sign() < 0;
            Rational a = neg ? -r : r;
            coeff = (a.is_one() && !mono.empty()) ? "" : a.str();
        } else {
            coeff = "(" + c.str() + ")";
        }
        std::string term = coeff;
        if (!mono.empty()) {
            if (!term.empty()) term += "*";
            term += mono;
        }
        if (first) {
            out = (neg ? "-" : "") + term;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + term;
        }
    }
    return out;
}

namespace detail {

// minimal recursive-descent parser for the canonical rendering
struct PolyParser {
    const std::string& s;
    size_t i = 0;
    const VarSetRef& vars;
    TowerRef tower;

    void skip() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("poly parse error at position " + std::to_string(i) + ": " + msg);
    }

    MPoly parse_sum() {
        MPoly acc = parse_term(true);
        while (true) {
            skip();
            if (i >= s.size()) break;
            if (s[i] == '+') { ++i; acc += parse_term(false); }
            else if (s[i] == '-') { ++i; acc -= parse_term(false); }
            else break;
        }
        return acc;
    }

    MPoly parse_term(bool allow_sign) {
        skip();
        bool neg = false;
        if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) {
            neg = s[i] == '-';
            ++i;
        }
        MPoly acc = parse_factor();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '*') { ++i; acc *= parse_factor(); }
            else break;
        }
        return neg ? -acc : acc;
    }

    MPoly parse_factor() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        MPoly base(vars);
        if (s[i] == '(') {
            ++i;
            base = parse_sum();
            if (!eat(')')) fail("expected ')'");
        } else if (std::isdigit((unsigned char)s[i])) {
            size_t j = i;
            while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
            base = MPoly::constant(vars, TElem(Rational::from_string(s.substr(i, j - i))));
            i = j;
        } else if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            int vi = vars->index_of(name);
            if (vi >= 0) {
                base = MPoly::variable(vars, size_t(vi));
            } else {
                base = MPoly::constant(vars, tower_generator_by_name(name));
            }
        } else {
            fail("unexpected character");
        }
        skip();
        if (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) fail("expected exponent");
            base = base.pow(uint32_t(std::stoul(s.substr(i, j - i))));
            i = j;
        }
        return base;
    }

    TElem tower_generator_by_name(const std::string& name) {
        TowerRef cur = tower;
        while (cur) {
            if (cur->gen_name() == name) {
                return TElem::top_generator(cur).lift_to(tower);
            }
            cur = cur->below();
        }
        fail("unknown symbol '" + name + "'");
    }
};

}  // namespace detail

inline MPoly MPoly::parse(const VarSetRef& vars, const std::string& text, const TowerRef& tower) {
    detail::PolyParser p{text, 0, vars, tower};
    MPoly r = p.parse_sum();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace h10
