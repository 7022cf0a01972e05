#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"

namespace nodal {

/// The fixed variable universe. The first four are the Chern numbers the
/// universal polynomials live in; g is the arithmetic genus symbol used
/// while the BPS inversion is still genus generic.
enum class Var : unsigned { x = 0, y = 1, z = 2, t = 3, g = 4 };

inline constexpr unsigned kNumVars = 5;
inline constexpr std::array<const char*, kNumVars> kVarNames = {"x", "y", "z", "t", "g"};

using Exponents = std::array<uint32_t, kNumVars>;

/// Multivariate polynomial over the fixed 5-variable universe with exact
/// rational coefficients. Zero coefficients are never stored.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;
    MultiPoly(const Rational& c) {  // NOLINT: implicit by design
        if (!c.is_zero()) terms_[Exponents{}] = c;
    }
    MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT

    static MultiPoly variable(Var v) {
        return monomial(exponents_of(v), Rational(1));
    }

    static MultiPoly monomial(const Exponents& e, const Rational& c) {
        MultiPoly p;
        if (!c.is_zero()) p.terms_[e] = c;
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw usage_error("MultiPoly: not a constant");
        return terms_.begin()->second;
    }

    /// Coefficient of the exact monomial e (zero if absent).
    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Coefficient of v^k with all other exponents zero.
    Rational coefficient_of_power(Var v, uint32_t k) const {
        Exponents e{};
        e[static_cast<unsigned>(v)] = k;
        return coefficient(e);
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (auto ei : e) s += static_cast<int>(ei);
            if (s > d) d = s;
        }
        return d;  // -1 for the zero polynomial
    }

    int degree_in(Var v) const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int s = static_cast<int>(e[static_cast<unsigned>(v)]);
            if (s > d) d = s;
        }
        return d;
    }

    MultiPoly operator-() const {
        MultiPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (unsigned i = 0; i < kNumVars; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

    MultiPoly pow(unsigned n) const {
        MultiPoly r(1);
        MultiPoly base = *this;
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Replace variable v by the polynomial p.
    MultiPoly substitute(Var v, const MultiPoly& p) const {
        const unsigned vi = static_cast<unsigned>(v);
        uint32_t maxdeg = 0;
        for (const auto& [e, c] : terms_) maxdeg = std::max(maxdeg, e[vi]);
        std::vector<MultiPoly> pows(maxdeg + 1);
        pows[0] = MultiPoly(1);
        for (uint32_t k = 1; k <= maxdeg; ++k) pows[k] = pows[k - 1] * p;

        MultiPoly r;
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            rest[vi] = 0;
            r += MultiPoly::monomial(rest, c) * pows[e[vi]];
        }
        return r;
    }

    Rational evaluate(const std::array<Rational, kNumVars>& vals) const {
        Rational r(0);
        for (const auto& [e, c] : terms_) {
            Rational term = c;
            for (unsigned i = 0; i < kNumVars; ++i)
                for (uint32_t k = 0; k < e[i]; ++k) term *= vals[i];
            r += term;
        }
        return r;
    }

    /// Human readable form, e.g. "3*x + 2*y + t". Terms are ordered by
    /// total degree descending, then by exponent vector.
    std::string to_pretty_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Exponents, Rational>> ts(terms_.begin(), terms_.end());
        std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
            int da = 0, db = 0;
            for (auto e : a.first) da += static_cast<int>(e);
            for (auto e : b.first) db += static_cast<int>(e);
            if (da != db) return da > db;
            return a.first > b.first;
        });
        std::string out;
        bool first = true;
        for (const auto& [e, c] : ts) {
            Rational mag = c.sign() < 0 ? -c : c;
            if (first) {
                if (c.sign() < 0) out += "-";
                first = false;
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            std::string vars;
            for (unsigned i = 0; i < kNumVars; ++i) {
                if (e[i] == 0) continue;
                if (!vars.empty()) vars += "*";
                vars += kVarNames[i];
                if (e[i] > 1) vars += "^" + std::to_string(e[i]);
            }
            if (vars.empty()) {
                out += mag.to_string();
            } else if (mag == Rational(1)) {
                out += vars;
            } else {
                out += mag.to_string() + "*" + vars;
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
        return os << p.to_pretty_string();
    }

private:
    static Exponents exponents_of(Var v) {
        Exponents e{};
        e[static_cast<unsigned>(v)] = 1;
        return e;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TermMap terms_;
};

inline MultiPoly var_x() { return MultiPoly::variable(Var::x); }
inline MultiPoly var_y() { return MultiPoly::variable(Var::y); }
inline MultiPoly var_z() { return MultiPoly::variable(Var::z); }
inline MultiPoly var_t() { return MultiPoly::variable(Var::t); }
inline MultiPoly var_g() { return MultiPoly::variable(Var::g); }

/// The genus substitution g = 1 + (x + y)/2.
inline MultiPoly genus_in_chern_numbers() {
    return MultiPoly(1) + (var_x() + var_y()) * Rational(1, 2);
}

} // namespace nodal
