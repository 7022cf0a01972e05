#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/rational.hpp"

namespace nodal {

/// Ring operations the series engine needs from its coefficient type.
/// Shapes (the variable/order of nested series) are always copied from an
/// existing element, so rings with runtime shape work transparently.
template <typename R>
struct ring_traits {
    static bool is_zero(const R& a) { return a.is_zero(); }
    static R zero_like(const R&) { return R(); }
    static R one_like(const R&) { return R(1); }
    static R invert(const R& a);
};

template <>
inline Rational ring_traits<Rational>::invert(const Rational& a) {
    return a.inverse();
}

template <>
inline MultiPoly ring_traits<MultiPoly>::invert(const MultiPoly& a) {
    if (!a.is_constant() || a.is_zero())
        throw singular_input_error("MultiPoly: only nonzero constants are invertible");
    return MultiPoly(a.constant_value().inverse());
}

/// Power series in one formal variable, truncated at a fixed order N.
/// Coefficients for exponents 0..N are stored densely; every operation
/// re-truncates at N. The coefficient ring R is pluggable.
template <typename R>
class TruncSeries {
public:
    TruncSeries() = default;

    TruncSeries(std::string var, std::size_t order, std::vector<R> coeffs)
        : var_(std::move(var)), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != order + 1)
            throw usage_error("TruncSeries: coefficient count must be order+1");
    }

    /// Series with all coefficients equal to zero_like(model).
    static TruncSeries zeros(const std::string& var, std::size_t order, const R& model) {
        return TruncSeries(var, order, std::vector<R>(order + 1, ring_traits<R>::zero_like(model)));
    }

    static TruncSeries constant(const std::string& var, std::size_t order, const R& value) {
        TruncSeries s = zeros(var, order, value);
        s.coeffs_[0] = value;
        return s;
    }

    /// c * q^k (zero series if k exceeds the order).
    static TruncSeries monomial(const std::string& var, std::size_t order, std::size_t k,
                                const R& c) {
        TruncSeries s = zeros(var, order, c);
        if (k <= order) s.coeffs_[k] = c;
        return s;
    }

    const std::string& variable() const { return var_; }
    std::size_t order() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

    const R& coefficient(std::size_t k) const {
        if (k >= coeffs_.size()) throw usage_error("TruncSeries: coefficient index beyond order");
        return coeffs_[k];
    }
    R& coefficient(std::size_t k) {
        if (k >= coeffs_.size()) throw usage_error("TruncSeries: coefficient index beyond order");
        return coeffs_[k];
    }
    const std::vector<R>& coefficients() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!ring_traits<R>::is_zero(c)) return false;
        return true;
    }

    TruncSeries truncate(std::size_t new_order) const {
        if (new_order > order()) throw usage_error("TruncSeries: cannot extend truncation order");
        return TruncSeries(var_, new_order,
                           std::vector<R>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (auto& c : r.coeffs_) c = ring_traits<R>::zero_like(c) - c;
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    /// Cauchy product truncated at the common order.
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        const std::size_t n = a.order();
        TruncSeries r = zeros(a.var_, n, a.coeffs_[0]);
        for (std::size_t i = 0; i <= n; ++i) {
            if (ring_traits<R>::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; i + j <= n; ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries& operator*=(const R& c) {
        for (auto& v : coeffs_) v = v * c;
        return *this;
    }
    friend TruncSeries operator*(TruncSeries a, const R& c) { return a *= c; }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.var_ != b.var_ || a.coeffs_.size() != b.coeffs_.size()) return false;
        for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
            if (!ring_traits<R>::is_zero(a.coeffs_[k] - b.coeffs_[k])) return false;
        }
        return true;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
        os << "[";
        for (std::size_t k = 0; k < s.coeffs_.size(); ++k) {
            if (k) os << ", ";
            os << s.coeffs_[k];
        }
        return os << "] (" << s.var_ << "^0.." << s.var_ << "^" << s.order() << ")";
    }

private:
    void check_compatible(const TruncSeries& o) const {
        if (var_ != o.var_ || coeffs_.size() != o.coeffs_.size())
            throw usage_error("TruncSeries: mismatched variable or order");
    }

    std::string var_;
    std::vector<R> coeffs_;
};

/// Multiplicative inverse: requires the constant term to be a unit.
template <typename R>
TruncSeries<R> series_invert(const TruncSeries<R>& a) {
    const std::size_t n = a.order();
    R inv0 = ring_traits<R>::invert(a.coefficient(0));
    TruncSeries<R> b = TruncSeries<R>::zeros(a.variable(), n, inv0);
    b.coefficient(0) = inv0;
    for (std::size_t k = 1; k <= n; ++k) {
        R acc = ring_traits<R>::zero_like(inv0);
        for (std::size_t i = 1; i <= k; ++i) acc += a.coefficient(i) * b.coefficient(k - i);
        b.coefficient(k) = ring_traits<R>::zero_like(inv0) - inv0 * acc;
    }
    return b;
}

template <typename R>
struct ring_traits<TruncSeries<R>> {
    static bool is_zero(const TruncSeries<R>& a) { return a.is_zero(); }
    static TruncSeries<R> zero_like(const TruncSeries<R>& a) {
        return TruncSeries<R>::zeros(a.variable(), a.order(), a.coefficient(0));
    }
    static TruncSeries<R> one_like(const TruncSeries<R>& a) {
        return TruncSeries<R>::constant(a.variable(), a.order(),
                                        ring_traits<R>::one_like(a.coefficient(0)));
    }
    static TruncSeries<R> invert(const TruncSeries<R>& a) { return series_invert(a); }
};

/// a(inner(q)) truncated at the common order. inner must have zero
/// constant term so the composition is well defined order by order.
template <typename R>
TruncSeries<R> series_compose(const TruncSeries<R>& a, const TruncSeries<R>& inner) {
    if (a.variable() != inner.variable() || a.order() != inner.order())
        throw usage_error("series_compose: mismatched variable or order");
    if (!ring_traits<R>::is_zero(inner.coefficient(0)))
        throw usage_error("series_compose: inner series must have zero constant term");
    const std::size_t n = a.order();
    // Horner from the top coefficient down.
    TruncSeries<R> r = TruncSeries<R>::constant(a.variable(), n, a.coefficient(n));
    for (std::size_t k = n; k-- > 0;) {
        r = r * inner;
        r.coefficient(0) += a.coefficient(k);
    }
    return r;
}

/// Compositional inverse: a must have zero constant term and unit linear
/// coefficient. Returns r with a(r(q)) = q through the truncation order.
template <typename R>
TruncSeries<R> series_reversion(const TruncSeries<R>& a) {
    const std::size_t n = a.order();
    if (!ring_traits<R>::is_zero(a.coefficient(0)))
        throw usage_error("series_reversion: constant term must be zero");
    if (n < 1) throw usage_error("series_reversion: order must be at least 1");
    R inv1 = ring_traits<R>::invert(a.coefficient(1));  // throws if not a unit

    TruncSeries<R> r = TruncSeries<R>::zeros(a.variable(), n, inv1);
    r.coefficient(1) = inv1;
    // Solve coefficient by coefficient: with r known through order m, the
    // expansion of a(r(q)) is correct through order m and the q^{m+1}
    // defect is removed by adjusting r's next coefficient.
    for (std::size_t m = 1; m < n; ++m) {
        TruncSeries<R> err = series_compose(a, r);
        r.coefficient(m + 1) -= inv1 * err.coefficient(m + 1);
    }
    return r;
}

/// Series for (1-q)^(a*g+b) with symbolic g, truncated at `order`:
/// exp((a*g+b)*log(1-q)) computed over polynomial coefficients.
inline TruncSeries<MultiPoly> binom_symbolic(int a, int b, std::size_t order) {
    const std::string q = "q";
    const MultiPoly exponent = MultiPoly(Rational(a)) * var_g() + MultiPoly(Rational(b));
    // log(1-q) = -sum_{k>=1} q^k/k
    TruncSeries<MultiPoly> lg = TruncSeries<MultiPoly>::zeros(q, order, MultiPoly());
    for (std::size_t k = 1; k <= order; ++k)
        lg.coefficient(k) = MultiPoly(Rational(-1, static_cast<long long>(k)));
    lg *= exponent;
    // exp of a series with zero constant term
    TruncSeries<MultiPoly> result = TruncSeries<MultiPoly>::constant(q, order, MultiPoly(1));
    TruncSeries<MultiPoly> power = result;
    Rational inv_fact(1);
    for (std::size_t m = 1; m <= order; ++m) {
        power *= lg;
        inv_fact *= Rational(1, static_cast<long long>(m));
        TruncSeries<MultiPoly> term = power;
        term *= MultiPoly(inv_fact);
        result += term;
    }
    return result;
}

} // namespace nodal
