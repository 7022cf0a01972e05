#pragma once

#include <vector>

#include "nodal/errors.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/rational.hpp"
#include "nodal/trunc_series.hpp"

namespace nodal {

/// Series for (1-q)^E with an arbitrary polynomial exponent E, truncated
/// at `order`: exp(E * log(1-q)).
inline TruncSeries<MultiPoly> one_minus_q_pow(const MultiPoly& exponent, std::size_t order) {
    TruncSeries<MultiPoly> lg = TruncSeries<MultiPoly>::zeros("q", order, MultiPoly());
    for (std::size_t k = 1; k <= order; ++k)
        lg.coefficient(k) = MultiPoly(Rational(-1, static_cast<long long>(k)));
    lg *= exponent;
    TruncSeries<MultiPoly> result = TruncSeries<MultiPoly>::constant("q", order, MultiPoly(1));
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

/// Euler characteristic of Sym^k of a smooth curve of genus r, as the
/// coefficient [q^k](1-q)^{2r-2}. Exact in r: returns a polynomial of
/// degree k in the genus when r is symbolic.
inline MultiPoly sym_euler(int k, const MultiPoly& genus) {
    if (k < 0) return MultiPoly();
    MultiPoly m = MultiPoly(2) * genus - MultiPoly(2);
    MultiPoly prod(1);
    for (int j = 0; j < k; ++j) prod *= (m - MultiPoly(j));
    Rational scale(BigInt((k % 2 == 0) ? 1 : -1), factorial(static_cast<unsigned>(k)));
    return prod * scale;
}

/// Euler characteristics e_0..e_delta of the Hilbert schemes of points,
/// either of a single curve or of the relative Hilbert scheme over a
/// delta-dimensional linear system. For a single curve e_0 = 1; for a
/// delta-dimensional system e_0 = delta + 1.
struct EulerSeries {
    int delta = 0;
    MultiPoly genus;            // the symbol g, or a concrete constant
    std::vector<MultiPoly> e;   // size delta + 1

    EulerSeries(int d, MultiPoly g_, std::vector<MultiPoly> values)
        : delta(d), genus(std::move(g_)), e(std::move(values)) {
        if (delta < 0 || e.size() != static_cast<std::size_t>(delta) + 1)
            throw usage_error("EulerSeries: need exactly delta+1 values e_0..e_delta");
    }
};

/// The finite spectrum n_{g-s}, s = 0..delta, extracted from an
/// EulerSeries. entry(s) is the multiplicity attached to genus g-s.
struct BPSSpectrum {
    int delta = 0;
    std::vector<MultiPoly> entries;  // entries[s] = n_{g-s}

    const MultiPoly& entry(int s) const { return entries.at(static_cast<std::size_t>(s)); }
};

/// Re-expansion of a spectrum into Euler characteristics through q^order:
/// e_k = [q^k] sum_s n_{g-s} q^s (1-q)^{2(g-s)-2}. Computed with the
/// series engine, independently of the closed form used by sym_euler.
inline std::vector<MultiPoly> spectrum_to_euler(const BPSSpectrum& sp, const MultiPoly& genus,
                                                std::size_t order) {
    TruncSeries<MultiPoly> acc = TruncSeries<MultiPoly>::zeros("q", order, MultiPoly());
    for (int s = 0; s <= sp.delta; ++s) {
        if (static_cast<std::size_t>(s) > order) break;
        MultiPoly expnt = MultiPoly(2) * (genus - MultiPoly(s)) - MultiPoly(2);
        TruncSeries<MultiPoly> piece = one_minus_q_pow(expnt, order);
        TruncSeries<MultiPoly> shifted = TruncSeries<MultiPoly>::zeros("q", order, MultiPoly());
        for (std::size_t k = static_cast<std::size_t>(s); k <= order; ++k)
            shifted.coefficient(k) = piece.coefficient(k - s);
        shifted *= sp.entry(s);
        acc += shifted;
    }
    std::vector<MultiPoly> out;
    for (std::size_t k = 0; k <= order; ++k) out.push_back(acc.coefficient(k));
    return out;
}

namespace detail {

/// Inductive inversion: n_{g-r} = e_r - sum_{s<r} n_{g-s} e(Sym^{r-s} of
/// genus g-s), with n_g = e_0 matching the leading coefficient.
inline std::vector<MultiPoly> bps_by_recursion(const EulerSeries& in) {
    std::vector<MultiPoly> n;
    n.reserve(in.e.size());
    for (int r = 0; r <= in.delta; ++r) {
        MultiPoly v = in.e[static_cast<std::size_t>(r)];
        for (int s = 0; s < r; ++s)
            v -= n[static_cast<std::size_t>(s)] * sym_euler(r - s, in.genus - MultiPoly(s));
        n.push_back(std::move(v));
    }
    return n;
}

/// Validation route: multiply the series by (1-q)^{2-2g} so it becomes a
/// polynomial in u = q(1-q)^{-2}, then re-expand in u via reversion and
/// read the spectrum off the u-coefficients.
inline std::vector<MultiPoly> bps_by_substitution(const EulerSeries& in) {
    const std::size_t order = static_cast<std::size_t>(in.delta);
    TruncSeries<MultiPoly> series = TruncSeries<MultiPoly>::zeros("q", order, MultiPoly());
    for (int i = 0; i <= in.delta; ++i)
        series.coefficient(static_cast<std::size_t>(i)) = in.e[static_cast<std::size_t>(i)];
    MultiPoly expnt = MultiPoly(2) - MultiPoly(2) * in.genus;
    TruncSeries<MultiPoly> flattened = series * one_minus_q_pow(expnt, order);

    // u = q (1-q)^{-2}
    TruncSeries<MultiPoly> u = TruncSeries<MultiPoly>::monomial("q", order, 1, MultiPoly(1)) *
                               one_minus_q_pow(MultiPoly(-2), order);
    TruncSeries<MultiPoly> q_of_u = series_reversion(u);
    TruncSeries<MultiPoly> in_u = series_compose(flattened, q_of_u);

    std::vector<MultiPoly> n;
    for (std::size_t s = 0; s <= order; ++s) n.push_back(in_u.coefficient(s));
    return n;
}

} // namespace detail

/// Invert the Euler characteristic series into its spectrum. Runs the
/// inductive recursion and the u-substitution route and insists they
/// agree exactly.
inline BPSSpectrum bps_transform(const EulerSeries& in) {
    std::vector<MultiPoly> n = detail::bps_by_recursion(in);
    if (in.delta >= 1) {
        std::vector<MultiPoly> alt = detail::bps_by_substitution(in);
        for (std::size_t s = 0; s < n.size(); ++s) {
            if (n[s] != alt[s])
                throw internal_inconsistency_error(
                    "bps_transform: recursion and substitution routes disagree at offset " +
                    std::to_string(s));
        }
    }
    return BPSSpectrum{in.delta, std::move(n)};
}

/// Model Euler characteristics e(C^[k]), k = 0..order, of a delta-nodal
/// curve of arithmetic genus g:
///   e(C^[k]) = sum_j binomial(delta, j) e(Sym^{k-j} of genus g-j).
inline std::vector<MultiPoly> nodal_model_series(const MultiPoly& genus, int delta, int order) {
    if (order < 0) throw usage_error("nodal_model_series: order must be >= 0");
    std::vector<MultiPoly> e;
    for (int k = 0; k <= order; ++k) {
        MultiPoly v;
        for (int j = 0; j <= std::min(k, delta); ++j) {
            Rational b(binomial(BigInt(delta), static_cast<unsigned>(j)));
            v += sym_euler(k - j, genus - MultiPoly(j)) * b;
        }
        e.push_back(std::move(v));
    }
    return e;
}

/// The delta-node count: the spectrum entry n_{g-delta} with the genus
/// symbol replaced by g = 1 + (x+y)/2. Input values must carry the
/// genus symbolically.
inline MultiPoly extract_node_count(const EulerSeries& in, int delta) {
    if (in.delta != delta) throw usage_error("extract_node_count: delta mismatch");
    if (!(in.genus == var_g()))
        throw usage_error("extract_node_count: genus must be the symbol g");
    BPSSpectrum sp = bps_transform(in);
    return sp.entry(delta).substitute(Var::g, genus_in_chern_numbers());
}

} // namespace nodal
