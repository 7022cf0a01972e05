#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/hilb_localize.hpp"
#include "nodal/linalg.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/toric.hpp"

namespace nodal {

/// Ordered exponent vectors (a,b,c,d) with a+b+c+d <= degree, graded then
/// lexicographic. Size is binomial(degree+4, 4).
struct MonomialBasis {
    int degree = 0;
    std::vector<std::array<int, 4>> exponents;

    explicit MonomialBasis(int deg) : degree(deg) {
        if (deg < 0) throw usage_error("MonomialBasis: negative degree");
        for (int d = 0; d <= deg; ++d)
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b)
                    for (int c = d - a - b; c >= 0; --c)
                        exponents.push_back({a, b, c, d - a - b - c});
    }

    std::size_t size() const { return exponents.size(); }

    static Rational value(const std::array<int, 4>& e, const ChernTuple& c) {
        BigInt v = 1;
        for (int k = 0; k < e[0]; ++k) v *= c.x;
        for (int k = 0; k < e[1]; ++k) v *= c.y;
        for (int k = 0; k < e[2]; ++k) v *= c.z;
        for (int k = 0; k < e[3]; ++k) v *= c.t;
        return Rational(v);
    }

    MultiPoly assemble(const std::vector<Rational>& coeffs) const {
        if (coeffs.size() != size()) throw usage_error("MonomialBasis: wrong coefficient count");
        MultiPoly p;
        for (std::size_t i = 0; i < size(); ++i) {
            const auto& e = exponents[i];
            Exponents full{static_cast<uint32_t>(e[0]), static_cast<uint32_t>(e[1]),
                           static_cast<uint32_t>(e[2]), static_cast<uint32_t>(e[3]), 0};
            p += MultiPoly::monomial(full, coeffs[i]);
        }
        return p;
    }
};

struct FitResult {
    MultiPoly polynomial;
    std::size_t basis_size = 0;
    std::size_t rank = 0;
    std::vector<std::string> instances_used;               // rank-building rows
    std::vector<std::pair<std::string, bool>> residual_check;  // verification rows
    std::vector<std::size_t> pivot_bits;
};

namespace detail {

inline std::vector<SurfaceInstance> dedupe_instances(const std::vector<SurfaceInstance>& lib) {
    std::vector<SurfaceInstance> out;
    std::set<std::string> seen;
    for (const auto& inst : lib)
        if (seen.insert(inst.key()).second) out.push_back(inst);
    return out;
}

} // namespace detail

/// Fit the unique polynomial of degree <= i in the Chern numbers that
/// matches the localized Euler characteristics e(Hilb^i over a
/// delta-dimensional system) on every library instance. Instances beyond
/// the ones needed to reach full rank are all used as exact verification
/// rows; at least five of them, including a disjoint union, are required.
inline FitResult fit_universal(int i, int delta, const std::vector<SurfaceInstance>& library,
                               Localizer& loc) {
    if (i < 0 || delta < 0 || i > delta) throw usage_error("fit_universal: need 0 <= i <= delta");
    MonomialBasis basis(i);
    auto instances = detail::dedupe_instances(library);

    FitResult result;
    result.basis_size = basis.size();

    ExactEchelon ech(basis.size());
    std::vector<std::pair<const SurfaceInstance*, Rational>> verify_later;
    for (const auto& inst : instances) {
        Rational value = loc.relative_hilb_euler(inst, i, delta);
        if (ech.full_rank()) {
            verify_later.emplace_back(&inst, value);
            continue;
        }
        std::vector<Rational> row;
        row.reserve(basis.size());
        ChernTuple c = inst.chern();
        for (const auto& e : basis.exponents) row.push_back(MonomialBasis::value(e, c));
        switch (ech.add_row(std::move(row), value)) {
            case ExactEchelon::RowFate::independent:
                result.instances_used.push_back(inst.name);
                break;
            case ExactEchelon::RowFate::redundant:
                verify_later.emplace_back(&inst, value);
                break;
            case ExactEchelon::RowFate::inconsistent:
                throw internal_inconsistency_error(
                    "fit_universal: instance " + inst.name +
                    " is inconsistent with the fitted system (i=" + std::to_string(i) +
                    ", delta=" + std::to_string(delta) + ")");
        }
    }
    if (!ech.full_rank())
        throw insufficient_generators_error(
            "fit_universal: generator library spans rank " + std::to_string(ech.rank()) +
            " < " + std::to_string(basis.size()) + " for degree " + std::to_string(i) +
            "; enlarge the library (unions of more components are usually what is missing)");

    std::vector<Rational> coeffs = ech.solve();
    result.rank = ech.rank();
    result.pivot_bits = ech.pivot_bits();
    result.polynomial = basis.assemble(coeffs);

    bool union_verified = false;
    for (const auto& [inst, value] : verify_later) {
        ChernTuple c = inst->chern();
        Rational predicted(0);
        for (std::size_t k = 0; k < basis.size(); ++k)
            predicted += coeffs[k] * MonomialBasis::value(basis.exponents[k], c);
        bool ok = predicted == value;
        result.residual_check.emplace_back(inst->name, ok);
        if (!ok)
            throw internal_inconsistency_error("fit_universal: held-out instance " + inst->name +
                                               " has nonzero residual (i=" + std::to_string(i) +
                                               ", delta=" + std::to_string(delta) + ")");
        if (!inst->connected()) union_verified = true;
    }
    if (result.residual_check.size() < 5 || !union_verified)
        throw insufficient_generators_error(
            "fit_universal: need at least 5 held-out instances including a disjoint union "
            "beyond the rank-building set");
    return result;
}

struct FitReport {
    int i = 0;
    int delta = 0;
    std::size_t basis_size = 0;
    std::size_t rank = 0;
    bool full_rank = false;
    std::size_t instances_total = 0;
    std::size_t instances_deduped = 0;
    std::vector<std::string> instances_used;
    std::vector<std::pair<std::string, bool>> residual_check;
    std::vector<std::size_t> pivot_bits;
    std::string status;
};

/// Diagnostics for a fit over the given library: achieved rank, pivot
/// magnitudes, the instances used, and held-out verification outcomes.
/// Unlike fit_universal this reports rank deficiency instead of throwing.
inline FitReport fit_report(int i, int delta, const std::vector<SurfaceInstance>& library,
                            Localizer& loc) {
    FitReport rep;
    rep.i = i;
    rep.delta = delta;
    MonomialBasis basis(i);
    rep.basis_size = basis.size();
    rep.instances_total = library.size();
    auto instances = detail::dedupe_instances(library);
    rep.instances_deduped = instances.size();
    try {
        FitResult fit = fit_universal(i, delta, instances, loc);
        rep.rank = fit.rank;
        rep.full_rank = true;
        rep.instances_used = fit.instances_used;
        rep.residual_check = fit.residual_check;
        rep.pivot_bits = fit.pivot_bits;
        rep.status = "ok";
    } catch (const insufficient_generators_error& e) {
        // Re-run the pure rank computation so the report shows the span.
        ExactEchelon ech(basis.size());
        for (const auto& inst : instances) {
            if (ech.full_rank()) break;
            std::vector<Rational> row;
            ChernTuple c = inst.chern();
            for (const auto& ex : basis.exponents) row.push_back(MonomialBasis::value(ex, c));
            if (ech.add_row(std::move(row), Rational(0)) == ExactEchelon::RowFate::independent)
                rep.instances_used.push_back(inst.name);
        }
        rep.rank = ech.rank();
        rep.full_rank = ech.full_rank();
        rep.pivot_bits = ech.pivot_bits();
        rep.status = e.what();
    }
    return rep;
}

} // namespace nodal
