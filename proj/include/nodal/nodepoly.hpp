#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/bps.hpp"
#include "nodal/cache.hpp"
#include "nodal/config.hpp"
#include "nodal/errors.hpp"
#include "nodal/hilb_localize.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/toric.hpp"
#include "nodal/universal_fit.hpp"

namespace nodal {

/// Universal polynomial counting delta-nodal curves in a general
/// delta-dimensional linear system, in the four Chern numbers
/// (x,y,z,t) = (L^2, L.K, K^2, c_2). Total degree is exactly delta and
/// the t^delta coefficient is 1/delta!.
struct NodePolynomial {
    int delta = 0;
    MultiPoly polynomial;
};

/// Orchestrates fits and the BPS extraction. Holds the localizer (and
/// its factor cache), the generator library, and an optional disk cache
/// of fitted polynomials.
class NodeEngine {
public:
    explicit NodeEngine(Config cfg, std::vector<SurfaceInstance> library = {})
        : cfg_(cfg),
          loc_(LocalizerOptions{cfg.sample_count, cfg.rng_seed, 64, nullptr}),
          library_(library.empty() ? generator_library(cfg.max_delta) : std::move(library)) {
        cfg_.validate();
        lib_hash_ = library_hash(library_);
        if (!cfg_.cache_path.empty()) cache_.emplace(cfg_.cache_path);
    }

    const Config& config() const { return cfg_; }
    Localizer& localizer() { return loc_; }
    const std::vector<SurfaceInstance>& library() const { return library_; }
    const std::string& lib_hash() const { return lib_hash_; }

    /// Fitted polynomial for e(Hilb^i over a delta-dimensional system),
    /// consulting the disk cache first.
    MultiPoly fitted_euler(int i, int delta) {
        if (cache_) {
            if (auto hit = cache_->get(i, delta, lib_hash_)) return *hit;
        }
        loc_.prefetch(library_, i, delta, cfg_.thread_count);
        FitResult fit = fit_universal(i, delta, library_, loc_);
        check_euler_shape(fit.polynomial, i, delta);
        if (cache_) cache_->put(i, delta, lib_hash_, fit.polynomial);
        return fit.polynomial;
    }

    /// The node polynomial N_delta.
    NodePolynomial node_polynomial(int delta) {
        if (delta < 0) throw usage_error("node_polynomial: delta must be >= 0");
        if (delta > cfg_.max_delta)
            throw usage_error("node_polynomial: delta " + std::to_string(delta) +
                              " exceeds the configured maximum " +
                              std::to_string(cfg_.max_delta) +
                              " (raise max_delta to override; cost grows quickly)");
        loc_.prefetch(library_, delta, delta, cfg_.thread_count);
        std::vector<MultiPoly> e;
        for (int i = 0; i <= delta; ++i) e.push_back(fitted_euler(i, delta));
        MultiPoly n = extract_node_count(EulerSeries(delta, var_g(), e), delta);

        if (n.total_degree() != delta)
            throw internal_inconsistency_error("node_polynomial: N_" + std::to_string(delta) +
                                               " has degree " +
                                               std::to_string(n.total_degree()) +
                                               ", expected exactly " + std::to_string(delta));
        Rational lead = n.coefficient_of_power(Var::t, static_cast<uint32_t>(delta));
        if (lead != Rational(BigInt(1), factorial(static_cast<unsigned>(delta))))
            throw internal_inconsistency_error(
                "node_polynomial: t^delta coefficient of N_" + std::to_string(delta) + " is " +
                lead.to_string() + ", expected 1/delta!");
        if (delta == 1) {
            MultiPoly classical = MultiPoly(3) * var_x() + MultiPoly(2) * var_y() + var_t();
            if (!(n == classical))
                throw internal_inconsistency_error(
                    "node_polynomial: N_1 differs from the classical pencil formula");
        }
        return NodePolynomial{delta, std::move(n)};
    }

    Rational evaluate(const NodePolynomial& np, const ChernTuple& c) const {
        std::array<Rational, kNumVars> vals{Rational(c.x), Rational(c.y), Rational(c.z),
                                            Rational(c.t), Rational(0)};
        return np.polynomial.evaluate(vals);
    }

    /// Count for an abstract Chern tuple. No advisory is possible.
    Rational count_nodal(const ChernTuple& c, int delta) {
        return evaluate(node_polynomial(delta), c);
    }

    struct CountResult {
        Rational value;
        AmplenessAdvisory advisory;
    };

    /// Count for a concrete surface, with the very-ampleness advisory.
    CountResult count_nodal(const SurfaceInstance& instance, int delta) {
        CountResult r;
        r.advisory = ampleness_advisory(instance, delta);
        r.value = evaluate(node_polynomial(delta), instance.chern());
        return r;
    }

private:
    /// The fitted Euler polynomials carry two structural theorems worth
    /// asserting on every fit: degree at most i, and t^i coefficient
    /// (delta - i + 1)/i!.
    static void check_euler_shape(const MultiPoly& p, int i, int delta) {
        if (p.total_degree() > i)
            throw internal_inconsistency_error("fitted_euler: degree exceeds " +
                                               std::to_string(i));
        Rational expected(BigInt(delta - i + 1), factorial(static_cast<unsigned>(i)));
        if (p.coefficient_of_power(Var::t, static_cast<uint32_t>(i)) != expected)
            throw internal_inconsistency_error(
                "fitted_euler: t^i coefficient mismatch at (i=" + std::to_string(i) +
                ", delta=" + std::to_string(delta) + ")");
    }

    Config cfg_;
    Localizer loc_;
    std::vector<SurfaceInstance> library_;
    std::string lib_hash_;
    std::optional<FitCache> cache_;
};

// ---------------------------------------------------------------------------
// Severi-style reporting over built-in families

struct SeveriFamilySpec {
    enum class Kind { p2, p1xp1 } kind = Kind::p2;
    long long lo1 = 1, hi1 = 1;  // d range, or a range
    long long lo2 = 1, hi2 = 1;  // b range (p1xp1 only)
};

struct SeveriRow {
    std::string label;
    ChernTuple chern;
    std::vector<Rational> counts;  // one per requested delta
    bool warn = false;
    std::string advisory;
};

/// Table of counts over a one- or two-parameter family, one row per
/// member and one column per delta, with the ampleness advisory attached
/// to each row at the largest requested delta.
inline std::vector<SeveriRow> severi_table(NodeEngine& engine, const SeveriFamilySpec& family,
                                           const std::vector<int>& deltas) {
    std::vector<SurfaceInstance> members;
    if (family.kind == SeveriFamilySpec::Kind::p2) {
        for (long long d = family.lo1; d <= family.hi1; ++d)
            members.emplace_back(make_p2(d));
    } else {
        for (long long a = family.lo1; a <= family.hi1; ++a)
            for (long long b = family.lo2; b <= family.hi2; ++b)
                members.emplace_back(make_p1xp1(a, b));
    }
    int max_delta = 0;
    for (int d : deltas) max_delta = std::max(max_delta, d);
    std::vector<SeveriRow> rows;
    for (const auto& inst : members) {
        SeveriRow row;
        row.label = inst.name;
        row.chern = inst.chern();
        for (int d : deltas) row.counts.push_back(engine.count_nodal(inst.chern(), d));
        AmplenessAdvisory adv = ampleness_advisory(inst, deltas.empty() ? 0 : max_delta);
        row.warn = adv.warn;
        row.advisory = adv.message;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace nodal
