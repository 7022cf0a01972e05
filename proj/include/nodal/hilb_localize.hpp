#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"
#include "nodal/toric.hpp"
#include "nodal/trunc_series.hpp"

namespace nodal {

// ---------------------------------------------------------------------------
// Partitions and fixed points

using Partition = std::vector<int>;  // weakly decreasing positive parts

/// All partitions of n, largest part first, in a fixed deterministic order.
inline const std::vector<Partition>& partitions_of(int n) {
    static std::vector<std::vector<Partition>> table;  // table[n]
    if (n < 0) throw usage_error("partitions_of: negative n");
    while (static_cast<int>(table.size()) <= n) {
        int m = static_cast<int>(table.size());
        std::vector<Partition> out;
        if (m == 0) {
            out.push_back({});
        } else {
            // partitions with prescribed largest part, descending
            std::vector<int> cur;
            auto rec = [&](auto&& self, int remaining, int max_part) -> void {
                if (remaining == 0) {
                    out.push_back(cur);
                    return;
                }
                for (int p = std::min(remaining, max_part); p >= 1; --p) {
                    cur.push_back(p);
                    self(self, remaining - p, p);
                    cur.pop_back();
                }
            };
            rec(rec, m, m);
        }
        table.push_back(std::move(out));
    }
    return table[static_cast<std::size_t>(n)];
}

/// One partition per fixed point of the surface; indexes a torus-fixed
/// point of the Hilbert scheme of total_size() points.
struct PartitionTuple {
    std::vector<Partition> parts;  // one entry per polygon vertex

    int total_size() const {
        int s = 0;
        for (const auto& p : parts)
            for (int v : p) s += v;
        return s;
    }
};

/// All fixed points of the Hilbert scheme of n points, deterministically
/// ordered (lexicographic over vertices).
inline std::vector<PartitionTuple> fixed_points(const PolarizedToricSurface& surface, int n) {
    if (n < 0) throw usage_error("fixed_points: negative n");
    const std::size_t nv = surface.vertex_count();
    std::vector<PartitionTuple> out;
    PartitionTuple cur;
    cur.parts.resize(nv);
    auto rec = [&](auto&& self, std::size_t vertex, int remaining) -> void {
        if (vertex + 1 == nv) {
            for (const auto& p : partitions_of(remaining)) {
                cur.parts[vertex] = p;
                out.push_back(cur);
            }
            cur.parts[vertex].clear();
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            for (const auto& p : partitions_of(k)) {
                cur.parts[vertex] = p;
                self(self, vertex + 1, remaining - k);
            }
            cur.parts[vertex].clear();
        }
    };
    rec(rec, 0, n);
    return out;
}

// ---------------------------------------------------------------------------
// Equivariant weights

/// Linear form c_s * s + c_t * t in the two equivariant parameters.
struct LinearForm {
    long long cs = 0;
    long long ct = 0;

    friend LinearForm operator+(LinearForm a, LinearForm b) {
        return {a.cs + b.cs, a.ct + b.ct};
    }
    friend LinearForm operator-(LinearForm a, LinearForm b) {
        return {a.cs - b.cs, a.ct - b.ct};
    }
    friend LinearForm operator*(long long k, LinearForm a) { return {k * a.cs, k * a.ct}; }
    friend bool operator==(LinearForm a, LinearForm b) { return a.cs == b.cs && a.ct == b.ct; }
    bool is_zero() const { return cs == 0 && ct == 0; }
};

/// Rational specialization point for the equivariant parameters.
struct EquivariantSample {
    long long s = 0;
    long long t = 0;

    long long eval(LinearForm f) const { return f.cs * s + f.ct * t; }
    friend bool operator==(EquivariantSample a, EquivariantSample b) {
        return a.s == b.s && a.t == b.t;
    }
    std::string to_string() const {
        return "(" + std::to_string(s) + "," + std::to_string(t) + ")";
    }
};

/// Tangent and tautological-bundle weights at one Hilbert scheme fixed
/// point over a single surface fixed point.
struct WeightSystem {
    std::vector<LinearForm> tangent;  // 2n forms
    std::vector<LinearForm> taut;     // n forms
};

/// Character of the fibre of L at a fixed point. The equivariant
/// structure on L is normalized opposite to the vertex pairing; this
/// global sign is what makes the rank-one integrals come out with the
/// standard intersection numbers, and the calibration tests pin it.
inline LinearForm l_character(const FixedPointFrame& frame) {
    return LinearForm{-frame.vertex.x, -frame.vertex.y};
}

/// Weights at the monomial ideal of shape lambda in the chart at one
/// fixed point. The box in column a (along the first tangent character v)
/// and row b (along w) carries the monomial section of bidegree (a,b).
/// Coordinate functions transform inversely to point coordinates, so that
/// section has weight chi - a v - b w; tangent weights follow the
/// arm/leg rule in the (v,w) frame.
inline WeightSystem weight_system(const FixedPointFrame& frame, const Partition& lambda) {
    const LinearForm v{frame.edge_next.x, frame.edge_next.y};
    const LinearForm w{frame.edge_prev.x, frame.edge_prev.y};
    const LinearForm chi = l_character(frame);

    WeightSystem ws;
    const int rows = static_cast<int>(lambda.size());
    for (int row = 0; row < rows; ++row) {
        for (int col = 0; col < lambda[static_cast<std::size_t>(row)]; ++col) {
            ws.taut.push_back(chi - static_cast<long long>(col) * v -
                              static_cast<long long>(row) * w);
            const int arm = lambda[static_cast<std::size_t>(row)] - 1 - col;
            int leg = 0;
            for (int r = row + 1; r < rows; ++r)
                if (lambda[static_cast<std::size_t>(r)] > col) ++leg;
            ws.tangent.push_back(static_cast<long long>(arm + 1) * v -
                                 static_cast<long long>(leg) * w);
            ws.tangent.push_back(static_cast<long long>(-arm) * v +
                                 static_cast<long long>(leg + 1) * w);
        }
    }
    return ws;
}

// ---------------------------------------------------------------------------
// Localization

/// Polynomial in the hyperplane class of the linear system, truncated at
/// the system dimension.
using OmegaPoly = TruncSeries<Rational>;

/// Signal that a sample lies on a wall where some tangent weight
/// vanishes. Not an error: the caller draws a fresh sample.
struct degenerate_sample_signal {
    std::string detail;
};

struct LocalizerOptions {
    int sample_count = 3;
    std::uint64_t rng_seed = 0x5eedULL;
    int max_sample_attempts = 64;
    std::ostream* debug = nullptr;  // per-fixed-point dump when set
};

/// Evaluates the tautological integrals over Hilbert schemes of points of
/// toric surfaces by torus localization. Integrals are computed at a few
/// rational parameter samples; agreement across samples is part of the
/// contract and is checked by relative_hilb_euler.
class Localizer {
public:
    explicit Localizer(LocalizerOptions opts = {}) : opts_(opts), rng_state_(opts.rng_seed) {
        if (opts_.sample_count < 2) throw usage_error("Localizer: sample_count must be >= 2");
    }

    const LocalizerOptions& options() const { return opts_; }

    /// The i-th sample of the deterministic stream (drawn lazily).
    EquivariantSample sample(int index) {
        while (static_cast<int>(samples_.size()) <= index) draw_sample();
        return samples_[static_cast<std::size_t>(index)];
    }

    /// Localized integral over the Hilbert scheme of k points of one
    /// connected surface: the omega-polynomial of integrals
    ///   [omega^j] c(T) * prod(omega + m) / prod(1 + omega + m),
    /// j = 0..delta, where m runs over tautological weights. Memoized per
    /// (surface, k, delta, sample).
    const OmegaPoly& local_factor(const PolarizedToricSurface& surface, int k, int delta,
                                  EquivariantSample sample) {
        std::string key = factor_key(surface, k, delta, sample);
        auto it = factor_cache_.find(key);
        if (it != factor_cache_.end()) return it->second;
        OmegaPoly f = compute_local_factor(surface, k, delta, sample);
        return factor_cache_.emplace(std::move(key), std::move(f)).first->second;
    }

    /// Euler characteristic of the relative Hilbert scheme of i points of
    /// the universal curve over a general delta-dimensional linear system
    /// on the instance. Verified identical across >= sample_count samples
    /// and integer-valued.
    Rational relative_hilb_euler(const SurfaceInstance& instance, int i, int delta) {
        if (i < 0 || delta < 0 || i > delta)
            throw usage_error("relative_hilb_euler: need 0 <= i <= delta");
        std::optional<Rational> agreed;
        int successes = 0;
        int attempts = 0;
        for (int idx = 0; successes < opts_.sample_count; ++idx) {
            if (++attempts > opts_.max_sample_attempts)
                throw resample_exhausted_error(
                    "relative_hilb_euler: too many degenerate samples for " + instance.name);
            EquivariantSample smp = sample(idx);
            Rational value;
            try {
                value = relative_hilb_euler_at_sample(instance, i, delta, smp);
            } catch (const degenerate_sample_signal&) {
                continue;
            }
            if (agreed && !(value == *agreed))
                throw internal_inconsistency_error(
                    "relative_hilb_euler: sample disagreement on " + instance.name + " (i=" +
                    std::to_string(i) + ", delta=" + std::to_string(delta) + "): " +
                    agreed->to_string() + " vs " + value.to_string() + " at sample " +
                    smp.to_string());
            agreed = value;
            ++successes;
        }
        if (!agreed->is_integer())
            throw internal_inconsistency_error("relative_hilb_euler: non-integer value " +
                                               agreed->to_string() + " on " + instance.name);
        return *agreed;
    }

    /// Single-sample evaluation: [omega^delta] of (1+omega)^{delta+1}
    /// times the product of component factors summed over compositions.
    Rational relative_hilb_euler_at_sample(const SurfaceInstance& instance, int i, int delta,
                                           EquivariantSample smp) {
        std::vector<OmegaPoly> acc;  // acc[m] = sum over first components with total m
        OmegaPoly one = OmegaPoly::constant("omega", static_cast<std::size_t>(delta), Rational(1));
        acc.assign(static_cast<std::size_t>(i) + 1, OmegaPoly::zeros("omega",
                                                                     static_cast<std::size_t>(delta),
                                                                     Rational(0)));
        acc[0] = one;
        for (const auto& comp : instance.components) {
            std::vector<OmegaPoly> next(acc.size(),
                                        OmegaPoly::zeros("omega", static_cast<std::size_t>(delta),
                                                         Rational(0)));
            for (int m = 0; m <= i; ++m) {
                if (acc[static_cast<std::size_t>(m)].is_zero()) continue;
                for (int k = 0; m + k <= i; ++k) {
                    const OmegaPoly& f = local_factor(comp, k, delta, smp);
                    next[static_cast<std::size_t>(m + k)] +=
                        acc[static_cast<std::size_t>(m)] * f;
                }
            }
            acc = std::move(next);
        }
        // multiply by (1+omega)^{delta+1} and read off [omega^delta]
        Rational value(0);
        const OmegaPoly& top = acc[static_cast<std::size_t>(i)];
        for (int j = 0; j <= delta; ++j) {
            Rational binom_coeff(binomial(BigInt(delta + 1), static_cast<unsigned>(delta - j)));
            value += binom_coeff * top.coefficient(static_cast<std::size_t>(j));
        }
        return value;
    }

    /// Fill the factor cache for every (component, k <= max_k, sample)
    /// the given instances will need, computing missing entries in
    /// parallel. Results are exact values, so the later fixed-order sums
    /// are bit-identical whatever the thread count (0 = auto).
    void prefetch(const std::vector<SurfaceInstance>& instances, int max_k, int delta,
                  int threads) {
        if (opts_.debug) return;  // keep the diagnostic dump ordered
        for (int idx = 0; idx < opts_.sample_count; ++idx) sample(idx);
        partitions_of(max_k);  // warm the shared table before threading

        struct Job {
            const PolarizedToricSurface* surface;
            int k;
            EquivariantSample smp;
            std::string key;
        };
        std::vector<Job> jobs;
        std::set<std::string> seen;
        for (const auto& inst : instances) {
            for (const auto& comp : inst.components) {
                for (int k = 0; k <= max_k; ++k) {
                    for (int idx = 0; idx < opts_.sample_count; ++idx) {
                        EquivariantSample smp = samples_[static_cast<std::size_t>(idx)];
                        std::string key = factor_key(comp, k, delta, smp);
                        if (factor_cache_.count(key) || !seen.insert(key).second) continue;
                        jobs.push_back(Job{&comp, k, smp, std::move(key)});
                    }
                }
            }
        }
        if (jobs.empty()) return;

        unsigned nthreads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : static_cast<unsigned>(threads);
        nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(jobs.size()));
        std::vector<std::optional<OmegaPoly>> results(jobs.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
                try {
                    results[j] = compute_local_factor(*jobs[j].surface, jobs[j].k, delta,
                                                      jobs[j].smp);
                } catch (const degenerate_sample_signal&) {
                    // leave empty: the serial path resamples
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w + 1 < nthreads; ++w) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (results[j]) factor_cache_.emplace(jobs[j].key, std::move(*results[j]));
    }

    /// Consistency check of the weight calculus: localizing the Chern
    /// classes of the tangent bundle alone must give zero below the top
    /// degree and the fixed point count in the top degree.
    bool euler_class_check(const PolarizedToricSurface& surface, int n, EquivariantSample smp) {
        const int horder = 2 * n;
        using HSeries = TruncSeries<Rational>;
        HSeries total = HSeries::zeros("h", static_cast<std::size_t>(horder), Rational(0));
        const auto tuples = fixed_points(surface, n);
        for (const auto& tuple : tuples) {
            std::vector<Rational> tangent = specialized_tangent_weights(surface, tuple, smp);
            HSeries num = HSeries::constant("h", static_cast<std::size_t>(horder), Rational(1));
            Rational euler(1);
            for (const auto& wv : tangent) {
                num = mul_linear_h(num, wv);
                euler *= wv;
            }
            HSeries contrib = num;
            contrib *= euler.inverse();
            total += contrib;
        }
        for (int m = 0; m < horder; ++m)
            if (!total.coefficient(static_cast<std::size_t>(m)).is_zero()) return false;
        return total.coefficient(static_cast<std::size_t>(horder)) ==
               Rational(static_cast<long long>(tuples.size()));
    }

private:
    using HOmega = TruncSeries<OmegaPoly>;  // h-graded series of omega-polynomials

    static std::string factor_key(const PolarizedToricSurface& surface, int k, int delta,
                                  EquivariantSample sample) {
        return surface.key() + "#" + std::to_string(k) + "#" + std::to_string(delta) + "#" +
               sample.to_string();
    }

    static TruncSeries<Rational> mul_linear_h(const TruncSeries<Rational>& s, const Rational& c) {
        // s * (1 + c h)
        TruncSeries<Rational> r = s;
        for (std::size_t m = r.order(); m >= 1; --m) {
            r.coefficient(m) += c * s.coefficient(m - 1);
        }
        return r;
    }

    std::vector<Rational> specialized_tangent_weights(const PolarizedToricSurface& surface,
                                                      const PartitionTuple& tuple,
                                                      EquivariantSample smp) {
        std::vector<Rational> out;
        for (std::size_t vtx = 0; vtx < surface.vertex_count(); ++vtx) {
            WeightSystem ws = weight_system(surface.frames()[vtx], tuple.parts[vtx]);
            for (const auto& form : ws.tangent) {
                long long value = smp.eval(form);
                if (value == 0)
                    throw degenerate_sample_signal{"vanishing tangent weight at sample " +
                                                   smp.to_string()};
                out.push_back(Rational(value));
            }
        }
        return out;
    }

    OmegaPoly compute_local_factor(const PolarizedToricSurface& surface, int k, int delta,
                                   EquivariantSample smp) {
        const std::size_t worder = static_cast<std::size_t>(delta);
        const std::size_t horder = static_cast<std::size_t>(2 * k);
        const OmegaPoly wzero = OmegaPoly::zeros("omega", worder, Rational(0));
        const OmegaPoly wone = OmegaPoly::constant("omega", worder, Rational(1));
        auto homega_const = [&](const OmegaPoly& c0) {
            HOmega s = HOmega::zeros("h", horder, wzero);
            s.coefficient(0) = c0;
            return s;
        };

        HOmega total = homega_const(wzero);
        for (const auto& tuple : fixed_points(surface, k)) {
            // assemble weights
            std::vector<Rational> tangent;
            std::vector<Rational> taut;
            for (std::size_t vtx = 0; vtx < surface.vertex_count(); ++vtx) {
                WeightSystem ws = weight_system(surface.frames()[vtx], tuple.parts[vtx]);
                for (const auto& form : ws.tangent) {
                    long long value = smp.eval(form);
                    if (value == 0)
                        throw degenerate_sample_signal{"vanishing tangent weight at sample " +
                                                       smp.to_string()};
                    tangent.push_back(Rational(value));
                }
                for (const auto& form : ws.taut) taut.push_back(Rational(smp.eval(form)));
            }

            // numerator: prod (1 + h w_j) * prod (omega + h m_b)
            HOmega num = homega_const(wone);
            Rational euler(1);
            for (const auto& wv : tangent) {
                num = mul_linear(num, wone * wv, false);
                euler *= wv;
            }
            OmegaPoly omega_lin = OmegaPoly::monomial("omega", worder, 1, Rational(1));
            for (const auto& mv : taut) num = mul_linear(num, wone * mv, true, &omega_lin);

            // denominator: prod (1 + omega + h m_b)
            HOmega den = homega_const(wone);
            OmegaPoly one_plus_omega = wone + omega_lin;
            for (const auto& mv : taut) den = mul_linear(den, wone * mv, true, &one_plus_omega);

            HOmega contrib = num * series_invert(den);
            contrib *= (wone * euler.inverse());
            total += contrib;

            if (opts_.debug) {
                *opts_.debug << "  [" << surface.name() << " k=" << k << " sample "
                             << smp.to_string() << "] tuple contribution: "
                             << contrib.coefficient(horder) << "\n";
            }
        }

        // Degrees below the Hilbert scheme dimension push forward to zero;
        // anything else means the weight calculus is broken.
        for (std::size_t m = 0; m < horder; ++m) {
            if (!total.coefficient(m).is_zero())
                throw internal_inconsistency_error(
                    "local_factor: nonvanishing low-degree localization sum on " + surface.name() +
                    " (k=" + std::to_string(k) + ", h^" + std::to_string(m) + ")");
        }
        return total.coefficient(horder);
    }

    /// Multiply by (c0 + h * c) where c0 is either 1 or a fixed
    /// omega-polynomial (the two factor shapes that occur).
    static HOmega mul_linear(const HOmega& s, const OmegaPoly& c, bool with_c0,
                             const OmegaPoly* c0 = nullptr) {
        HOmega r = s;
        if (with_c0 && c0 != nullptr) {
            for (std::size_t m = 0; m <= r.order(); ++m) r.coefficient(m) *= *c0;
        }
        for (std::size_t m = r.order(); m >= 1; --m) {
            OmegaPoly add = s.coefficient(m - 1) * c;
            r.coefficient(m) += add;
        }
        return r;
    }

    void draw_sample() {
        static constexpr long long kPrimes[] = {100003, 100019, 100043, 100057, 100069, 100103,
                                                100109, 100129, 100151, 100153, 100169, 100183,
                                                100189, 100193, 100207, 100213};
        for (int attempt = 0; attempt < 1024; ++attempt) {
            std::uint64_t r1 = next_rng();
            std::uint64_t r2 = next_rng();
            EquivariantSample smp{kPrimes[r1 % 16], 1 + static_cast<long long>(r2 % 97)};
            bool fresh = true;
            for (const auto& old : samples_)
                if (old == smp) fresh = false;
            if (fresh) {
                samples_.push_back(smp);
                return;
            }
        }
        throw resample_exhausted_error("Localizer: could not draw a fresh sample");
    }

    // splitmix64: deterministic across platforms
    std::uint64_t next_rng() {
        std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    LocalizerOptions opts_;
    std::uint64_t rng_state_;
    std::vector<EquivariantSample> samples_;
    std::map<std::string, OmegaPoly> factor_cache_;
};

} // namespace nodal
