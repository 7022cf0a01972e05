#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nodal/errors.hpp"
#include "nodal/rational.hpp"

namespace nodal {

struct LatticePoint {
    long long x = 0;
    long long y = 0;

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const LatticePoint& a, const LatticePoint& b) { return !(a == b); }
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
    friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
        return {a.x - b.x, a.y - b.y};
    }
};

inline long long cross(const LatticePoint& a, const LatticePoint& b) {
    return a.x * b.y - a.y * b.x;
}

inline LatticePoint primitive(const LatticePoint& v) {
    long long g = std::gcd(std::abs(v.x), std::abs(v.y));
    return g == 0 ? v : LatticePoint{v.x / g, v.y / g};
}

/// The four Chern numbers a polarized surface contributes to the
/// universal polynomials: x = L^2, y = L.K, z = K^2, t = c_2.
struct ChernTuple {
    long long x = 0;
    long long y = 0;
    long long z = 0;
    long long t = 0;

    ChernTuple& operator+=(const ChernTuple& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        t += o.t;
        return *this;
    }
    friend ChernTuple operator+(ChernTuple a, const ChernTuple& b) { return a += b; }
    friend bool operator==(const ChernTuple& a, const ChernTuple& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z && a.t == b.t;
    }
    friend std::ostream& operator<<(std::ostream& os, const ChernTuple& c) {
        return os << "(" << c.x << "," << c.y << "," << c.z << "," << c.t << ")";
    }
};

/// Fixed-point data attached to one vertex of the moment polygon: the
/// vertex itself (the character of L there, up to the global sign
/// convention fixed in the localization layer) and the two primitive
/// outgoing edge vectors, which are the tangent characters.
struct FixedPointFrame {
    LatticePoint vertex;
    LatticePoint edge_next;  // primitive direction toward the next vertex
    LatticePoint edge_prev;  // primitive direction toward the previous vertex
};

/// Smooth projective toric surface polarized by an ample line bundle,
/// presented as a strictly convex lattice polygon. Vertices correspond to
/// torus fixed points; the number of vertices equals c_2.
class PolarizedToricSurface {
public:
    static PolarizedToricSurface from_polygon(std::vector<LatticePoint> vertices,
                                              std::string name = "");

    const std::string& name() const { return name_; }
    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<FixedPointFrame>& frames() const { return frames_; }

    long long lattice_area_doubled() const { return area2_; }
    long long boundary_points() const { return boundary_; }

    ChernTuple chern() const {
        long long v = static_cast<long long>(vertices_.size());
        return ChernTuple{area2_, -boundary_, 12 - v, v};
    }

    /// Shortest lattice length among the polygon edges. An edge of length
    /// >= n for every edge is the sufficient toric criterion for L to be
    /// n-very ample.
    long long min_edge_length() const { return min_edge_; }

    /// Canonical identity string (vertices after canonical rotation).
    const std::string& key() const { return key_; }

    friend bool operator==(const PolarizedToricSurface& a, const PolarizedToricSurface& b) {
        return a.key_ == b.key_;
    }

private:
    PolarizedToricSurface() = default;

    std::string name_;
    std::vector<LatticePoint> vertices_;
    std::vector<FixedPointFrame> frames_;
    long long area2_ = 0;
    long long boundary_ = 0;
    long long min_edge_ = 0;
    std::string key_;
};

inline PolarizedToricSurface PolarizedToricSurface::from_polygon(
    std::vector<LatticePoint> vertices, std::string name) {
    const std::size_t n = vertices.size();
    if (n < 3) throw invalid_polygon_error("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (vertices[i] == vertices[j]) throw invalid_polygon_error("duplicate vertex");

    // Orient counterclockwise.
    long long area2 = 0;
    for (std::size_t i = 0; i < n; ++i) area2 += cross(vertices[i], vertices[(i + 1) % n]);
    if (area2 == 0) throw invalid_polygon_error("degenerate polygon");
    if (area2 < 0) {
        std::reverse(vertices.begin(), vertices.end());
        area2 = -area2;
    }

    // Strict convexity: every turn is a strict left turn. Together with the
    // hull comparison below this rules out reflex and collinear vertices
    // and self-intersecting vertex orders.
    for (std::size_t i = 0; i < n; ++i) {
        LatticePoint a = vertices[i];
        LatticePoint b = vertices[(i + 1) % n];
        LatticePoint c = vertices[(i + 2) % n];
        if (cross(b - a, c - b) <= 0)
            throw invalid_polygon_error("polygon is not strictly convex");
    }
    {
        // Monotone-chain hull of the vertex set must use every vertex.
        std::vector<LatticePoint> pts = vertices;
        std::sort(pts.begin(), pts.end());
        auto half = [&](auto begin, auto end) {
            std::vector<LatticePoint> h;
            for (auto it = begin; it != end; ++it) {
                while (h.size() >= 2 &&
                       cross(h.back() - h[h.size() - 2], *it - h.back()) <= 0)
                    h.pop_back();
                h.push_back(*it);
            }
            return h;
        };
        auto lower = half(pts.begin(), pts.end());
        auto upper = half(pts.rbegin(), pts.rend());
        if (lower.size() + upper.size() - 2 != n)
            throw invalid_polygon_error("polygon is not strictly convex");
    }

    PolarizedToricSurface s;
    s.name_ = std::move(name);
    s.vertices_ = std::move(vertices);
    s.area2_ = area2;

    s.boundary_ = 0;
    s.min_edge_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
        LatticePoint e = s.vertices_[(i + 1) % n] - s.vertices_[i];
        long long len = std::gcd(std::abs(e.x), std::abs(e.y));
        s.boundary_ += len;
        s.min_edge_ = (i == 0) ? len : std::min(s.min_edge_, len);
    }

    for (std::size_t i = 0; i < n; ++i) {
        FixedPointFrame f;
        f.vertex = s.vertices_[i];
        f.edge_next = primitive(s.vertices_[(i + 1) % n] - s.vertices_[i]);
        f.edge_prev = primitive(s.vertices_[(i + n - 1) % n] - s.vertices_[i]);
        long long det = cross(f.edge_next, f.edge_prev);
        if (det != 1 && det != -1)
            throw non_smooth_surface_error("vertex cone at (" + std::to_string(f.vertex.x) + "," +
                                           std::to_string(f.vertex.y) + ") is not unimodular");
        s.frames_.push_back(f);
    }

    // Canonical key: rotate so the lexicographically smallest vertex is first.
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (s.vertices_[i] < s.vertices_[start]) start = i;
    std::string key;
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint& p = s.vertices_[(start + i) % n];
        key += std::to_string(p.x) + "," + std::to_string(p.y) + ";";
    }
    s.key_ = key;
    return s;
}

inline PolarizedToricSurface surface_from_polygon(std::vector<LatticePoint> vertices,
                                                  std::string name = "") {
    return PolarizedToricSurface::from_polygon(std::move(vertices), std::move(name));
}

/// A polarized surface that may be a formal disjoint union of smooth
/// connected toric components. Chern numbers add componentwise; unions
/// break the z + t = 12 relation that every connected rational toric
/// surface satisfies, which the universal fit needs.
struct SurfaceInstance {
    std::vector<PolarizedToricSurface> components;
    std::string name;

    SurfaceInstance() = default;
    SurfaceInstance(PolarizedToricSurface s) {  // NOLINT: implicit by design
        name = s.name();
        components.push_back(std::move(s));
    }
    SurfaceInstance(std::vector<PolarizedToricSurface> comps, std::string n)
        : components(std::move(comps)), name(std::move(n)) {
        if (components.empty()) throw usage_error("SurfaceInstance: no components");
    }

    bool connected() const { return components.size() == 1; }

    ChernTuple chern() const {
        ChernTuple c;
        for (const auto& s : components) c += s.chern();
        return c;
    }

    std::string key() const {
        std::vector<std::string> ks;
        for (const auto& s : components) ks.push_back(s.key());
        std::sort(ks.begin(), ks.end());
        std::string out;
        for (const auto& k : ks) out += k + "|";
        return out;
    }
};

inline ChernTuple chern_numbers(const SurfaceInstance& instance) { return instance.chern(); }

/// Advisory produced by the n-very-ampleness heuristic. Never blocks a
/// computation; evaluation outside the ample range is still well defined
/// polynomial algebra, it just loses its enumerative reading.
struct AmplenessAdvisory {
    bool warn = false;
    std::string message;
};

inline AmplenessAdvisory ampleness_advisory(const SurfaceInstance& instance, int delta) {
    AmplenessAdvisory a;
    if (delta <= 0) return a;
    for (const auto& comp : instance.components) {
        if (comp.min_edge_length() < delta) {
            a.warn = true;
            if (!a.message.empty()) a.message += "; ";
            std::string nm = comp.name().empty() ? comp.key() : comp.name();
            a.message += "component " + nm + " has an edge of lattice length " +
                         std::to_string(comp.min_edge_length()) + " < delta = " +
                         std::to_string(delta) +
                         "; the line bundle may fail to be delta-very ample and the count may "
                         "not be enumerative";
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// Built-in generator families

/// Projective plane with O(d): the triangle of size d.
inline PolarizedToricSurface make_p2(long long d) {
    return surface_from_polygon({{0, 0}, {d, 0}, {0, d}}, "P2(O(" + std::to_string(d) + "))");
}

/// Product of two projective lines with O(a,b): the a-by-b rectangle.
inline PolarizedToricSurface make_p1xp1(long long a, long long b) {
    return surface_from_polygon({{0, 0}, {a, 0}, {a, b}, {0, b}},
                                "P1xP1(O(" + std::to_string(a) + "," + std::to_string(b) + "))");
}

/// Triangle of size d with unimodular corner cuts of the given depths at
/// the corners (d,0), (0,d), (0,0). Depth 0 leaves a corner uncut; the
/// result is a blow-up of the plane in up to three fixed points.
inline std::optional<PolarizedToricSurface> try_make_cut_triangle(long long d, long long k1,
                                                                  long long k2, long long k3) {
    std::vector<LatticePoint> v;
    if (k3 > 0) v.push_back({k3, 0});
    else v.push_back({0, 0});
    if (k1 > 0) {
        v.push_back({d - k1, 0});
        v.push_back({d - k1, k1});
    } else {
        v.push_back({d, 0});
    }
    if (k2 > 0) {
        v.push_back({k2, d - k2});
        v.push_back({0, d - k2});
    } else {
        v.push_back({0, d});
    }
    if (k3 > 0) v.push_back({0, k3});
    try {
        std::string nm = "BlP2(d=" + std::to_string(d) + ";" + std::to_string(k1) + "," +
                         std::to_string(k2) + "," + std::to_string(k3) + ")";
        return PolarizedToricSurface::from_polygon(std::move(v), std::move(nm));
    } catch (const usage_error&) {
        return std::nullopt;
    }
}

/// Deterministic pool of connected generator surfaces.
inline std::vector<PolarizedToricSurface> generator_components() {
    std::vector<PolarizedToricSurface> pool;
    for (long long d = 1; d <= 6; ++d) pool.push_back(make_p2(d));
    for (long long a = 1; a <= 4; ++a)
        for (long long b = 1; b <= a; ++b) pool.push_back(make_p1xp1(a, b));
    for (long long d = 2; d <= 5; ++d)
        for (long long k = 1; k < d; ++k)
            if (auto s = try_make_cut_triangle(d, k, 0, 0)) pool.push_back(*s);
    for (long long d = 3; d <= 5; ++d)
        for (long long k1 = 1; k1 < d; ++k1)
            for (long long k2 = k1; k1 + k2 <= d - 1; ++k2)
                if (auto s = try_make_cut_triangle(d, k1, k2, 0)) pool.push_back(*s);
    for (long long d = 3; d <= 5; ++d)
        for (long long k1 = 1; k1 < d; ++k1)
            for (long long k2 = k1; k2 < d; ++k2)
                for (long long k3 = k2; k3 < d; ++k3)
                    if (k1 + k2 <= d - 1 && k2 + k3 <= d - 1 && k1 + k3 <= d - 1)
                        if (auto s = try_make_cut_triangle(d, k1, k2, k3)) pool.push_back(*s);
    return pool;
}

namespace detail {

/// Instances built over a component pool: all singles plus deterministic
/// unions of 2..5 components. Unions with several component counts are
/// required to break the z + t = 12m coincidences that would otherwise
/// make high-degree monomial columns dependent.
inline std::vector<SurfaceInstance> instances_over_pool(
    const std::vector<PolarizedToricSurface>& pool) {
    std::vector<SurfaceInstance> out;
    const std::size_t n = pool.size();
    for (const auto& s : pool) out.emplace_back(s);

    auto make_union = [&](std::vector<std::size_t> idx) {
        std::vector<PolarizedToricSurface> comps;
        std::string nm;
        for (std::size_t i : idx) {
            comps.push_back(pool[i]);
            if (!nm.empty()) nm += " + ";
            nm += pool[i].name();
        }
        out.emplace_back(std::move(comps), nm);
    };

    for (std::size_t j : {std::size_t{1}, std::size_t{3}, std::size_t{6}})
        for (std::size_t i = 0; i + j < n; ++i) make_union({i, i + j});
    for (std::size_t i = 0; i + 2 < n; ++i) make_union({i, i + 1, i + 2});
    for (std::size_t i = 0; i + 3 < n; i += 2) make_union({i, i + 1, i + 2, i + 3});
    for (std::size_t i = 0; i + 4 < n; i += 3) make_union({i, i + 1, i + 2, i + 3, i + 4});
    return out;
}

} // namespace detail

/// Deterministic generator family for fitting universal polynomials of
/// degree <= max_degree. Rank sufficiency is re-verified by the fitter.
inline std::vector<SurfaceInstance> generator_library(int max_degree) {
    if (max_degree < 0 || max_degree > 8)
        throw usage_error("generator_library: unsupported degree");
    return detail::instances_over_pool(generator_components());
}

/// Two generator families with no component in common, used to test that
/// independently fitted polynomials coincide.
inline std::pair<std::vector<SurfaceInstance>, std::vector<SurfaceInstance>>
generator_library_split(int max_degree) {
    if (max_degree < 0 || max_degree > 8)
        throw usage_error("generator_library_split: unsupported degree");
    auto pool = generator_components();
    std::vector<PolarizedToricSurface> a, b;
    for (std::size_t i = 0; i < pool.size(); ++i)
        (i % 2 == 0 ? a : b).push_back(pool[i]);
    return {detail::instances_over_pool(a), detail::instances_over_pool(b)};
}

} // namespace nodal
