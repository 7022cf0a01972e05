#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "nodal/surface_io.hpp"
#include "nodal/toric.hpp"

using namespace nodal;

namespace {

// Independent Chern-number oracle from brute-force lattice point counts:
// walk the bounding box, classify points as boundary/interior, and use
// Pick's theorem for the area. Only the vertex count is shared with the
// implementation.
ChernTuple chern_oracle(const PolarizedToricSurface& s) {
    const auto& vs = s.vertices();
    const std::size_t n = vs.size();
    long long minx = vs[0].x, maxx = vs[0].x, miny = vs[0].y, maxy = vs[0].y;
    for (const auto& p : vs) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    auto on_segment = [](LatticePoint a, LatticePoint b, LatticePoint p) {
        if (cross(b - a, p - a) != 0) return false;
        return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
    };
    long long boundary = 0, interior = 0;
    for (long long px = minx; px <= maxx; ++px) {
        for (long long py = miny; py <= maxy; ++py) {
            LatticePoint p{px, py};
            bool on_edge = false;
            for (std::size_t i = 0; i < n && !on_edge; ++i)
                on_edge = on_segment(vs[i], vs[(i + 1) % n], p);
            if (on_edge) {
                ++boundary;
                continue;
            }
            bool strictly_inside = true;
            for (std::size_t i = 0; i < n && strictly_inside; ++i)
                strictly_inside = cross(vs[(i + 1) % n] - vs[i], p - vs[i]) > 0;
            if (strictly_inside) ++interior;
        }
    }
    long long area2 = 2 * interior + boundary - 2;  // Pick
    long long v = static_cast<long long>(n);
    return ChernTuple{area2, -boundary, 12 - v, v};
}

} // namespace

TEST_CASE("standard polygons validate") {
    auto p2 = make_p2(3);
    CHECK(p2.vertex_count() == 3);
    auto quadric = make_p1xp1(2, 1);
    CHECK(quadric.vertex_count() == 4);
    auto cut = try_make_cut_triangle(3, 1, 0, 0);
    REQUIRE(cut.has_value());
    CHECK(cut->vertex_count() == 4);
    auto twice_cut = try_make_cut_triangle(3, 1, 1, 0);
    REQUIRE(twice_cut.has_value());
    CHECK(twice_cut->vertex_count() == 5);
    CHECK(twice_cut->chern().t == 5);
}

TEST_CASE("invalid polygons are rejected") {
    CHECK_THROWS_AS(surface_from_polygon({{0, 0}, {1, 0}}), invalid_polygon_error);
    // reflex vertex
    CHECK_THROWS_AS(surface_from_polygon({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}}),
                    invalid_polygon_error);
    // collinear vertex: midpoint of an edge listed as a vertex
    CHECK_THROWS_AS(surface_from_polygon({{0, 0}, {1, 0}, {2, 0}, {0, 2}}),
                    invalid_polygon_error);
    // duplicate vertex
    CHECK_THROWS_AS(surface_from_polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}),
                    invalid_polygon_error);
    // non-unimodular corner: cone at (0,0) spanned by (1,2) and (2,1)
    CHECK_THROWS_AS(surface_from_polygon({{0, 0}, {2, 1}, {3, 3}, {1, 2}}),
                    non_smooth_surface_error);
}

TEST_CASE("clockwise input is normalized") {
    auto ccw = surface_from_polygon({{0, 0}, {2, 0}, {0, 2}});
    auto cw = surface_from_polygon({{0, 0}, {0, 2}, {2, 0}});
    CHECK(ccw.key() == cw.key());
    CHECK(ccw.chern() == cw.chern());
}

TEST_CASE("chern numbers of the standard examples") {
    CHECK(make_p2(3).chern() == ChernTuple{9, -9, 9, 3});
    CHECK(make_p1xp1(1, 1).chern() == ChernTuple{2, -4, 8, 4});
    SurfaceInstance two_planes({make_p2(1), make_p2(1)}, "P2+P2");
    CHECK(two_planes.chern() == ChernTuple{2, -6, 18, 6});
}

TEST_CASE("chern numbers agree with the lattice point oracle") {
    for (const auto& s : generator_components()) {
        ChernTuple got = s.chern();
        ChernTuple want = chern_oracle(s);
        INFO(s.name());
        CHECK(got == want);
        CHECK(got.z + got.t == 12);
        // arithmetic genus from the polygon equals 1 + (x+y)/2
        CHECK((got.x + got.y) % 2 == 0);
    }
}

TEST_CASE("chern numbers are additive over disjoint unions") {
    auto pool = generator_components();
    for (std::size_t i = 0; i + 1 < pool.size(); i += 5) {
        SurfaceInstance u({pool[i], pool[i + 1]}, "u");
        ChernTuple c = u.chern();
        ChernTuple a = pool[i].chern();
        ChernTuple b = pool[i + 1].chern();
        CHECK(c == a + b);
        CHECK(c.z + c.t == 24);
    }
}

TEST_CASE("generator library shape") {
    auto lib = generator_library(4);
    CHECK(lib.size() >= 70);
    std::set<std::size_t> sizes;
    for (const auto& inst : lib) sizes.insert(inst.components.size());
    for (std::size_t m = 1; m <= 5; ++m) CHECK(sizes.count(m) == 1);
    for (const auto& inst : lib) {
        ChernTuple c = inst.chern();
        CHECK(c.z + c.t == 12 * static_cast<long long>(inst.components.size()));
    }

    auto [a, b] = generator_library_split(4);
    CHECK(a.size() >= 70);
    CHECK(b.size() >= 70);
    std::set<std::string> keys_a, keys_b;
    for (const auto& inst : a)
        for (const auto& c : inst.components) keys_a.insert(c.key());
    for (const auto& inst : b)
        for (const auto& c : inst.components) keys_b.insert(c.key());
    for (const auto& k : keys_a) CHECK(keys_b.count(k) == 0);
}

TEST_CASE("ampleness advisory") {
    CHECK_FALSE(ampleness_advisory(SurfaceInstance(make_p2(3)), 3).warn);
    auto warned = ampleness_advisory(SurfaceInstance(make_p2(2)), 3);
    CHECK(warned.warn);
    CHECK(warned.message.find("delta") != std::string::npos);
    CHECK_FALSE(ampleness_advisory(SurfaceInstance(make_p2(1)), 0).warn);
    // a union warns if any component falls short
    SurfaceInstance u({make_p2(4), make_p1xp1(1, 4)}, "u");
    CHECK(ampleness_advisory(u, 3).warn);
}

TEST_CASE("surface json round trip and validation") {
    nlohmann::json doc = {{"name", "cubic"}, {"polygon", {{0, 0}, {3, 0}, {0, 3}}}};
    SurfaceInstance inst = surface_from_json(doc);
    CHECK(inst.chern() == ChernTuple{9, -9, 9, 3});
    CHECK(surface_from_json(surface_to_json(inst)).key() == inst.key());

    nlohmann::json udoc = {{"name", "pair"},
                           {"union", {{{"polygon", {{0, 0}, {1, 0}, {0, 1}}}},
                                      {{"polygon", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}}}}};
    SurfaceInstance uinst = surface_from_json(udoc);
    CHECK(uinst.components.size() == 2);
    CHECK(surface_from_json(surface_to_json(uinst)).key() == uinst.key());

    // floats are rejected with field context
    nlohmann::json bad = {{"polygon", {{0, 0}, {3.5, 0}, {0, 3}}}};
    CHECK_THROWS_WITH(surface_from_json(bad),
                      Catch::Matchers::ContainsSubstring("polygon[1][0]"));
    // both or neither of polygon/union
    CHECK_THROWS_AS(surface_from_json(nlohmann::json::object()), usage_error);
}
