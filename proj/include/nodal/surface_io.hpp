#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nodal/errors.hpp"
#include "nodal/toric.hpp"

namespace nodal {

namespace detail {

inline LatticePoint parse_lattice_point(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw usage_error("surface file: " + where + ": expected a pair [int,int]");
    for (int k = 0; k < 2; ++k) {
        if (!j[k].is_number_integer())
            throw usage_error("surface file: " + where + "[" + std::to_string(k) +
                              "]: expected an exact integer (floats are not accepted)");
    }
    return LatticePoint{j[0].get<long long>(), j[1].get<long long>()};
}

inline PolarizedToricSurface parse_polygon(const nlohmann::json& j, const std::string& where,
                                           const std::string& name) {
    if (!j.is_array() || j.size() < 3)
        throw usage_error("surface file: " + where + ": expected an array of >= 3 lattice points");
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < j.size(); ++i)
        pts.push_back(parse_lattice_point(j[i], where + "[" + std::to_string(i) + "]"));
    return surface_from_polygon(std::move(pts), name);
}

} // namespace detail

/// Parse a surface description document:
///   {"name": "...", "polygon": [[0,0],[3,0],[0,3]]}
/// or a disjoint union:
///   {"name": "...", "union": [{"polygon": [...]}, ...]}
inline SurfaceInstance surface_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw usage_error("surface file: top level must be an object");
    std::string name = doc.contains("name") && doc["name"].is_string()
                           ? doc["name"].get<std::string>()
                           : std::string{};
    const bool has_polygon = doc.contains("polygon");
    const bool has_union = doc.contains("union");
    if (has_polygon == has_union)
        throw usage_error("surface file: need exactly one of the fields 'polygon' or 'union'");

    if (has_polygon) {
        return SurfaceInstance(detail::parse_polygon(doc["polygon"], "polygon", name));
    }
    const auto& u = doc["union"];
    if (!u.is_array() || u.empty())
        throw usage_error("surface file: 'union' must be a non-empty array");
    std::vector<PolarizedToricSurface> comps;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const std::string where = "union[" + std::to_string(i) + "]";
        if (u[i].is_object() && u[i].contains("polygon")) {
            std::string cname = u[i].contains("name") && u[i]["name"].is_string()
                                    ? u[i]["name"].get<std::string>()
                                    : name + "#" + std::to_string(i);
            comps.push_back(detail::parse_polygon(u[i]["polygon"], where + ".polygon", cname));
        } else if (u[i].is_array()) {
            comps.push_back(detail::parse_polygon(u[i], where, name + "#" + std::to_string(i)));
        } else {
            throw usage_error("surface file: " + where +
                              ": expected a polygon array or an object with a 'polygon' field");
        }
    }
    return SurfaceInstance(std::move(comps), name);
}

inline SurfaceInstance load_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("surface file: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error("surface file '" + path + "': " + e.what());
    }
    return surface_from_json(doc);
}

inline nlohmann::json surface_to_json(const SurfaceInstance& instance) {
    auto polygon_json = [](const PolarizedToricSurface& s) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : s.vertices()) arr.push_back({p.x, p.y});
        return arr;
    };
    nlohmann::json doc;
    doc["name"] = instance.name;
    if (instance.connected()) {
        doc["polygon"] = polygon_json(instance.components[0]);
    } else {
        nlohmann::json u = nlohmann::json::array();
        for (const auto& c : instance.components) {
            nlohmann::json o;
            o["name"] = c.name();
            o["polygon"] = polygon_json(c);
            u.push_back(o);
        }
        doc["union"] = u;
    }
    return doc;
}

} // namespace nodal
