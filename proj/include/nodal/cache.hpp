#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nodal/errors.hpp"
#include "nodal/multipoly.hpp"
#include "nodal/poly_json.hpp"
#include "nodal/toric.hpp"
#include "nodal/version.hpp"

namespace nodal {

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

/// Identity of a generator library: hash of the sorted instance keys.
inline std::string library_hash(const std::vector<SurfaceInstance>& library) {
    std::vector<std::string> keys;
    keys.reserve(library.size());
    for (const auto& inst : library) keys.push_back(inst.key());
    std::sort(keys.begin(), keys.end());
    std::string all;
    for (const auto& k : keys) all += k + "\n";
    return fnv1a_hex(all);
}

/// Disk cache of fitted polynomials, keyed by (i, delta, library hash,
/// code version). Entries hold verified fits, so reloading skips the
/// localization work entirely.
class FitCache {
public:
    explicit FitCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::optional<MultiPoly> get(int i, int delta, const std::string& lib_hash) const {
        std::filesystem::path p = path_for(i, delta, lib_hash);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        try {
            nlohmann::json doc = nlohmann::json::parse(in);
            if (doc.value("schema", "") != kSchema) return std::nullopt;
            if (doc.value("version", "") != kVersion) return std::nullopt;
            return terms_from_json(doc.at("terms"));
        } catch (...) {
            return std::nullopt;  // unreadable cache entries are ignored
        }
    }

    void put(int i, int delta, const std::string& lib_hash, const MultiPoly& poly) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        nlohmann::json doc;
        doc["schema"] = kSchema;
        doc["version"] = kVersion;
        doc["i"] = i;
        doc["delta"] = delta;
        doc["library_hash"] = lib_hash;
        doc["terms"] = terms_to_json(poly);
        std::ofstream out(path_for(i, delta, lib_hash));
        if (!out) return;  // caching is best effort
        out << doc.dump(2) << "\n";
    }

    struct Entry {
        std::string file;
        int i = 0;
        int delta = 0;
        std::string library_hash;
        std::string version;
    };

    std::vector<Entry> inspect() const {
        std::vector<Entry> out;
        std::error_code ec;
        if (!std::filesystem::is_directory(dir_, ec)) return out;
        for (const auto& de : std::filesystem::directory_iterator(dir_, ec)) {
            if (!de.is_regular_file() || de.path().extension() != ".json") continue;
            std::ifstream in(de.path());
            try {
                nlohmann::json doc = nlohmann::json::parse(in);
                if (doc.value("schema", "") != kSchema) continue;
                out.push_back(Entry{de.path().filename().string(), doc.value("i", -1),
                                    doc.value("delta", -1), doc.value("library_hash", ""),
                                    doc.value("version", "")});
            } catch (...) {
                continue;
            }
        }
        std::sort(out.begin(), out.end(),
                  [](const Entry& a, const Entry& b) { return a.file < b.file; });
        return out;
    }

    std::size_t clear() const {
        std::size_t removed = 0;
        std::error_code ec;
        if (!std::filesystem::is_directory(dir_, ec)) return removed;
        for (const auto& de : std::filesystem::directory_iterator(dir_, ec)) {
            if (de.is_regular_file() && de.path().extension() == ".json") {
                std::filesystem::remove(de.path(), ec);
                if (!ec) ++removed;
            }
        }
        return removed;
    }

private:
    static constexpr const char* kSchema = "nodal-fit-cache-v1";

    std::filesystem::path path_for(int i, int delta, const std::string& lib_hash) const {
        return dir_ / ("fit_i" + std::to_string(i) + "_d" + std::to_string(delta) + "_" +
                       lib_hash + "_v" + std::string(kVersion) + ".json");
    }

    std::filesystem::path dir_;
};

} // namespace nodal
