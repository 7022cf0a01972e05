#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "nodal/errors.hpp"

namespace nodal {

/// Runtime configuration. Every field can be overridden through a
/// NODAL_-prefixed environment variable; CLI flags win over both.
struct Config {
    int max_delta = 4;
    int sample_count = 3;
    std::uint64_t rng_seed = 0x5eedULL;
    std::string cache_path = ".nodal_cache";
    int thread_count = 0;  // 0 = auto

    void validate() const {
        if (max_delta < 0) throw usage_error("config: max_delta must be >= 0");
        if (sample_count < 2) throw usage_error("config: sample_count must be >= 2");
        if (thread_count < 0) throw usage_error("config: thread_count must be >= 0");
    }
};

namespace detail {

inline long long parse_ll(const char* text, const std::string& name) {
    char* end = nullptr;
    long long v = std::strtoll(text, &end, 10);
    if (end == text || *end != '\0')
        throw usage_error("config: " + name + " must be an integer, got '" + text + "'");
    return v;
}

} // namespace detail

/// Apply NODAL_* environment overrides to a configuration.
inline Config apply_env_overrides(Config cfg) {
    if (const char* v = std::getenv("NODAL_MAX_DELTA"))
        cfg.max_delta = static_cast<int>(detail::parse_ll(v, "NODAL_MAX_DELTA"));
    if (const char* v = std::getenv("NODAL_SAMPLE_COUNT"))
        cfg.sample_count = static_cast<int>(detail::parse_ll(v, "NODAL_SAMPLE_COUNT"));
    if (const char* v = std::getenv("NODAL_RNG_SEED"))
        cfg.rng_seed = static_cast<std::uint64_t>(detail::parse_ll(v, "NODAL_RNG_SEED"));
    if (const char* v = std::getenv("NODAL_CACHE_PATH")) cfg.cache_path = v;
    if (const char* v = std::getenv("NODAL_THREAD_COUNT"))
        cfg.thread_count = static_cast<int>(detail::parse_ll(v, "NODAL_THREAD_COUNT"));
    return cfg;
}

} // namespace nodal
