#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Caller misuse: bad arguments, mismatched shapes, malformed input files.
/// The CLI maps this to exit code 2.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Arithmetic on an input that is singular for the requested operation
/// (non-invertible constant term, zero denominator).
class singular_input_error : public std::domain_error {
public:
    explicit singular_input_error(const std::string& msg) : std::domain_error(msg) {}
};

/// Polygon fails to describe a polarized surface.
class invalid_polygon_error : public usage_error {
public:
    explicit invalid_polygon_error(const std::string& msg) : usage_error(msg) {}
};

/// Polygon is a valid convex lattice polygon but some vertex cone is not
/// unimodular, so the associated surface is singular.
class non_smooth_surface_error : public usage_error {
public:
    explicit non_smooth_surface_error(const std::string& msg) : usage_error(msg) {}
};

/// A cross-check that should hold identically has failed. Indicates a bug,
/// not bad user input. The CLI maps this to exit code 3.
class internal_inconsistency_error : public std::logic_error {
public:
    explicit internal_inconsistency_error(const std::string& msg) : std::logic_error(msg) {}
};

/// The generator family does not span the requested monomial basis.
class insufficient_generators_error : public std::runtime_error {
public:
    explicit insufficient_generators_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Too many equivariant samples in a row were degenerate.
class resample_exhausted_error : public internal_inconsistency_error {
public:
    explicit resample_exhausted_error(const std::string& msg) : internal_inconsistency_error(msg) {}
};

} // namespace nodal
