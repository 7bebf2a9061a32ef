#pragma once

#include <stdexcept>
#include <string>

namespace ospvoa {

/// Base of every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct empty_series : error {
    empty_series() : error("EmptySeries: series has no terms") {}
};

struct nonconvergent_domain : error {
    explicit nonconvergent_domain(const std::string& what)
        : error("NonconvergentDomain: " + what) {}
};

struct invalid_index : error {
    explicit invalid_index(const std::string& what) : error("InvalidIndex: " + what) {}
};

struct invalid_label : error {
    explicit invalid_label(const std::string& what) : error("InvalidLabel: " + what) {}
};

struct invalid_level : error {
    explicit invalid_level(const std::string& what) : error("InvalidLevel: " + what) {}
};

struct out_of_range : error {
    explicit out_of_range(const std::string& what) : error("OutOfRange: " + what) {}
};

struct non_integral_fusion : error {
    explicit non_integral_fusion(const std::string& what)
        : error("NonIntegralFusion: " + what) {}
};

struct inconsistent_branching : error {
    explicit inconsistent_branching(const std::string& what)
        : error("InconsistentBranching: " + what) {}
};

struct lattice_mismatch : error {
    explicit lattice_mismatch(const std::string& what) : error("LatticeMismatch: " + what) {}
};

} // namespace ospvoa
