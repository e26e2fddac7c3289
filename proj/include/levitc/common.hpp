#pragma once

#include <stdexcept>
#include <string>

namespace levitc {

inline constexpr const char* version_string = "0.1.0";

// Error taxonomy. The CLI maps these to exit codes: config_error (and
// subclasses) -> 2, grid_infeasible -> 3; everything else is an internal
// failure.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

// Parameter set violates a model invariant (bad family, negative vol, ...).
struct model_error : config_error {
    using config_error::config_error;
};

// A jump-measure operation was requested for a family without jumps.
struct no_jump_component : error {
    using error::error;
};

// The VG density was evaluated at its z = 0 singularity.
struct singular_point : error {
    using error::error;
};

// Nonsensical truncation level (epsilon <= 0 where a positive one is needed).
struct invalid_truncation : config_error {
    using config_error::config_error;
};

// A discretization violates stability/positivity constraints, or would
// overflow the representable value range.
struct grid_infeasible : error {
    using error::error;
};

// Two surfaces/grids that must agree do not.
struct grid_mismatch : error {
    using error::error;
};

} // namespace levitc
