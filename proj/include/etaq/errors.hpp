#pragma once

#include <stdexcept>
#include <string>

namespace etaq {

// Thrown when a computation would exceed a configured resource cap
// (series precision or oracle table size). Maps to CLI exit status 3.
struct resource_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace etaq
