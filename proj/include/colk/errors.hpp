#pragma once

#include <stdexcept>
#include <string>

namespace colk {

/// Invalid run configuration (bad step size, unknown config key, ...).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input data (CSV parse failures carry file:row).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace colk
