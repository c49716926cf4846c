#ifndef DRIFG_ERRORS_HPP
#define DRIFG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drifg {

// Error taxonomy mirrors the CLI exit codes: config 2, dimension/format 3,
// numerical 4.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace drifg

#endif
