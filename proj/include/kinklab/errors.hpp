#ifndef KINKLAB_ERRORS_HPP
#define KINKLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kinklab {

// Bad user input (config values, parameter ranges). CLI maps this to exit 2.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver failed to reach its tolerance. CLI maps this to exit 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Request beyond what the object can provide (e.g. derivative order above cap).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kinklab

#endif
