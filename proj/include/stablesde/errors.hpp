#pragma once

#include <stdexcept>
#include <string>

namespace stablesde {

// Invalid parameters or malformed inputs. CLI maps this to exit code 1.
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A Monte Carlo run exceeded its path-exclusion budget. CLI exit code 2.
struct study_abort : std::runtime_error {
    explicit study_abort(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures. CLI exit code 3.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace stablesde
