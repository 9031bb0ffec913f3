#pragma once

#include <stdexcept>
#include <string>

namespace mev {

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed configuration or scenario input; callers map this to a
// distinct exit code from other runtime failures.
struct validation_error : error {
    explicit validation_error(const std::string& what) : error(what) {}
};

} // namespace mev
