#pragma once

#include <stdexcept>
#include <string>

namespace pi2lab {

/// Bad input: out-of-range parameter, malformed file, unknown option.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that ran but produced an unusable result (blow-up, too few cycles).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

} // namespace detail
} // namespace pi2lab
