#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ghm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct PrefixTooShort : Error {
    using Error::Error;
};

struct DuplicateNode : Error {
    using Error::Error;
};

struct InvalidWeight : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct InvalidGrid : Error {
    using Error::Error;
};

struct SandwichViolation : Error {
    using Error::Error;
};

/// Power iteration ran out of iterations; carries the last iterate so the
/// caller can inspect or restart from it.
struct NoConvergence : Error {
    NoConvergence(const std::string& what, double estimate, std::vector<double> iterate)
        : Error(what), last_estimate(estimate), last_iterate(std::move(iterate)) {}
    double last_estimate;
    std::vector<double> last_iterate;
};

} // namespace ghm
