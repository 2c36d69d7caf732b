#pragma once

#include <stdexcept>
#include <string>

namespace bdk {

// Malformed arguments: zeros outside the disk, non-finite coefficients, empty generator sets.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A point fell outside the evaluation radius guard; series tails are no longer controlled there.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Counting-function target at phi(0), where the closed form has its log pole.
struct SingularTarget : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace bdk
