#pragma once

#include <stdexcept>

namespace treespread {

// Caller passed something outside an operation's domain.
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input is valid but the paper-side hypothesis it models excludes it.
struct out_of_scope : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An exhaustive search would exceed its configured cap.
struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition does not hold.
struct precondition_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// A ratio over an empty family.
struct undefined_ratio : std::domain_error {
    using std::domain_error::domain_error;
};

// Conditioning on a probability-zero event.
struct undefined_conditional : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace treespread
