#pragma once

#include <stdexcept>
#include <string>

namespace lscc {

struct shape_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct invalid_support_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a prover is driven outside the round order it expects.
struct protocol_order_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct degenerate_functional_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct unsupported_mode_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace lscc
