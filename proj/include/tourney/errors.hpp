#pragma once

#include <stdexcept>
#include <string>

namespace tourney {

// Bad argument values or violated call preconditions.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An exhaustive oracle was asked to run above its enforced cap.
struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed tournament text or JSON input.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A guarded extraction was invoked on an instance outside its hypothesis;
// the message names the failed inequality.
struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tourney
