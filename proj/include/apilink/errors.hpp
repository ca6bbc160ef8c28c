#pragma once

#include <stdexcept>

namespace apilink {

// Bad user-supplied input (malformed files, unknown ids, invalid flags).
// The CLI maps this to exit code 1; internal bugs surface as logic_error
// and map to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace apilink
