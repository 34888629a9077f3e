#ifndef SKEL_ERRORS_HPP
#define SKEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skel {

// Bad user input: duplicate points, parse failures, too few points.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Valid input, but the requested combination is not served
// (e.g. batched with beta <= 2, circle-based variant with beta < 1).
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A documented precondition of a library operation was violated.
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace skel

#endif
