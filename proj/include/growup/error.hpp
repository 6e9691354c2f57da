#pragma once

#include <stdexcept>
#include <string>

namespace growup {

// Bad parameters, violated preconditions, malformed configuration.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Integration or solver failure: step-size underflow, bracket failure,
// escape from an invariant region, non-convergent Newton iteration.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw InvalidInput(message);
    }
}

}  // namespace growup
