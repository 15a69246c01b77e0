#pragma once

#include <stdexcept>
#include <string>

namespace ws {

// Input data breaks a structural or gauge constraint, or an operation's precondition.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical procedure failed an internal consistency check (search exhausted,
// characteristic crossing, unstable step, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ws
