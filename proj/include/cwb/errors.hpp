#pragma once

#include <stdexcept>

namespace cwb {

// Malformed or invalid user-supplied data (algebra files, cochain files,
// violated algebra invariants).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was called on data that does not meet its precondition, such
// as a non-cocycle handed to the cobounding recursion.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cwb
