#pragma once

#include <stdexcept>

namespace ainf {

// Malformed input text or JSON.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input is well formed but violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal invariant failed, e.g. a negative barcode multiplicity.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ainf
