#pragma once

#include <stdexcept>
#include <string>

namespace khk {

// Input text does not conform to the PD / graph-PD grammar.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structurally well-formed input that violates a diagram invariant
// (label multiplicity, unknown arc, degree-0 vertex, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Diagram exceeds the configured crossing cap.
class CapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal consistency failure: d^2 != 0, a saddle that does not change the
// circle count, mismatched block dimensions. These indicate a corrupted
// complex (or non-realizable input), never a user error.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace khk
