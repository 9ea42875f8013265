#pragma once

#include <stdexcept>
#include <string>

namespace cayspec {

// Thrown when a requested computation exceeds the documented size caps
// (dense eigensolver, exhaustive subset enumeration, matrix walk counts).
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two internal computation routes disagree.  This always
// signals a bug in this library, never bad user input.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Thrown when a proposed connection set fails validation (contains 0,
// misses an inverse, ...).  The message names the offending element.
class InvalidConnectionSetError : public std::invalid_argument {
public:
    explicit InvalidConnectionSetError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace cayspec
