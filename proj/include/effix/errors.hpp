#pragma once

#include <stdexcept>
#include <string>

namespace effix {

/// Malformed or inconsistent input: bad documents, unknown labels, violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size cap (factorial cap, enumeration cap) would be exceeded.
class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace effix
