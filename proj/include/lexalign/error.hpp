#pragma once

#include <stdexcept>
#include <string>

namespace lexalign {

// Bad command usage: unknown flags, missing arguments.  CLI exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data: bad file rows, unknown level
// codes, out-of-vocabulary tokens.  CLI exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite losses or divergence during optimization.  CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lexalign

