#pragma once

#include <stdexcept>
#include <string>

namespace pulsedemod {

/// Malformed or inconsistent input data: bad CSV cells, sidecar mismatches,
/// truncated binary records. Maps to CLI exit code 2.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Math-level failure on otherwise well-formed data: undefined phase at a
/// zero-magnitude sample, degenerate circle fits, missing spectral peaks.
/// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pulsedemod
