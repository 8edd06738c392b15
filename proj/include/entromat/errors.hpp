#pragma once

#include <stdexcept>
#include <string>

namespace entromat {

// Input could not be parsed or has the wrong shape (bad JSON, wrong table
// length, symbol out of range).  CLI maps this to exit code 2.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Request is well-formed but outside the caps this toolkit supports
// (ground set too large, alphabet too large, ...).  CLI exit code 3.
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace entromat
