#pragma once

#include <stdexcept>
#include <string>

namespace totlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside an operation's stated domain (n = 0, limit too large, ...).
struct RangeError : Error {
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

// A result does not fit the result type.
struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

// A computation gave up within its configured budget (rho iterations, memory cap).
struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error(msg) {}
};

// Linear congruence with gcd(a, m) not dividing b.
struct NoSolutionError : Error {
    explicit NoSolutionError(const std::string& msg) : Error(msg) {}
};

// CRT over moduli that share a factor.
struct NotCoprimeError : Error {
    explicit NotCoprimeError(const std::string& msg) : Error(msg) {}
};

// Malformed user input (unparsable integer, unknown flag).
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& msg) : Error(msg) {}
};

// An internal cross-check failed; never expected to fire. CLI maps this to exit 2.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

} // namespace totlab
