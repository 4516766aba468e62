#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace perigee {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (e.g. n does not divide p-1).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configurable computation budget ran out: prime-search ceiling,
/// factorization effort, enumeration size, precision escalation cap or
/// root-finding iterations.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (sequence CSV, plan JSON, polynomial, rational).
class ParseError : public Error {
public:
    using Error::Error;
};

/// The polynomial vanishes at a root of unity; carries the cyclotomic index.
class DegenerateError : public Error {
public:
    DegenerateError(std::uint64_t cyclotomic_index, const std::string& what)
        : Error(what), index_(cyclotomic_index) {}

    std::uint64_t cyclotomic_index() const noexcept { return index_; }

private:
    std::uint64_t index_;
};

/// A count sequence failed the orbit-counting realizability test where one
/// was required.
class RealizabilityError : public Error {
public:
    RealizabilityError(std::uint64_t n, const std::string& what) : Error(what), n_(n) {}

    /// First index at which L_n < 0 or n does not divide L_n.
    std::uint64_t offending_n() const noexcept { return n_; }

private:
    std::uint64_t n_;
};

}  // namespace perigee
