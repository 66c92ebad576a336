#pragma once

#include <stdexcept>
#include <string>

namespace walkguess {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two multivariate values with different catalytic arity were combined.
struct arity_mismatch : error {
    explicit arity_mismatch(const std::string& what) : error(what) {}
};

/// A coefficient beyond the valid truncation order was read.
struct order_exceeded : error {
    explicit order_exceeded(const std::string& what) : error(what) {}
};

/// A configured resource cap (states, time, primes) was hit.
struct resource_exceeded : error {
    explicit resource_exceeded(const std::string& what) : error(what) {}
};

/// Fewer terms were supplied than the requested bounds need.
struct insufficient_terms : error {
    explicit insufficient_terms(const std::string& what) : error(what) {}
};

/// Text input failed to parse; carries the byte offset of the failure.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// An argument violated a precondition.
struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

/// A recurrence was unrolled across an index where its leading
/// coefficient vanishes and no explicit value was supplied.
struct exceptional_index : error {
    long index;
    explicit exceptional_index(long n)
        : error("leading coefficient vanishes at index " + std::to_string(n) +
                " and no explicit value was supplied"),
          index(n) {}
};

} // namespace walkguess
