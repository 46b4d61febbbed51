#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two series (or a series and a scalar) live in different coefficient rings.
class RingMismatchError : public Error {
public:
    RingMismatchError() : Error("ring mismatch") {}
    explicit RingMismatchError(const std::string& what) : Error(what) {}
};

/// Inversion (or negative power) of a series whose constant term is not a unit.
/// When raised during expression evaluation, carries the source span of the
/// offending subexpression.
class NonUnitLeadingError : public Error {
public:
    explicit NonUnitLeadingError(const std::string& what = "leading coefficient is not a unit")
        : Error(what) {}
    NonUnitLeadingError(const std::string& what, std::size_t begin, std::size_t end)
        : Error(what), span_begin(begin), span_end(end), has_span(true) {}

    std::size_t span_begin = 0;
    std::size_t span_end = 0;
    bool has_span = false;
};

/// A coefficient expected to be an integer has a nontrivial denominator.
class NonIntegralCoefficientError : public Error {
public:
    explicit NonIntegralCoefficientError(std::size_t idx)
        : Error("non-integral coefficient at index " + std::to_string(idx)), index(idx) {}
    std::size_t index;
};

/// Exact integer division failed at some coefficient.
class NotDivisibleError : public Error {
public:
    NotDivisibleError(std::size_t idx, const std::string& divisor)
        : Error("coefficient at index " + std::to_string(idx) + " is not divisible by " + divisor),
          index(idx) {}
    std::size_t index;
};

/// A comparison or dissection asked for more coefficients than a series holds.
class InsufficientPrecisionError : public Error {
public:
    explicit InsufficientPrecisionError(const std::string& what = "insufficient precision")
        : Error(what) {}
};

/// A configured cap (precision, partition count, ...) would be exceeded.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(const std::string& what) : Error(what) {}
};

/// Text could not be parsed; reports the byte offset and what was expected.
class ParseError : public Error {
public:
    ParseError(std::size_t pos, const std::string& expected_tokens)
        : Error("parse error at offset " + std::to_string(pos) + ": expected " + expected_tokens),
          position(pos), expected(expected_tokens) {}
    std::size_t position;
    std::string expected;
};

/// Lookup of an identity id that is not in the corpus.
class UnknownIdentityError : public Error {
public:
    explicit UnknownIdentityError(const std::string& id)
        : Error("unknown identity: " + id) {}
};

/// Independent computation routes disagreed where they must not.
class CrossCheckMismatchError : public Error {
public:
    explicit CrossCheckMismatchError(const std::string& what) : Error(what) {}
};

}  // namespace qlab
