#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specseq {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands live over different coefficient fields.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// Matrix shapes or subspace ambients do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An object violates its structural invariants (d^2 != 0, filtration, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A containment or identity that must hold by construction failed.
class InternalError : public Error {
public:
    using Error::Error;
};

/// Malformed serialized input. `offset` is a byte offset when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset = npos)
        : Error(what), offset_(offset) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace specseq
