#ifndef CSR_ERROR_HPP
#define CSR_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace csr {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed XML input. Carries the byte offset of the failure when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    explicit ParseError(const std::string& what) : Error(what) {}

    std::optional<std::size_t> offset() const { return offset_; }

private:
    std::optional<std::size_t> offset_;
};

/// Input violates a model invariant (duplicate attribute, bad timestamp, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A node selector did not resolve.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A manifest or encoded digest value is structurally unusable.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace csr

#endif
