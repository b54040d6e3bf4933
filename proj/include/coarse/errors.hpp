#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coarse {

// Thrown by parsers for the reduction / set expression language and for
// malformed config or artifact files. `position` is a byte offset into the
// offending text when one is known, std::string::npos otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position = std::string::npos)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A query needed bits beyond the committed prefix. `required` is the least
// prefix length that would make the query answerable.
class InsufficientPrefix : public std::runtime_error {
public:
    InsufficientPrefix(const std::string& what, std::uint64_t required)
        : std::runtime_error(what), required_(required) {}
    std::uint64_t required() const { return required_; }

private:
    std::uint64_t required_;
};

// An input sequence failed a stated hypothesis at a specific interval index.
class HypothesisViolation : public std::runtime_error {
public:
    HypothesisViolation(const std::string& what, std::uint64_t index)
        : std::runtime_error(what), index_(index) {}
    std::uint64_t index() const { return index_; }

private:
    std::uint64_t index_;
};

// Rejection sampling exhausted its retry budget.
class SelectionFailure : public std::runtime_error {
public:
    SelectionFailure(const std::string& what, std::uint64_t retries)
        : std::runtime_error(what), retries_(retries) {}
    std::uint64_t retries() const { return retries_; }

private:
    std::uint64_t retries_;
};

// A requested computation exceeds a hard resource guard (e.g. factorial
// interval indices past what fits in 64 bits).
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace coarse
