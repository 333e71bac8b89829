#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeperm {

// Base class for everything this library throws on bad input or bad state.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside an operation's mathematical domain (order too small,
// wrong parity, t below a family's minimum, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Malformed textual input. `pos` is the byte offset of the first offending
// character in the input string.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

// Instance exceeds a configured size cap.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(what) {}
};

// Persistent state (checkpoint file) failed validation. `record` is the
// zero-based index of the offending record.
class IntegrityError : public Error {
public:
    IntegrityError(const std::string& what, std::size_t record)
        : Error(what + " (record " + std::to_string(record) + ")"), record_(record) {}
    std::size_t record() const { return record_; }

private:
    std::size_t record_;
};

}  // namespace treeperm
