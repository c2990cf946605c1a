#pragma once

#include <stdexcept>
#include <string>

namespace wpb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, automaton files, partitions).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? what
                          : "line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input violating a structural rule (partition coverage, action roles).
class FormatError : public Error {
public:
    using Error::Error;
};

class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of an operation (unknown state, mismatched partition).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A scheduler refers to a transition that is not enabled where it is used.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A solution handed to an operation does not belong to the problem it claims to solve.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An internal invariant failed: a solver answer did not survive re-checking,
/// or two routes that must agree disagreed.
class SoundnessError : public Error {
public:
    using Error::Error;
};

}  // namespace wpb
