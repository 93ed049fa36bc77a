#pragma once

#include <stdexcept>
#include <string>

namespace pcycle {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Composition produced a permutation with a fixed point.
class NotDerangement : public Error {
public:
    using Error::Error;
};

/// A cycle arc maps onto the diagonal of the cost matrix.
class LoopArc : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

class DiagonalNotInf : public Error {
public:
    using Error::Error;
};

class NonSquare : public Error {
public:
    using Error::Error;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

class Infeasible : public Error {
public:
    using Error::Error;
};

/// Predecessor chain did not terminate within n steps.
class CorruptTable : public Error {
public:
    using Error::Error;
};

class NoTourFound : public Error {
public:
    using Error::Error;
};

/// Broken internal guarantee (e.g. pass limit exceeded).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace pcycle
