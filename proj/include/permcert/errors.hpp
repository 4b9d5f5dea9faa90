#pragma once

#include <stdexcept>
#include <string>

namespace permcert {

// Matrix/operand dimensions do not match the operation's contract.
class ShapeError : public std::runtime_error {
public:
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Input exceeds a documented size cap (see family.hpp for the constants).
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A variable required by an evaluation was not assigned a value.
class MissingAssignment : public std::runtime_error {
public:
    explicit MissingAssignment(const std::string& var)
        : std::runtime_error("unassigned variable " + var), variable(var) {}
    std::string variable;
};

// Structural violation in a graded labeled poset.
class PosetError : public std::runtime_error {
public:
    explicit PosetError(const std::string& what) : std::runtime_error(what) {}
};

// Text input rejected by a parser; carries a 1-based source location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

}  // namespace permcert
