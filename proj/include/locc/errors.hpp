#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locc {

/// Operands of mismatched qubit counts.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An operand outside the domain of an operation (non-Clifford matrix, bad vertex, ...).
struct InvalidOperand : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rows that do not form a full-rank commuting set of Hermitian Paulis.
struct InvalidTableau : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A code description that violates the [[n,1]] stabilizer code requirements.
struct InvalidCode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A protocol reads a classical variable its party has not received.
struct ProtocolOrderError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Hierarchy analysis requested on a graph that is not a tree.
struct UnsupportedTopology : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense statevector simulation requested beyond the configured qubit limit.
struct OracleLimitError : std::length_error {
    using std::length_error::length_error;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

   private:
    static std::string format(const std::string &message, std::size_t line, std::size_t column) {
        if (line == 0) {
            return message;
        }
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

}  // namespace locc
