#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hadamard {

/// Failure to turn function text into an Expression.
class ParseError : public std::runtime_error {
public:
    enum class Kind { lex, syntax, unknown_identifier };

    ParseError(Kind kind, std::size_t position, std::string token, const std::string& what)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          kind_(kind), position_(position), token_(std::move(token)) {}

    Kind kind() const noexcept { return kind_; }
    /// Zero-based character offset into the source text.
    std::size_t position() const noexcept { return position_; }
    const std::string& token() const noexcept { return token_; }

private:
    Kind kind_;
    std::size_t position_;
    std::string token_;
};

/// Base for everything that goes wrong while evaluating a parsed function.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, std::string subterm)
        : std::runtime_error(what), subterm_(std::move(subterm)) {}

    /// Printed form of the subexpression that failed.
    const std::string& subterm() const noexcept { return subterm_; }

private:
    std::string subterm_;
};

/// log of a nonpositive value, division by zero, and the like.
class DomainError : public EvaluationError {
public:
    using EvaluationError::EvaluationError;
};

/// Derivative requested where the function has a kink or a singular slope.
class NonDifferentiableError : public EvaluationError {
public:
    using EvaluationError::EvaluationError;
};

} // namespace hadamard
