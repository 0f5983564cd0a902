#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subcoord {

/// A caller broke a documented precondition (mismatched ambients, a subspace
/// that should contain another but does not, and so on).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// An operation declined to run because an input exceeds a size guard or is
/// outside the domain the operation supports. `guard()` names the limit.
class Refusal : public std::runtime_error {
public:
    Refusal(std::string guard, const std::string& what)
        : std::runtime_error(what), guard_(std::move(guard)) {}
    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

/// Malformed scheme, family or formula text. `line()` is 1-based; 0 means
/// the error is not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace subcoord
