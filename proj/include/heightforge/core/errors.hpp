#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace heightforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root boxes could not be separated before the precision ceiling was reached.
class PrecisionExhausted : public Error {
public:
    using Error::Error;
};

/// A numeric search found candidates that exact arithmetic could not confirm.
class Inconclusive : public Error {
public:
    using Error::Error;
};

class UnsupportedExpression : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class NotTorsion : public Error {
public:
    using Error::Error;
};

/// A monomial of a radical tower lies in the base field.
class Entangled : public Error {
public:
    Entangled(std::string what, std::vector<long> monomial, std::string relation)
        : Error(std::move(what)), monomial_(std::move(monomial)), relation_(std::move(relation)) {}

    const std::vector<long>& monomial() const noexcept { return monomial_; }
    /// Human-readable multiplicative relation among the radicands, empty when
    /// the radicands themselves are independent.
    const std::string& relation() const noexcept { return relation_; }

private:
    std::vector<long> monomial_;
    std::string relation_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error(what), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace heightforge
