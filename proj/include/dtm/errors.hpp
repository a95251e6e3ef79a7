#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtm {

// Base class for every library-specific failure.  Plain argument misuse
// (wrong sizes, negative orders, mismatched expansion points, ...) is
// reported with std::invalid_argument instead.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by the expression parser.  `offset` is the byte position of the
// offending character in the input text; `expected` lists the token
// descriptions that would have been accepted at that position.
class syntax_error : public error {
public:
    syntax_error(std::size_t offset, std::vector<std::string> expected,
                 const std::string& detail = {})
        : error(build_message(offset, expected, detail)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string build_message(std::size_t offset,
                                     const std::vector<std::string>& expected,
                                     const std::string& detail) {
        std::string msg = "syntax error at offset " + std::to_string(offset);
        if (!detail.empty()) msg += ": " + detail;
        if (!expected.empty()) {
            msg += "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg += (i + 1 == expected.size()) ? " or " : ", ";
                msg += expected[i];
            }
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

// An identifier was applied like a function but is not one of the
// recognised function names.
class unknown_function_error : public syntax_error {
public:
    unknown_function_error(std::size_t offset, std::string name)
        : syntax_error(offset, {"'exp'", "'ln'", "'sqrt'"},
                       "unknown function '" + name + "'"),
          name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// '^' was followed by something other than a numeric literal.
class non_literal_exponent_error : public syntax_error {
public:
    explicit non_literal_exponent_error(std::size_t offset)
        : syntax_error(offset, {"a numeric literal"},
                       "exponents must be numeric literals") {}
};

// An outer function was asked for its expansion outside its domain, e.g.
// ln about a non-positive point.  `function` is a short description such
// as "ln" or "x^-1"; `value` is the offending expansion point.  When the
// failure happens inside a series solve, `order` records the coefficient
// index being computed (-1 when not applicable).
class domain_error : public error {
public:
    domain_error(std::string function, double value, int order = -1, int step = -1)
        : error(build_message(function, value, order, step)),
          function_(std::move(function)),
          value_(value),
          order_(order),
          step_(step) {}

    const std::string& function() const { return function_; }
    double value() const { return value_; }
    int order() const { return order_; }
    int step() const { return step_; }

private:
    static std::string build_message(const std::string& function, double value,
                                     int order, int step) {
        std::string msg = "domain error: " + function +
                          " cannot be expanded about " + std::to_string(value);
        if (order >= 0)
            msg += " (while computing coefficient k=" + std::to_string(order) + ")";
        if (step >= 0) msg += " (at continuation step " + std::to_string(step) + ")";
        return msg;
    }

    std::string function_;
    double value_;
    int order_;
    int step_;
};

// A quotient whose divisor has a vanishing constant coefficient.
class division_by_zero_error : public error {
public:
    explicit division_by_zero_error(int order = -1, int step = -1)
        : error(build_message(order, step)), order_(order), step_(step) {}

    int order() const { return order_; }
    int step() const { return step_; }

private:
    static std::string build_message(int order, int step) {
        std::string msg = "division by zero: divisor has a vanishing constant term";
        if (order >= 0)
            msg += " (while computing coefficient k=" + std::to_string(order) + ")";
        if (step >= 0) msg += " (at continuation step " + std::to_string(step) + ")";
        return msg;
    }

    int order_;
    int step_;
};

}  // namespace dtm
