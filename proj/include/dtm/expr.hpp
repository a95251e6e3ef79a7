#pragma once

#include <memory>
#include <string>

#include "dtm/elementary.hpp"

namespace dtm {

enum class expr_kind {
    constant,   // numeric literal, `value`
    var_t,      // the independent variable
    var_u,      // the unknown function
    negate,     // -left
    add,        // left + right
    subtract,   // left - right
    multiply,   // left * right
    divide,     // left / right
    power,      // left ^ value (literal exponent only)
    apply,      // func(left) with func one of exp, ln, sqrt
};

// The function names the grammar accepts in call position.
enum class builtin_func { exp, ln, sqrt };

// Maps a parsed function name to its outer expansion rule.
outer_function to_outer_function(builtin_func f);

struct expr;
using expr_ptr = std::shared_ptr<const expr>;

// Immutable expression tree node.  `value` carries the literal for
// constant nodes and the exponent for power nodes; `func` is meaningful
// only for apply nodes.
struct expr {
    expr_kind kind = expr_kind::constant;
    double value = 0.0;
    builtin_func func = builtin_func::exp;
    expr_ptr left;
    expr_ptr right;

    static expr_ptr constant(double c);
    static expr_ptr var_t();
    static expr_ptr var_u();
    static expr_ptr negate(expr_ptr a);
    static expr_ptr add(expr_ptr a, expr_ptr b);
    static expr_ptr subtract(expr_ptr a, expr_ptr b);
    static expr_ptr multiply(expr_ptr a, expr_ptr b);
    static expr_ptr divide(expr_ptr a, expr_ptr b);
    static expr_ptr power(expr_ptr base, double exponent);
    static expr_ptr apply(builtin_func f, expr_ptr arg);
};

// Deep structural comparison (kinds, values, functions, children).
bool structurally_equal(const expr& a, const expr& b);

// Grammar-conforming rendering with minimal parentheses; parsing the
// result reproduces the tree whenever every literal in it is printable in
// the grammar (non-negative mantissas).
std::string to_string(const expr& e);

}  // namespace dtm
