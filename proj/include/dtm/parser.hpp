#pragma once

#include <string_view>

#include "dtm/expr.hpp"

namespace dtm {

// Parses the expression grammar
//   expr   := term (("+" | "-") term)*
//   term   := unary (("*" | "/") unary)*
//   unary  := "-" unary | factor
//   factor := base ("^" number)?
//   base   := number | "t" | "u" | "(" expr ")" | ident "(" expr ")"
//   ident  := "exp" | "ln" | "sqrt"
// over UTF-8 text with insignificant whitespace.  Binary operators at one
// level associate left; '^' accepts only a numeric literal exponent.
// Failures raise syntax_error (or the more specific unknown_function_error
// / non_literal_exponent_error) carrying the byte offset of the offending
// token.
expr_ptr parse(std::string_view text);

}  // namespace dtm
