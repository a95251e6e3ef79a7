#include "dtm/parser.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "dtm/errors.hpp"

namespace dtm {

namespace {

enum class token_kind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct token {
    token_kind kind = token_kind::end;
    std::size_t offset = 0;
    std::string text;     // identifier name
    double number = 0.0;  // literal value
};

class lexer {
public:
    explicit lexer(std::string_view text) : text_(text) { advance(); }

    const token& current() const { return cur_; }

    token take() {
        token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        cur_.offset = pos_;
        cur_.text.clear();
        if (pos_ == text_.size()) {
            cur_.kind = token_kind::end;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': cur_.kind = token_kind::plus; ++pos_; return;
            case '-': cur_.kind = token_kind::minus; ++pos_; return;
            case '*': cur_.kind = token_kind::star; ++pos_; return;
            case '/': cur_.kind = token_kind::slash; ++pos_; return;
            case '^': cur_.kind = token_kind::caret; ++pos_; return;
            case '(': cur_.kind = token_kind::lparen; ++pos_; return;
            case ')': cur_.kind = token_kind::rparen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ++pos_;
            cur_.kind = token_kind::ident;
            cur_.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        throw syntax_error(pos_, {},
                           std::string("unexpected character '") + c + "'");
    }

    // digits ('.' digits)? ([eE] [+-]? digits)?
    void lex_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ == text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw syntax_error(pos_, {"a digit"}, "malformed number");
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ == text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                // Not an exponent after all: let `e` lex as an identifier.
                pos_ = mark;
            } else {
                while (pos_ < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        std::string_view lit = text_.substr(start, pos_ - start);
        double value = 0.0;
        auto res = std::from_chars(lit.data(), lit.data() + lit.size(), value);
        if (res.ec != std::errc() || res.ptr != lit.data() + lit.size())
            throw syntax_error(start, {}, "malformed number");
        cur_.kind = token_kind::number;
        cur_.number = value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    token cur_;
};

class parser {
public:
    explicit parser(std::string_view text) : lex_(text) {}

    expr_ptr run() {
        expr_ptr e = parse_expr();
        if (lex_.current().kind != token_kind::end)
            throw syntax_error(lex_.current().offset,
                               {"'+'", "'-'", "'*'", "'/'", "end of input"},
                               "unexpected trailing input");
        return e;
    }

private:
    expr_ptr parse_expr() {
        expr_ptr e = parse_term();
        while (true) {
            token_kind k = lex_.current().kind;
            if (k == token_kind::plus) {
                lex_.take();
                e = expr::add(std::move(e), parse_term());
            } else if (k == token_kind::minus) {
                lex_.take();
                e = expr::subtract(std::move(e), parse_term());
            } else {
                return e;
            }
        }
    }

    expr_ptr parse_term() {
        expr_ptr e = parse_unary();
        while (true) {
            token_kind k = lex_.current().kind;
            if (k == token_kind::star) {
                lex_.take();
                e = expr::multiply(std::move(e), parse_unary());
            } else if (k == token_kind::slash) {
                lex_.take();
                e = expr::divide(std::move(e), parse_unary());
            } else {
                return e;
            }
        }
    }

    expr_ptr parse_unary() {
        if (lex_.current().kind == token_kind::minus) {
            lex_.take();
            return expr::negate(parse_unary());
        }
        return parse_factor();
    }

    expr_ptr parse_factor() {
        expr_ptr base = parse_base();
        if (lex_.current().kind == token_kind::caret) {
            lex_.take();
            if (lex_.current().kind != token_kind::number)
                throw non_literal_exponent_error(lex_.current().offset);
            return expr::power(std::move(base), lex_.take().number);
        }
        return base;
    }

    expr_ptr parse_base() {
        const token& t = lex_.current();
        switch (t.kind) {
            case token_kind::number:
                return expr::constant(lex_.take().number);
            case token_kind::lparen: {
                lex_.take();
                expr_ptr e = parse_expr();
                expect_rparen();
                return e;
            }
            case token_kind::ident: {
                token id = lex_.take();
                if (id.text == "t") return expr::var_t();
                if (id.text == "u") return expr::var_u();
                builtin_func f;
                if (id.text == "exp")
                    f = builtin_func::exp;
                else if (id.text == "ln")
                    f = builtin_func::ln;
                else if (id.text == "sqrt")
                    f = builtin_func::sqrt;
                else
                    throw unknown_function_error(id.offset, id.text);
                if (lex_.current().kind != token_kind::lparen)
                    throw syntax_error(lex_.current().offset, {"'('"},
                                       "function name must be followed by an argument list");
                lex_.take();
                expr_ptr arg = parse_expr();
                expect_rparen();
                return expr::apply(f, std::move(arg));
            }
            default:
                throw syntax_error(t.offset,
                                   {"a number", "'t'", "'u'", "'('", "a function name"},
                                   "expected an operand");
        }
    }

    void expect_rparen() {
        if (lex_.current().kind != token_kind::rparen)
            throw syntax_error(lex_.current().offset, {"')'"}, "unbalanced parentheses");
        lex_.take();
    }

    lexer lex_;
};

}  // namespace

expr_ptr parse(std::string_view text) { return parser(text).run(); }

}  // namespace dtm
