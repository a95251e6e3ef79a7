#include "dtm/expr.hpp"

#include "dtm/format.hpp"

namespace dtm {

outer_function to_outer_function(builtin_func f) {
    switch (f) {
        case builtin_func::exp:
            return outer_function::exponential(1.0);
        case builtin_func::ln:
            return outer_function::logarithm();
        case builtin_func::sqrt:
            return outer_function::sqrt();
    }
    throw std::invalid_argument("to_outer_function: unknown builtin");
}

namespace {

expr_ptr make(expr_kind kind, double value = 0.0, builtin_func func = builtin_func::exp,
              expr_ptr left = nullptr, expr_ptr right = nullptr) {
    expr e;
    e.kind = kind;
    e.value = value;
    e.func = func;
    e.left = std::move(left);
    e.right = std::move(right);
    return std::make_shared<const expr>(std::move(e));
}

const char* func_name(builtin_func f) {
    switch (f) {
        case builtin_func::exp:
            return "exp";
        case builtin_func::ln:
            return "ln";
        case builtin_func::sqrt:
            return "sqrt";
    }
    return "?";
}

}  // namespace

expr_ptr expr::constant(double c) { return make(expr_kind::constant, c); }
expr_ptr expr::var_t() { return make(expr_kind::var_t); }
expr_ptr expr::var_u() { return make(expr_kind::var_u); }

expr_ptr expr::negate(expr_ptr a) {
    return make(expr_kind::negate, 0.0, builtin_func::exp, std::move(a));
}

expr_ptr expr::add(expr_ptr a, expr_ptr b) {
    return make(expr_kind::add, 0.0, builtin_func::exp, std::move(a), std::move(b));
}

expr_ptr expr::subtract(expr_ptr a, expr_ptr b) {
    return make(expr_kind::subtract, 0.0, builtin_func::exp, std::move(a), std::move(b));
}

expr_ptr expr::multiply(expr_ptr a, expr_ptr b) {
    return make(expr_kind::multiply, 0.0, builtin_func::exp, std::move(a), std::move(b));
}

expr_ptr expr::divide(expr_ptr a, expr_ptr b) {
    return make(expr_kind::divide, 0.0, builtin_func::exp, std::move(a), std::move(b));
}

expr_ptr expr::power(expr_ptr base, double exponent) {
    return make(expr_kind::power, exponent, builtin_func::exp, std::move(base));
}

expr_ptr expr::apply(builtin_func f, expr_ptr arg) {
    return make(expr_kind::apply, 0.0, f, std::move(arg));
}

bool structurally_equal(const expr& a, const expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case expr_kind::constant:
        case expr_kind::power:
            if (a.value != b.value) return false;
            break;
        case expr_kind::apply:
            if (a.func != b.func) return false;
            break;
        default:
            break;
    }
    if ((a.left == nullptr) != (b.left == nullptr)) return false;
    if (a.left && !structurally_equal(*a.left, *b.left)) return false;
    if ((a.right == nullptr) != (b.right == nullptr)) return false;
    if (a.right && !structurally_equal(*a.right, *b.right)) return false;
    return true;
}

namespace {

// Binding strength used to decide where parentheses are required.
// additive < multiplicative < unary minus < power < atoms.
int precedence(const expr& e) {
    switch (e.kind) {
        case expr_kind::add:
        case expr_kind::subtract:
            return 1;
        case expr_kind::multiply:
        case expr_kind::divide:
            return 2;
        case expr_kind::negate:
            return 3;
        case expr_kind::power:
            return 4;
        default:
            return 5;
    }
}

void render(const expr& e, int min_prec, std::string& out) {
    int prec = precedence(e);
    bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (e.kind) {
        case expr_kind::constant:
            out += format_double(e.value);
            break;
        case expr_kind::var_t:
            out += 't';
            break;
        case expr_kind::var_u:
            out += 'u';
            break;
        case expr_kind::negate:
            out += '-';
            render(*e.left, prec, out);
            break;
        case expr_kind::add:
        case expr_kind::subtract:
        case expr_kind::multiply:
        case expr_kind::divide: {
            const char* op = e.kind == expr_kind::add        ? " + "
                             : e.kind == expr_kind::subtract ? " - "
                             : e.kind == expr_kind::multiply ? "*"
                                                             : "/";
            render(*e.left, prec, out);
            out += op;
            render(*e.right, prec + 1, out);  // left-associative chains
            break;
        }
        case expr_kind::power:
            // The grammar only allows a `base` production before '^'.
            render(*e.left, 5, out);
            out += '^';
            out += format_double(e.value);
            break;
        case expr_kind::apply:
            out += func_name(e.func);
            out += '(';
            render(*e.left, 0, out);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const expr& e) {
    std::string out;
    render(e, 0, out);
    return out;
}

}  // namespace dtm
