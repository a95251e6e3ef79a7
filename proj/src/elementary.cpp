#include "dtm/elementary.hpp"

#include <cmath>
#include <limits>

#include "dtm/errors.hpp"
#include "dtm/format.hpp"

namespace dtm {

namespace {

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

std::vector<double> exp_coeffs(double lambda, double a, int order) {
    std::vector<double> c(order + 1);
    c[0] = std::exp(a * lambda);
    for (int k = 1; k <= order; ++k) c[k] = c[k - 1] * lambda / k;
    return c;
}

std::vector<double> ln_coeffs(double a, int order) {
    if (!(a > 0.0)) throw domain_error("ln", a);
    std::vector<double> c(order + 1);
    c[0] = std::log(a);
    double ipow = 1.0;  // a^(-k), built one factor at a time
    for (int k = 1; k <= order; ++k) {
        ipow /= a;
        c[k] = (k % 2 ? ipow : -ipow) / k;
    }
    return c;
}

std::vector<double> pow_coeffs(double lambda, double a, int order) {
    if (is_integer(lambda)) {
        if (lambda < 0.0 && a == 0.0)
            throw domain_error("x^" + format_double(lambda), a);
    } else if (!(a > 0.0)) {
        throw domain_error("x^" + format_double(lambda), a);
    }
    std::vector<double> c(order + 1);
    double binom = 1.0;  // C(lambda, k), updated multiplicatively
    for (int k = 0; k <= order; ++k) {
        if (k > 0) binom *= (lambda - (k - 1)) / k;
        // For non-negative integer lambda the binomial run hits exact zero
        // past k = lambda; skip the power to avoid 0 * inf at a = 0.
        c[k] = binom == 0.0 ? 0.0 : binom * std::pow(a, lambda - k);
    }
    return c;
}

}  // namespace

std::string outer_function::name() const {
    switch (kind_) {
        case outer_kind::exp:
            return lambda_ == 1.0 ? "exp" : "exp(" + format_double(lambda_) + "*x)";
        case outer_kind::ln:
            return "ln";
        case outer_kind::pow:
            return "x^" + format_double(lambda_);
    }
    return "?";
}

jet outer_coeffs(const outer_function& f, double a, int order) {
    if (order < 0)
        throw std::invalid_argument("outer_coeffs: order must be non-negative");
    switch (f.kind()) {
        case outer_kind::exp:
            return jet(a, exp_coeffs(f.lambda(), a, order));
        case outer_kind::ln:
            return jet(a, ln_coeffs(a, order));
        case outer_kind::pow:
            return jet(a, pow_coeffs(f.lambda(), a, order));
    }
    throw std::invalid_argument("outer_coeffs: unknown function kind");
}

double domain_margin(const outer_function& f, double a) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (f.kind()) {
        case outer_kind::exp:
            return inf;
        case outer_kind::ln:
            return a;  // singular boundary at 0, negative when already outside
        case outer_kind::pow:
            if (is_integer(f.lambda()))
                return f.lambda() < 0.0 ? std::abs(a) : inf;
            return a;
    }
    return inf;
}

}  // namespace dtm
