#pragma once

#include <string>

#include "dtm/jet.hpp"

namespace dtm {

// The outer functions whose expansion coefficients are available in closed
// form: exp(lambda*x), ln(x) and x^lambda.  Square root and reciprocal are
// the powers lambda = 1/2 and lambda = -1.
enum class outer_kind { exp, ln, pow };

class outer_function {
public:
    static outer_function exponential(double lambda) {
        return outer_function(outer_kind::exp, lambda);
    }
    static outer_function logarithm() { return outer_function(outer_kind::ln, 0.0); }
    static outer_function power(double lambda) {
        return outer_function(outer_kind::pow, lambda);
    }
    static outer_function sqrt() { return power(0.5); }
    static outer_function reciprocal() { return power(-1.0); }

    outer_kind kind() const { return kind_; }
    double lambda() const { return lambda_; }

    // Short display form such as "exp", "ln" or "x^-1".
    std::string name() const;

private:
    outer_function(outer_kind kind, double lambda) : kind_(kind), lambda_(lambda) {}

    outer_kind kind_;
    double lambda_;
};

// Expansion coefficients of f about the point a, to the given order:
//   exp(lambda*x):  F(k) = exp(a*lambda) * lambda^k / k!
//   ln(x), a > 0:   F(0) = ln(a), F(k) = (-1)^(k+1) a^(-k) / k
//   x^lambda:       F(k) = C(lambda, k) * a^(lambda-k)
// Throws domain_error when a is outside the function's domain: ln and
// non-integer powers need a > 0, negative integer powers need a != 0.
jet outer_coeffs(const outer_function& f, double a, int order);

// Distance from a to the nearest point where the expansion of f breaks
// down; +infinity when the domain is unrestricted.
double domain_margin(const outer_function& f, double a);

}  // namespace dtm
