#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dtm/compose.hpp"
#include "dtm/expr.hpp"
#include "dtm/jet.hpp"

namespace dtm {

struct lower_options {
    // Integer exponents 0..pow_product_max are expanded as repeated
    // truncated products, which avoids the cancellation-prone composition
    // route for small powers; larger or fractional exponents go through
    // the power-function composition.
    int pow_product_max = 4;
};

// Per-expression streaming state for coefficient extraction.  The context
// owns the expansion point, the truncation order, the known prefix of the
// unknown's coefficients U(0..m), and a memo per expression node so that
// asking for coefficient k costs only the new work at index k.
class lower_context {
public:
    lower_context(double t0, int order, lower_options options = {});

    double t0() const { return t0_; }
    int order() const { return order_; }
    const lower_options& options() const { return options_; }

    // Appends the next coefficient U(k) of the unknown.
    void push_u(double u_k);
    const std::vector<double>& u_prefix() const { return u_; }

    // Messages about expansion points that came close to a domain
    // boundary without crossing it.
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    friend double lower_coefficient(const expr& e, int k, lower_context& ctx);

    struct node_state {
        std::vector<double> coeffs;                        // outputs 0..m
        std::optional<composition_stream<double>> stream;  // function-like nodes
        std::vector<double> inverse;                       // divide: coefficients of 1/right
        std::vector<std::vector<double>> layers;           // power: base^2, base^3, ...
    };

    double node_coeff(const expr& e, int k);
    double compute(const expr& e, int k, node_state& st);
    double stream_coeff(const expr& e, int k, node_state& st);
    void note_domain_margin(const outer_function& f, double a);

    double t0_;
    int order_;
    lower_options options_;
    std::vector<double> u_;
    std::vector<std::string> warnings_;
    std::unordered_map<const expr*, node_state> states_;
};

// Coefficient k of the expression's expansion, given the context's current
// unknown prefix U(0..k).  Must be called with non-decreasing k per context
// (each node's memo is filled in order).  Throws std::invalid_argument when
// k exceeds the available prefix or the context order, domain_error when a
// function must be expanded outside its domain, and division_by_zero_error
// when a divisor's constant term vanishes.
double lower_coefficient(const expr& e, int k, lower_context& ctx);

// Whole-jet evaluation of the expression over a complete unknown jet,
// composing the series primitives bottom-up.  Produces the same
// coefficients as the streaming path and serves as its batch cross-check.
jet evaluate_jet(const expr& e, const jet& u, const lower_options& options = {});

}  // namespace dtm
