#include "dtm/lower.hpp"

#include <cmath>

#include "dtm/errors.hpp"
#include "dtm/format.hpp"

namespace dtm {

namespace {

constexpr double near_boundary_threshold = 1e-6;

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

// Whether a power node is lowered as repeated products rather than through
// the power-function composition.
bool use_product_expansion(double exponent, const lower_options& options) {
    return is_integer(exponent) && exponent >= 0.0 &&
           exponent <= static_cast<double>(options.pow_product_max);
}

}  // namespace

lower_context::lower_context(double t0, int order, lower_options options)
    : t0_(t0), order_(order), options_(options) {
    if (order_ < 0)
        throw std::invalid_argument("lower_context: order must be non-negative");
}

void lower_context::push_u(double u_k) {
    if (static_cast<int>(u_.size()) > order_)
        throw std::invalid_argument("lower_context: unknown prefix already complete");
    u_.push_back(u_k);
}

void lower_context::note_domain_margin(const outer_function& f, double a) {
    double margin = domain_margin(f, a);
    if (margin <= near_boundary_threshold)
        warnings_.push_back("expansion point " + format_double(a) + " of " + f.name() +
                            " is within " + format_double(near_boundary_threshold) +
                            " of a domain boundary (margin " + format_double(margin) +
                            ")");
}

double lower_context::node_coeff(const expr& e, int k) {
    node_state& st = states_[&e];
    for (int j = static_cast<int>(st.coeffs.size()); j <= k; ++j)
        st.coeffs.push_back(compute(e, j, st));
    return st.coeffs[k];
}

// Coefficient of a node whose expansion is a composition stream over its
// operand (function application or an out-of-range power).  The stream is
// created lazily on the first call, once the operand's value is known.
double lower_context::stream_coeff(const expr& e, int k, node_state& st) {
    if (!st.stream) {
        double a = node_coeff(*e.left, 0);
        outer_function f = e.kind == expr_kind::apply ? to_outer_function(e.func)
                                                      : outer_function::power(e.value);
        jet outer = outer_coeffs(f, a, order_);  // throws domain_error when outside
        note_domain_margin(f, a);
        st.stream.emplace(outer);
    }
    double h = 0.0;
    while (st.stream->pushed() <= k)
        h = st.stream->push(node_coeff(*e.left, st.stream->pushed()));
    return h;
}

double lower_context::compute(const expr& e, int k, node_state& st) {
    switch (e.kind) {
        case expr_kind::constant:
            return k == 0 ? e.value : 0.0;
        case expr_kind::var_t:
            return k == 0 ? t0_ : (k == 1 ? 1.0 : 0.0);
        case expr_kind::var_u:
            if (k >= static_cast<int>(u_.size()))
                throw std::invalid_argument("lower_coefficient: U(" + std::to_string(k) +
                                            ") is not available yet");
            return u_[k];
        case expr_kind::negate:
            return -node_coeff(*e.left, k);
        case expr_kind::add:
            return node_coeff(*e.left, k) + node_coeff(*e.right, k);
        case expr_kind::subtract:
            return node_coeff(*e.left, k) - node_coeff(*e.right, k);
        case expr_kind::multiply: {
            double s = 0.0;
            for (int j = 0; j <= k; ++j)
                s += node_coeff(*e.left, j) * node_coeff(*e.right, k - j);
            return s;
        }
        case expr_kind::divide: {
            if (!st.stream) {
                double r0 = node_coeff(*e.right, 0);
                if (r0 == 0.0) throw division_by_zero_error();
                outer_function recip = outer_function::reciprocal();
                jet outer = outer_coeffs(recip, r0, order_);
                note_domain_margin(recip, r0);
                st.stream.emplace(outer);
            }
            while (st.stream->pushed() <= k)
                st.inverse.push_back(
                    st.stream->push(node_coeff(*e.right, st.stream->pushed())));
            double s = 0.0;
            for (int j = 0; j <= k; ++j)
                s += node_coeff(*e.left, j) * st.inverse[k - j];
            return s;
        }
        case expr_kind::power: {
            if (!use_product_expansion(e.value, options_))
                return stream_coeff(e, k, st);
            int p = static_cast<int>(e.value);
            if (p == 0) return k == 0 ? 1.0 : 0.0;
            if (p == 1) return node_coeff(*e.left, k);
            // layers[m] holds the coefficients of base^(m+2), each layer a
            // truncated product of the previous one with the base.
            st.layers.resize(p - 1);
            for (int m = 0; m < p - 1; ++m) {
                const std::vector<double>* lower_layer =
                    m == 0 ? nullptr : &st.layers[m - 1];
                for (int j = static_cast<int>(st.layers[m].size()); j <= k; ++j) {
                    double s = 0.0;
                    for (int i = 0; i <= j; ++i) {
                        double a = m == 0 ? node_coeff(*e.left, i) : (*lower_layer)[i];
                        s += a * node_coeff(*e.left, j - i);
                    }
                    st.layers[m].push_back(s);
                }
            }
            return st.layers[p - 2][k];
        }
        case expr_kind::apply:
            return stream_coeff(e, k, st);
    }
    throw std::invalid_argument("lower_coefficient: unknown node kind");
}

double lower_coefficient(const expr& e, int k, lower_context& ctx) {
    if (k < 0) throw std::invalid_argument("lower_coefficient: negative k");
    if (k > ctx.order())
        throw std::invalid_argument("lower_coefficient: k exceeds the context order");
    if (k >= static_cast<int>(ctx.u_prefix().size()))
        throw std::invalid_argument("lower_coefficient: U(0.." + std::to_string(k) +
                                    ") must be pushed first");
    return ctx.node_coeff(e, k);
}

jet evaluate_jet(const expr& e, const jet& u, const lower_options& options) {
    int n = u.order();
    double t0 = u.t0();
    switch (e.kind) {
        case expr_kind::constant: {
            std::vector<double> c(n + 1, 0.0);
            c[0] = e.value;
            return jet(t0, std::move(c));
        }
        case expr_kind::var_t:
            return monomial<double>(1, n, t0);
        case expr_kind::var_u:
            return u;
        case expr_kind::negate:
            return scale(-1.0, evaluate_jet(*e.left, u, options));
        case expr_kind::add:
            return add(evaluate_jet(*e.left, u, options),
                       evaluate_jet(*e.right, u, options));
        case expr_kind::subtract:
            return add(evaluate_jet(*e.left, u, options),
                       scale(-1.0, evaluate_jet(*e.right, u, options)));
        case expr_kind::multiply:
            return cauchy_product(evaluate_jet(*e.left, u, options),
                                  evaluate_jet(*e.right, u, options));
        case expr_kind::divide: {
            jet right = evaluate_jet(*e.right, u, options);
            if (right[0] == 0.0) throw division_by_zero_error();
            jet inverse =
                compose(outer_coeffs(outer_function::reciprocal(), right[0], n), right);
            return cauchy_product(evaluate_jet(*e.left, u, options), inverse);
        }
        case expr_kind::power: {
            jet base = evaluate_jet(*e.left, u, options);
            if (!use_product_expansion(e.value, options))
                return compose(outer_coeffs(outer_function::power(e.value), base[0], n),
                               base);
            int p = static_cast<int>(e.value);
            if (p == 0) {
                std::vector<double> c(n + 1, 0.0);
                c[0] = 1.0;
                return jet(t0, std::move(c));
            }
            return m_fold_product(std::vector<jet>(p, base));
        }
        case expr_kind::apply: {
            jet arg = evaluate_jet(*e.left, u, options);
            return compose(outer_coeffs(to_outer_function(e.func), arg[0], n), arg);
        }
    }
    throw std::invalid_argument("evaluate_jet: unknown node kind");
}

}  // namespace dtm
