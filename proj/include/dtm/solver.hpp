#pragma once

#include <string>
#include <vector>

#include "dtm/expr.hpp"
#include "dtm/jet.hpp"
#include "dtm/lower.hpp"

namespace dtm {

// Initial value problem u'(t) = rhs(t, u(t)), u(t0) = u0, to be expanded as
// a truncated series of the given order about t0.
struct ivp_problem {
    expr_ptr rhs;
    double t0 = 0.0;
    double u0 = 0.0;
    int order = 1;
};

// One row of the solve diagnostics: the order-k coefficient of u' computed
// from the solution (lhs) and by re-evaluating the right-hand side over the
// finished solution jet (rhs).  The two agree up to rounding when the
// solve is self-consistent.
struct residual_record {
    int k;
    double lhs;
    double rhs;
};

struct solve_report {
    jet solution;                              // order N about t0, coefficient 0 = u0
    std::vector<residual_record> diagnostics;  // k = 0 .. N-1
    std::vector<std::string> warnings;
};

// Computes the series solution coefficient by coefficient through
//     (k+1) U(k+1) = coefficient k of rhs(t, u),
// feeding each new U back into the streaming lowering context.  Throws
// std::invalid_argument for a null rhs or order < 1; domain_error and
// division_by_zero_error from the lowering are re-raised with the failing
// coefficient order attached.
solve_report solve_series(const ivp_problem& p, const lower_options& options = {});

// Piecewise continuation: solves on [t0, t0+step], evaluates the segment
// jet at the next node to seed the following solve, `steps` times.  The
// step must be non-zero (negative steps march left).  Solve errors are
// re-raised with the failing step index attached.
std::vector<jet> continue_multistep(const ivp_problem& p, double step, int steps,
                                    const lower_options& options = {});

// Same continuation, keeping each segment's full report.
std::vector<solve_report> continue_multistep_reports(const ivp_problem& p, double step,
                                                     int steps,
                                                     const lower_options& options = {});

// Evaluates a multistep solution at t using the segment whose expansion
// point is nearest without passing t (the last segment owns everything
// beyond the final node).
double eval_multistep(const std::vector<jet>& segments, double t);

}  // namespace dtm
