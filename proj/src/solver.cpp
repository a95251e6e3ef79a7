#include "dtm/solver.hpp"

#include <cmath>

#include "dtm/errors.hpp"

namespace dtm {

solve_report solve_series(const ivp_problem& p, const lower_options& options) {
    if (!p.rhs) throw std::invalid_argument("solve_series: rhs must not be null");
    if (p.order < 1) throw std::invalid_argument("solve_series: order must be at least 1");

    lower_context ctx(p.t0, p.order, options);
    ctx.push_u(p.u0);
    std::vector<double> coeffs{p.u0};
    for (int k = 0; k < p.order; ++k) {
        double phi;
        try {
            phi = lower_coefficient(*p.rhs, k, ctx);
        } catch (const domain_error& e) {
            throw domain_error(e.function(), e.value(), k);
        } catch (const division_by_zero_error&) {
            throw division_by_zero_error(k);
        }
        double next = phi / (k + 1);
        ctx.push_u(next);
        coeffs.push_back(next);
    }

    solve_report report{jet(p.t0, std::move(coeffs)), {}, ctx.warnings()};

    // Self-consistency diagnostics: coefficients of u' from the solution
    // against the right-hand side re-evaluated over the whole solution jet.
    jet lhs = derivative_shift(report.solution, 1);
    jet rhs = evaluate_jet(*p.rhs, report.solution, options);
    report.diagnostics.reserve(p.order);
    for (int k = 0; k < p.order; ++k)
        report.diagnostics.push_back({k, lhs[k], rhs[k]});
    return report;
}

std::vector<solve_report> continue_multistep_reports(const ivp_problem& p, double step,
                                                     int steps,
                                                     const lower_options& options) {
    if (step == 0.0 || !std::isfinite(step))
        throw std::invalid_argument("continue_multistep: step must be non-zero and finite");
    if (steps < 1)
        throw std::invalid_argument("continue_multistep: steps must be at least 1");

    std::vector<solve_report> reports;
    reports.reserve(steps);
    ivp_problem segment = p;
    for (int i = 0; i < steps; ++i) {
        try {
            reports.push_back(solve_series(segment, options));
        } catch (const domain_error& e) {
            throw domain_error(e.function(), e.value(), e.order(), i);
        } catch (const division_by_zero_error& e) {
            throw division_by_zero_error(e.order(), i);
        }
        segment.t0 += step;
        segment.u0 = eval_truncated(reports.back().solution, segment.t0);
    }
    return reports;
}

std::vector<jet> continue_multistep(const ivp_problem& p, double step, int steps,
                                    const lower_options& options) {
    std::vector<solve_report> reports = continue_multistep_reports(p, step, steps, options);
    std::vector<jet> segments;
    segments.reserve(reports.size());
    for (solve_report& r : reports) segments.push_back(std::move(r.solution));
    return segments;
}

double eval_multistep(const std::vector<jet>& segments, double t) {
    if (segments.empty())
        throw std::invalid_argument("eval_multistep: no segments");
    bool forward = segments.back().t0() >= segments.front().t0();
    std::size_t idx = 0;
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (forward ? segments[i].t0() <= t : segments[i].t0() >= t) idx = i;
    return eval_truncated(segments[idx], t);
}

}  // namespace dtm
