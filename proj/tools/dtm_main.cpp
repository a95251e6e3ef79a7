#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtm/errors.hpp"
#include "dtm/format.hpp"
#include "dtm/ivp_file.hpp"
#include "dtm/parser.hpp"
#include "dtm/solver.hpp"

namespace {

struct cli_options {
    std::string file;
    std::optional<int> order;
    std::optional<double> eval_from;
    std::optional<double> eval_to;
    std::optional<int> samples;
    std::optional<double> step;
    std::optional<int> steps;
    std::string format = "csv";
    bool coeffs_only = false;
};

// Problem definition merged from the file and command-line overrides.
struct resolved_problem {
    dtm::ivp_problem ivp;
    double step = 0.0;
    int steps = 1;
};

constexpr int default_order = 16;
constexpr int default_samples = 11;

int read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open file: " << path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        std::cerr << "error: cannot read file: " << path << "\n";
        return 2;
    }
    out = buf.str();
    return 0;
}

resolved_problem resolve(const cli_options& cli, const dtm::ivp_file_data& file) {
    resolved_problem r;
    if (!file.equation.has_value())
        throw dtm::error("problem file is missing the 'equation' key");
    if (!cli.order.has_value() && !file.order.has_value())
        r.ivp.order = default_order;
    else
        r.ivp.order = cli.order.has_value() ? *cli.order : *file.order;
    if (!file.u0.has_value())
        throw dtm::error("problem file is missing the 'u0' key");
    r.ivp.u0 = *file.u0;
    r.ivp.t0 = file.t0.value_or(0.0);
    r.ivp.rhs = dtm::parse(*file.equation);
    r.steps = cli.steps.has_value() ? *cli.steps : file.steps.value_or(1);
    if (cli.step.has_value())
        r.step = *cli.step;
    else if (file.step.has_value())
        r.step = *file.step;
    else if (r.steps > 1)
        throw dtm::error("'steps' given without a 'step' size");
    return r;
}

void print_warnings(const std::vector<std::string>& warnings, int step_index = -1) {
    for (const std::string& w : warnings) {
        std::cerr << "warning: ";
        if (step_index >= 0) std::cerr << "step " << step_index << ": ";
        std::cerr << w << "\n";
    }
}

void emit_samples(const std::vector<double>& ts, const std::vector<double>& us,
                  const resolved_problem& p, const std::string& format) {
    if (format == "json") {
        nlohmann::json doc;
        doc["t0"] = p.ivp.t0;
        doc["order"] = p.ivp.order;
        doc["t"] = ts;
        doc["u"] = us;
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "t,u\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        std::cout << dtm::format_double(ts[i]) << "," << dtm::format_double(us[i])
                  << "\n";
}

void emit_coeffs(const dtm::jet& solution, const resolved_problem& p,
                 const std::string& format) {
    if (format == "json") {
        nlohmann::json doc;
        doc["t0"] = p.ivp.t0;
        doc["order"] = p.ivp.order;
        std::vector<int> ks;
        for (int k = 0; k <= solution.order(); ++k) ks.push_back(k);
        doc["k"] = ks;
        doc["U"] = solution.coeffs();
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "k,U\n";
    for (int k = 0; k <= solution.order(); ++k)
        std::cout << k << "," << dtm::format_double(solution[k]) << "\n";
}

int run_coeffs(const cli_options& cli) {
    std::string text;
    if (int rc = read_file(cli.file, text)) return rc;
    resolved_problem p = resolve(cli, dtm::parse_ivp_text(text));
    dtm::solve_report report = dtm::solve_series(p.ivp);
    print_warnings(report.warnings);
    emit_coeffs(report.solution, p, cli.format);
    return 0;
}

int run_solve(const cli_options& cli) {
    if (cli.coeffs_only) return run_coeffs(cli);

    std::string text;
    if (int rc = read_file(cli.file, text)) return rc;
    resolved_problem p = resolve(cli, dtm::parse_ivp_text(text));

    int samples = cli.samples.value_or(default_samples);
    if (samples < 1) throw dtm::error("--samples must be at least 1");

    std::vector<dtm::jet> segments;
    if (p.steps > 1) {
        std::vector<dtm::solve_report> reports =
            dtm::continue_multistep_reports(p.ivp, p.step, p.steps);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            print_warnings(reports[i].warnings, static_cast<int>(i));
            segments.push_back(std::move(reports[i].solution));
        }
    } else {
        dtm::solve_report report = dtm::solve_series(p.ivp);
        print_warnings(report.warnings);
        segments.push_back(std::move(report.solution));
    }

    double from = cli.eval_from.value_or(p.ivp.t0);
    double to = cli.eval_to.value_or(p.steps > 1 ? p.ivp.t0 + p.steps * p.step
                                                 : p.ivp.t0 + 1.0);
    std::vector<double> ts, us;
    ts.reserve(samples);
    us.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = samples == 1 ? from : from + (to - from) * i / (samples - 1);
        ts.push_back(t);
        us.push_back(dtm::eval_multistep(segments, t));
    }
    emit_samples(ts, us, p, cli.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated power-series solver for first-order ODEs u' = f(t, u)"};
    app.require_subcommand(1);

    cli_options solve_opts, coeffs_opts;

    CLI::App* solve = app.add_subcommand("solve", "solve a problem file and sample u(t)");
    solve->add_option("file", solve_opts.file, "problem file")->required();
    solve->add_option("--order", solve_opts.order, "truncation order (overrides the file)");
    solve->add_option("--eval-from", solve_opts.eval_from, "first sample point");
    solve->add_option("--eval-to", solve_opts.eval_to, "last sample point");
    solve->add_option("--samples", solve_opts.samples, "number of sample points");
    solve->add_option("--step", solve_opts.step, "continuation step size");
    solve->add_option("--steps", solve_opts.steps, "number of continuation segments");
    solve->add_option("--format", solve_opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    solve->add_flag("--coeffs", solve_opts.coeffs_only,
                    "print series coefficients instead of samples");

    CLI::App* coeffs = app.add_subcommand("coeffs", "print the series coefficients");
    coeffs->add_option("file", coeffs_opts.file, "problem file")->required();
    coeffs->add_option("--order", coeffs_opts.order, "truncation order (overrides the file)");
    coeffs->add_option("--format", coeffs_opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_opts);
        return run_coeffs(coeffs_opts);
    } catch (const dtm::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
