// Command-line front end of the solver: run a bundled example, solve a
// config-defined problem, or report the bound/depth analysis for either.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage or config error.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <npvide/npvide.hpp>

namespace {

struct RunOptions {
    std::size_t m = 3;
    std::size_t np = 3;
    std::string n_list_text;
    std::string points_text = "standard";
    std::string format = "csv";
    std::string out_path;
    int quad_order = 5;
    int quad_panels = 8;
    int bound_density = 21;
};

void add_run_flags(CLI::App& cmd, RunOptions& opt) {
    cmd.add_option("--m", opt.m, "number of composed stages")->check(CLI::PositiveNumber);
    cmd.add_option("--np", opt.np, "nodes per axis, broadcast to every stage");
    cmd.add_option("--n-list", opt.n_list_text,
                   "comma-separated nodes per axis, one entry per stage (overrides --np)");
    cmd.add_option("--points", opt.points_text,
                   "evaluation points: 'standard' or x1:t1,x2:t2,...");
    cmd.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--out", opt.out_path, "report file path (default: stdout)");
    cmd.add_option("--quad-order", opt.quad_order, "Gauss-Legendre order for the forcing term")
        ->check(CLI::Range(1, 8));
    cmd.add_option("--quad-panels", opt.quad_panels, "quadrature panels for the forcing term")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--bound-density", opt.bound_density,
                   "per-axis sample density of the bound estimates")
        ->check(CLI::Range(2, 201));
}

std::vector<std::size_t> resolve_n_list(const RunOptions& opt) {
    if (opt.n_list_text.empty()) {
        if (opt.np < 2) throw npvide::ConfigError("--np must be >= 2");
        return std::vector<std::size_t>(opt.m, opt.np);
    }
    std::vector<std::size_t> ns;
    std::stringstream ss(opt.n_list_text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw npvide::ConfigError("--n-list entry '" + item + "' is not a number");
        }
        if (pos != item.size() || v < 2)
            throw npvide::ConfigError("--n-list entry '" + item + "' must be an integer >= 2");
        ns.push_back(v);
    }
    if (ns.size() != opt.m)
        throw npvide::ConfigError("--n-list has " + std::to_string(ns.size()) +
                                  " entries but --m is " + std::to_string(opt.m));
    return ns;
}

std::vector<std::pair<double, double>> resolve_points(const RunOptions& opt,
                                                      const npvide::Problem& problem) {
    std::vector<std::pair<double, double>> pts;
    if (opt.points_text == "standard") {
        pts = npvide::standard_points();
    } else {
        std::stringstream ss(opt.points_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::size_t colon = item.find(':');
            if (colon == std::string::npos)
                throw npvide::ConfigError("--points entry '" + item + "' is not of the form x:t");
            try {
                pts.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
            } catch (const std::exception&) {
                throw npvide::ConfigError("--points entry '" + item + "' is not numeric");
            }
        }
        if (pts.empty()) throw npvide::ConfigError("--points is empty");
    }
    for (const auto& [x, t] : pts) problem.check_domain(x, t);
    return pts;
}

struct LoadedProblem {
    std::shared_ptr<const npvide::Problem> problem;
    std::optional<npvide::Real2Fn> exact;
};

// A problem source is either a bundled example id (1..4) or a config path.
LoadedProblem load_source(const std::string& source) {
    if (source.size() == 1 && source[0] >= '1' && source[0] <= '9') {
        const npvide::NamedExample ex = npvide::example(source[0] - '0');
        return {ex.problem, ex.exact};
    }
    std::ifstream in(source);
    if (!in) throw npvide::ConfigError("cannot open config file '" + source + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const npvide::ProblemConfig cfg = npvide::parse_problem_config(buffer.str());
    return {npvide::make_problem(cfg), npvide::make_exact(cfg)};
}

int emit_report(const LoadedProblem& lp, const RunOptions& opt) {
    const auto& problem = *lp.problem;
    const auto n_list = resolve_n_list(opt);
    const auto points = resolve_points(opt, problem);
    const npvide::QuadratureRule g_rule(opt.quad_order, opt.quad_panels);

    const std::size_t max_n = *std::max_element(n_list.begin(), n_list.end());
    const auto xbasis = std::make_shared<const npvide::HatBasis>(
        npvide::dyadic_nodes(problem.alpha(), problem.x_hi(), max_n));
    const auto tbasis =
        std::make_shared<const npvide::HatBasis>(npvide::dyadic_nodes(0.0, problem.T(), max_n));

    const npvide::Real2Fn guess = [&problem](double x, double) { return problem.u0(x); };
    const auto final_stage =
        npvide::compose(lp.problem, guess, opt.m, n_list, xbasis, tbasis, g_rule);
    const npvide::Report report = npvide::make_report(problem, final_stage, guess, lp.exact,
                                                      points, opt.bound_density);

    std::ostringstream body;
    if (opt.format == "json")
        npvide::write_json(report, body);
    else
        npvide::write_csv(report, body);

    char bounds_line[128];
    std::snprintf(bounds_line, sizeof bounds_line, "apriori_bound=%.5e aposteriori_bound=%.5e\n",
                  report.apriori, report.aposteriori);
    if (opt.out_path.empty()) {
        std::cout << body.str();
        std::cerr << bounds_line;  // keep stdout machine-readable
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw npvide::ConfigError("cannot write report to '" + opt.out_path + "'");
        out << body.str();
        std::cout << bounds_line;
    }
    return 0;
}

int emit_bounds(const LoadedProblem& lp, double eps, const RunOptions& opt) {
    const auto& problem = *lp.problem;
    const npvide::Real2Fn guess = [&problem](double x, double) { return problem.u0(x); };
    const npvide::ContractionParams params = npvide::ContractionParams::of(problem);
    const double residual =
        npvide::estimate_residual_norm(problem, guess, {4, 4}, opt.bound_density);
    if (!(residual > 0.0)) {
        std::cout << "residual_norm=0; the initial guess already satisfies the equation "
                     "everywhere sampled; m=1 suffices\n";
        return 0;
    }
    const std::size_t m = npvide::choose_m(eps, residual, params);
    std::printf("residual_norm=%.5e\n", residual);
    for (std::size_t k = 1; k <= m + 2; ++k)
        std::printf("tail_sum(%zu)=%.5e apriori_bound(%zu)=%.5e\n", k,
                    npvide::tail_sum(k, params), k, npvide::apriori_bound(k, residual, params));
    std::printf("chosen_m=%zu (first depth with tail_sum(m) < eps / (2 residual_norm) = %.5e)\n",
                m, eps / (2.0 * residual));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximates solutions of nonlinear partial Volterra integro-differential "
                 "equations by composing projected integral-operator stages"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string example_id, config_path, bounds_source;
    double eps = 1e-2;

    CLI::App* run = app.add_subcommand("run-example", "solve a bundled example (1..4)");
    run->add_option("id", example_id, "example id")->required();
    add_run_flags(*run, opt);

    CLI::App* solve = app.add_subcommand("solve", "solve a problem described by a config file");
    solve->add_option("config", config_path, "config file path")->required();
    add_run_flags(*solve, opt);

    CLI::App* bounds = app.add_subcommand("bounds", "residual, tail table, and depth selection");
    bounds->add_option("source", bounds_source, "example id (1..4) or config file path")
        ->required();
    bounds->add_option("--eps", eps, "target error")->check(CLI::PositiveNumber);
    bounds->add_option("--bound-density", opt.bound_density,
                       "per-axis sample density of the residual estimate")
        ->check(CLI::Range(2, 201));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are exit 2, --help is success
    }

    try {
        if (run->parsed()) {
            if (example_id.size() != 1 || example_id[0] < '1' || example_id[0] > '4')
                throw npvide::ConfigError("example id must be 1..4, got '" + example_id + "'");
            return emit_report(load_source(example_id), opt);
        }
        if (solve->parsed()) return emit_report(load_source(config_path), opt);
        if (bounds->parsed()) return emit_bounds(load_source(bounds_source), eps, opt);
    } catch (const npvide::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const npvide::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid problem: " << e.what() << "\n";
        return 2;
    } catch (const npvide::EvalError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
