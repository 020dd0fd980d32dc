#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecd/benchmarks.hpp"
#include "ecd/harness/analysis.hpp"
#include "ecd/harness/csv.hpp"
#include "ecd/harness/run.hpp"
#include "ecd/harness/sweep.hpp"

namespace {

using namespace ecd;
using namespace ecd::harness;

struct CommonArgs {
    std::string config;
    std::optional<std::int64_t> seed;
    std::optional<std::string> out;
    std::optional<std::int64_t> steps;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config, "configuration file")->required();
    sub->add_option("--seed", args.seed, "override the configured seed");
    sub->add_option("--out", args.out, "override the output prefix");
    sub->add_option("--steps", args.steps, "override the step budget");
}

std::vector<Scalar> parse_scalar_list(const std::string& raw, const std::string& what) {
    std::vector<Scalar> values;
    std::istringstream in(raw);
    std::string field;
    while (std::getline(in, field, ',')) {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str()) throw ConfigError("bad " + what + " entry: " + field);
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError(what + " must list at least one value");
    return values;
}

int cmd_run(const CommonArgs& args) {
    const Config cfg = Config::parse_file(args.config);
    RunConfig rc = load_run_config(cfg);
    if (args.seed) rc.seed = static_cast<std::uint64_t>(*args.seed);
    if (args.out) rc.out_prefix = *args.out;
    if (args.steps) {
        if (*args.steps < 1) throw ConfigError("--steps must be positive");
        rc.max_steps = *args.steps;
    }
    const RunSummary summary = run_single(rc);
    std::cout << summary_to_json(summary) << '\n';
    return 0;
}

int cmd_sweep(const CommonArgs& args) {
    const Config cfg = Config::parse_file(args.config);
    SweepSpec spec = load_sweep_spec(cfg);
    if (args.seed) spec.seed = static_cast<std::uint64_t>(*args.seed);
    if (args.out) spec.out_prefix = *args.out;
    if (args.steps) {
        if (*args.steps < 1) throw ConfigError("--steps must be positive");
        spec.steps = *args.steps;
    }
    const auto results = ranked(run_sweep(spec), spec.metric);
    if (!spec.out_prefix.empty()) {
        write_sweep_csv(spec.out_prefix + ".csv", results, spec.metric);
    }
    for (const auto& opt : spec.optimizers) {
        std::cout << opt.name << " best " << spec.metric << " = "
                  << format_float(best_metric(results, opt.name, spec.metric)) << '\n';
    }
    if (!results.empty() && !results.front().diverged) {
        const auto& top = results.front();
        std::cout << "winner: " << top.optimizer << " trial " << top.trial << '\n';
    }
    return 0;
}

int cmd_concentrate(const CommonArgs& args) {
    const Config cfg = Config::parse_file(args.config);
    const ProblemConfig pc = load_problem(cfg);
    if (pc.name != "basin") {
        throw ConfigError("concentrate requires the basin problem");
    }
    const OptimizerConfig oc = load_optimizer(cfg);
    if (oc.name != "ecdsep") {
        throw ConfigError("concentrate requires the ecdsep optimizer");
    }

    std::int64_t steps = cfg.get_int("run", "max_steps", 100000);
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 0));
    std::string out = cfg.get_string("run", "out", "");
    if (args.seed) seed = static_cast<std::uint64_t>(*args.seed);
    if (args.out) out = *args.out;
    if (args.steps) steps = *args.steps;
    const std::int64_t burn_in = cfg.get_int("concentrate", "burn_in", steps / 10);
    const int bins = static_cast<int>(cfg.get_int("concentrate", "bins", 60));

    const bench::QuadraticBasin basin(pc.n, pc.f2, pc.f_min);
    const ConcentrationReport report =
        concentration_report(basin, oc.ecd, pc.theta0, seed, steps, burn_in, bins);
    if (!out.empty()) {
        write_concentration_csv(out + ".csv", report);
        std::ofstream js(out + ".json");
        if (!js) throw IoError("cannot open output file: " + out + ".json");
        js << concentration_to_json(report) << '\n';
        if (!js) throw IoError("failed writing " + out + ".json");
    }
    std::cout << concentration_to_json(report) << '\n';
    return 0;
}

int cmd_eta_scan(const CommonArgs& args) {
    const Config cfg = Config::parse_file(args.config);
    const ProblemConfig pc = load_problem(cfg);
    if (pc.name != "basin") {
        throw ConfigError("eta-scan requires the basin problem");
    }
    const OptimizerConfig oc = load_optimizer(cfg);
    if (oc.name != "ecdsep") {
        throw ConfigError("eta-scan requires the ecdsep optimizer");
    }
    const std::vector<Scalar> etas = parse_scalar_list(cfg.get_string("scan", "etas"), "etas");

    std::int64_t steps = cfg.get_int("run", "max_steps", 100000);
    std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 0));
    std::string out = cfg.get_string("run", "out", "");
    if (args.seed) seed = static_cast<std::uint64_t>(*args.seed);
    if (args.out) out = *args.out;
    if (args.steps) steps = *args.steps;

    const bench::QuadraticBasin basin(pc.n, pc.f2, pc.f_min);
    const auto rows = eta_monotonicity_report(basin, etas, oc.ecd, pc.theta0, seed, steps);
    if (!out.empty()) write_eta_scan_csv(out + ".csv", rows);
    std::cout << "eta,tail_mean_f\n";
    for (const auto& row : rows) {
        std::cout << format_float(row.eta) << ',' << format_float(row.tail_mean_f) << '\n';
    }
    return 0;
}

int cmd_swa(const CommonArgs& args) {
    const Config cfg = Config::parse_file(args.config);
    RunConfig rc = load_run_config(cfg);
    if (args.seed) rc.seed = static_cast<std::uint64_t>(*args.seed);
    if (args.out) rc.out_prefix = *args.out;
    if (args.steps) {
        if (*args.steps < 1) throw ConfigError("--steps must be positive");
        rc.max_steps = *args.steps;
    }

    std::vector<ParamVector> iterates;
    const RunSummary summary = run_single(
        rc, [&](const TrajectoryRecord&, const ParamVector& theta) { iterates.push_back(theta); });

    const auto objective = make_objective(rc.problem);
    const auto [average, start] = best_tail_average(iterates, *objective);
    const Scalar swa_f = objective->evaluate(average).value;

    std::ostringstream js;
    js << "{\"final_f\": " << format_float(summary.final_f)
       << ", \"best_f\": " << format_float(summary.best_f)
       << ", \"swa_f\": " << format_float(swa_f) << ", \"swa_start\": " << start
       << ", \"steps\": " << summary.steps
       << ", \"terminated\": " << (summary.terminated ? "true" : "false")
       << ", \"wall_ms\": " << format_float(summary.wall_ms) << "}";
    if (!rc.out_prefix.empty()) {
        std::ofstream out(rc.out_prefix + "_swa.json");
        if (!out) throw IoError("cannot open output file: " + rc.out_prefix + "_swa.json");
        out << js.str() << '\n';
        if (!out) throw IoError("failed writing " + rc.out_prefix + "_swa.json");
    }
    std::cout << js.str() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"energy-conserving descent experiment harness"};
    app.require_subcommand(1);

    CommonArgs run_args, sweep_args, conc_args, scan_args, swa_args;
    CLI::App* run_cmd = app.add_subcommand("run", "single optimization run");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "fixed-budget random hyperparameter search");
    CLI::App* conc_cmd =
        app.add_subcommand("concentrate", "radial concentration of a chaotic basin trajectory");
    CLI::App* scan_cmd = app.add_subcommand("eta-scan", "tail loss as a function of eta");
    CLI::App* swa_cmd = app.add_subcommand("swa", "run plus tail iterate averaging");
    add_common(run_cmd, run_args);
    add_common(sweep_cmd, sweep_args);
    add_common(conc_cmd, conc_args);
    add_common(scan_cmd, scan_args);
    add_common(swa_cmd, swa_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
        if (conc_cmd->parsed()) return cmd_concentrate(conc_args);
        if (scan_cmd->parsed()) return cmd_eta_scan(scan_args);
        if (swa_cmd->parsed()) return cmd_swa(swa_args);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
