#include "ecd/harness/run.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <vector>

#include "ecd/benchmarks.hpp"
#include "ecd/harness/csv.hpp"
#include "ecd/harness/svg.hpp"

namespace ecd::harness {

namespace {

ParamVector parse_theta0(const std::string& raw, Index n) {
    std::vector<Scalar> values;
    std::istringstream in(raw);
    std::string field;
    while (std::getline(in, field, ',')) {
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str()) throw ConfigError("bad theta0 entry: " + field);
        values.push_back(v);
    }
    if (values.empty()) throw ConfigError("theta0 must list at least one value");
    ParamVector theta(n);
    if (values.size() == 1) {
        theta.setConstant(values[0]);
    } else if (static_cast<Index>(values.size()) == n) {
        for (Index i = 0; i < n; ++i) theta[i] = values[static_cast<std::size_t>(i)];
    } else {
        throw ConfigError("theta0 has " + std::to_string(values.size()) +
                          " entries but the problem dimension is " + std::to_string(n));
    }
    return theta;
}

}  // namespace

ProblemConfig load_problem(const Config& cfg) {
    ProblemConfig pc;
    pc.name = cfg.get_string("problem", "name");
    if (pc.name == "ackley") {
        pc.n = 2;
    } else if (pc.name == "zakharov" || pc.name == "basin" || pc.name == "logistic") {
        pc.n = cfg.get_int("problem", "n");
        if (pc.n < 1) throw ConfigError("problem dimension must be positive");
    } else {
        throw ConfigError("unknown problem: " + pc.name);
    }
    if (pc.name == "basin") {
        pc.f2 = cfg.get_number("problem", "f2", 1.0);
        pc.f_min = cfg.get_number("problem", "f_min", 0.0);
        if (!(pc.f2 > 0)) throw ConfigError("basin f2 must be positive");
    }
    Index theta_dim = pc.n;
    if (pc.name == "logistic") {
        pc.samples = cfg.get_int("problem", "samples", 256);
        pc.batch_size = cfg.get_int("problem", "batch_size", 32);
        pc.data_seed = static_cast<std::uint64_t>(cfg.get_int("problem", "data_seed", 1));
        if (pc.samples < 2) throw ConfigError("logistic needs at least 2 samples");
        if (pc.batch_size < 1) throw ConfigError("logistic batch_size must be positive");
        theta_dim = pc.n + 1;
    }
    pc.theta0 = parse_theta0(cfg.get_string("problem", "theta0"), theta_dim);
    return pc;
}

OptimizerConfig load_optimizer(const Config& cfg, const std::string& section) {
    OptimizerConfig oc;
    oc.name = cfg.get_string(section, "name");
    if (oc.name == "ecdsep") {
        EcdHyperParams& hp = oc.ecd;
        hp.dt = cfg.get_number(section, "dt", hp.dt);
        hp.eta = cfg.get_number(section, "eta");
        hp.nu = cfg.get_number(section, "nu", hp.nu);
        hp.f0 = cfg.get_number(section, "f0", hp.f0);
        if (cfg.has(section, "delta_e")) hp.delta_e = cfg.get_number(section, "delta_e");
        hp.wd = cfg.get_number(section, "wd", hp.wd);
        hp.s = static_cast<int>(cfg.get_int(section, "s", hp.s));
        hp.conserve_energy = cfg.get_bool(section, "conserve_energy", hp.conserve_energy);
        hp.self_tune_f0 = cfg.get_bool(section, "self_tune_f0", hp.self_tune_f0);
        hp.eps1 = cfg.get_number(section, "eps1", hp.eps1);
        hp.eps2 = cfg.get_number(section, "eps2", hp.eps2);
        hp.f0_bump = cfg.get_number(section, "f0_bump", hp.f0_bump);
        try {
            hp.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid ecdsep hyperparameters: ") + e.what());
        }
    } else if (oc.name == "gdm") {
        oc.gdm.alpha = cfg.get_number(section, "alpha");
        oc.gdm.beta = cfg.get_number(section, "beta", oc.gdm.beta);
        try {
            oc.gdm.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid gdm hyperparameters: ") + e.what());
        }
    } else if (oc.name == "adam") {
        oc.adam.alpha = cfg.get_number(section, "alpha", oc.adam.alpha);
        oc.adam.beta1 = cfg.get_number(section, "beta1", oc.adam.beta1);
        oc.adam.beta2 = cfg.get_number(section, "beta2", oc.adam.beta2);
        oc.adam.eps = cfg.get_number(section, "eps", oc.adam.eps);
        oc.adam.weight_decay = cfg.get_number(section, "weight_decay", oc.adam.weight_decay);
        oc.adam.decoupled_wd = cfg.get_bool(section, "decoupled_wd", oc.adam.decoupled_wd);
        try {
            oc.adam.validate();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("invalid adam hyperparameters: ") + e.what());
        }
    } else {
        throw ConfigError("unknown optimizer: " + oc.name);
    }
    return oc;
}

RunConfig load_run_config(const Config& cfg) {
    RunConfig rc;
    rc.problem = load_problem(cfg);
    rc.optimizer = load_optimizer(cfg);
    rc.max_steps = cfg.get_int("run", "max_steps", rc.max_steps);
    if (rc.max_steps < 1) throw ConfigError("max_steps must be positive");
    rc.seed = static_cast<std::uint64_t>(cfg.get_int("run", "seed", 0));
    rc.record_every = cfg.get_int("run", "record_every", 0);
    if (cfg.has("run", "record_every") && rc.record_every < 1) {
        throw ConfigError("record_every must be at least 1");
    }
    rc.batched = cfg.get_bool("run", "batched", rc.problem.name == "logistic");
    rc.out_prefix = cfg.get_string("run", "out", "");
    rc.svg = cfg.get_bool("run", "svg", false);
    return rc;
}

std::unique_ptr<Objective> make_objective(const ProblemConfig& pc) {
    if (pc.name == "zakharov") return std::make_unique<bench::Zakharov>(pc.n);
    if (pc.name == "ackley") return std::make_unique<bench::RegularizedAckley>();
    if (pc.name == "basin") return std::make_unique<bench::QuadraticBasin>(pc.n, pc.f2, pc.f_min);
    if (pc.name == "logistic") {
        return std::make_unique<bench::SyntheticClassification>(pc.n, pc.samples, pc.batch_size,
                                                                pc.data_seed);
    }
    throw ConfigError("unknown problem: " + pc.name);
}

std::string summary_to_json(const RunSummary& summary) {
    std::ostringstream out;
    out << "{\"final_f\": " << format_float(summary.final_f)
        << ", \"best_f\": " << format_float(summary.best_f) << ", \"steps\": " << summary.steps
        << ", \"terminated\": " << (summary.terminated ? "true" : "false")
        << ", \"wall_ms\": " << format_float(summary.wall_ms) << "}";
    return out.str();
}

RunSummary run_single(const RunConfig& rc, const RecordSink& extra) {
    const auto objective = make_objective(rc.problem);
    RunSummary summary;

    std::unique_ptr<TrajectoryCsvWriter> csv;
    if (!rc.out_prefix.empty()) csv = std::make_unique<TrajectoryCsvWriter>(rc.out_prefix + ".csv");
    std::vector<Scalar> svg_steps;
    std::vector<Scalar> svg_losses;

    RecordSink sink = [&](const TrajectoryRecord& rec, const ParamVector& theta) {
        if (csv) csv->write(rec);
        if (rc.svg) {
            svg_steps.push_back(static_cast<Scalar>(rec.step));
            svg_losses.push_back(rec.f);
        }
        if (extra) extra(rec, theta);
    };

    const std::int64_t record_every = rc.resolved_record_every();
    const auto t0 = std::chrono::steady_clock::now();

    if (rc.optimizer.name == "ecdsep") {
        RngStream rng(rc.seed, 0);
        RunOptions opts;
        opts.max_steps = rc.max_steps;
        opts.record_every = record_every;
        opts.batched = rc.batched;
        BatchToken batch;
        if (rc.batched) batch = 0;  // init() evaluates on the first step's batch
        EcdState state = init(*objective, rc.problem.theta0, rc.optimizer.ecd, batch);
        RunResult result =
            run(std::move(state), *objective, rc.optimizer.ecd, opts, rng, sink);
        summary.final_f = result.state.last_f;
        summary.best_f = result.best_f;
        summary.steps = result.state.step;
        summary.terminated = result.state.terminated();
    } else if (rc.optimizer.name == "gdm") {
        auto state = baselines::gdm_init(rc.problem.theta0);
        const auto result = baselines::run_gdm(state, rc.optimizer.gdm, *objective, rc.max_steps,
                                               record_every, sink, rc.batched);
        summary.final_f = result.final_f;
        summary.best_f = result.best_f;
        summary.steps = result.steps;
        summary.terminated = false;
    } else if (rc.optimizer.name == "adam") {
        auto state = baselines::adam_init(rc.problem.theta0);
        const auto result = baselines::run_adam(state, rc.optimizer.adam, *objective, rc.max_steps,
                                                record_every, sink, rc.batched);
        summary.final_f = result.final_f;
        summary.best_f = result.best_f;
        summary.steps = result.steps;
        summary.terminated = false;
    } else {
        throw ConfigError("unknown optimizer: " + rc.optimizer.name);
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (csv) csv->close();
    if (!rc.out_prefix.empty()) {
        std::ofstream js(rc.out_prefix + ".json");
        if (!js) throw IoError("cannot open output file: " + rc.out_prefix + ".json");
        js << summary_to_json(summary) << '\n';
        if (!js) throw IoError("failed writing " + rc.out_prefix + ".json");
        if (rc.svg) {
            write_line_chart(rc.out_prefix + ".svg", objective->name() + " loss", svg_steps,
                             svg_losses);
        }
    }
    return summary;
}

}  // namespace ecd::harness
