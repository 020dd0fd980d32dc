#include "ecd/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "ecd/harness/csv.hpp"

namespace ecd::harness {

namespace {

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"ecdsep",
         {"dt", "eta", "nu", "f0", "delta_e", "wd", "s", "conserve_energy", "self_tune_f0",
          "eps1", "eps2", "f0_bump"}},
        {"gdm", {"alpha", "beta"}},
        {"adam", {"alpha", "beta1", "beta2", "eps", "weight_decay", "decoupled_wd"}},
    };
    return keys;
}

Scalar parse_fixed(const std::string& raw) {
    std::string low = raw;
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (low == "true" || low == "yes" || low == "on") return 1.0;
    if (low == "false" || low == "no" || low == "off") return 0.0;
    char* end = nullptr;
    const double v = std::strtod(raw.c_str(), &end);
    if (end == raw.c_str() || *end != '\0') throw ConfigError("bad fixed value: " + raw);
    return v;
}

void apply_hp(const std::string& optimizer, OptimizerConfig& oc, const std::string& key,
              Scalar value) {
    if (optimizer == "ecdsep") {
        EcdHyperParams& hp = oc.ecd;
        if (key == "dt") hp.dt = value;
        else if (key == "eta") hp.eta = value;
        else if (key == "nu") hp.nu = value;
        else if (key == "f0") hp.f0 = value;
        else if (key == "delta_e") hp.delta_e = value;
        else if (key == "wd") hp.wd = value;
        else if (key == "s") hp.s = static_cast<int>(value);
        else if (key == "conserve_energy") hp.conserve_energy = value != 0;
        else if (key == "self_tune_f0") hp.self_tune_f0 = value != 0;
        else if (key == "eps1") hp.eps1 = value;
        else if (key == "eps2") hp.eps2 = value;
        else if (key == "f0_bump") hp.f0_bump = value;
    } else if (optimizer == "gdm") {
        if (key == "alpha") oc.gdm.alpha = value;
        else if (key == "beta") oc.gdm.beta = value;
    } else if (optimizer == "adam") {
        if (key == "alpha") oc.adam.alpha = value;
        else if (key == "beta1") oc.adam.beta1 = value;
        else if (key == "beta2") oc.adam.beta2 = value;
        else if (key == "eps") oc.adam.eps = value;
        else if (key == "weight_decay") oc.adam.weight_decay = value;
        else if (key == "decoupled_wd") oc.adam.decoupled_wd = value != 0;
    }
}

TrialResult execute_trial(const SweepSpec& spec, const Objective& objective,
                          const OptimizerSweep& sweep, std::int64_t trial,
                          const std::map<std::string, Scalar>& hps, std::uint64_t stream) {
    TrialResult result;
    result.optimizer = sweep.name;
    result.trial = trial;
    result.hps = hps;

    OptimizerConfig oc;
    oc.name = sweep.name;
    if (sweep.name == "ecdsep") oc.ecd.eta = 1.0;  // overwritten when eta is swept or fixed
    for (const auto& [key, value] : hps) apply_hp(sweep.name, oc, key, value);

    try {
        if (sweep.name == "ecdsep") {
            oc.ecd.validate();
            RngStream rng(spec.seed, stream);
            RunOptions opts;
            opts.max_steps = spec.steps;
            opts.record_every = 0;
            opts.batched = spec.batched;
            BatchToken batch;
            if (spec.batched) batch = 0;
            EcdState state = init(objective, spec.problem.theta0, oc.ecd, batch);
            const RunResult r = run(std::move(state), objective, oc.ecd, opts, rng, {});
            result.final_f = r.state.last_f;
            result.best_f = r.best_f;
            result.terminated = r.state.terminated();
        } else if (sweep.name == "gdm") {
            auto state = baselines::gdm_init(spec.problem.theta0);
            const auto r = baselines::run_gdm(state, oc.gdm, objective, spec.steps, 0, {},
                                              spec.batched);
            result.final_f = r.final_f;
            result.best_f = r.best_f;
        } else {
            auto state = baselines::adam_init(spec.problem.theta0);
            const auto r = baselines::run_adam(state, oc.adam, objective, spec.steps, 0, {},
                                               spec.batched);
            result.final_f = r.final_f;
            result.best_f = r.best_f;
        }
        if (!std::isfinite(result.final_f)) result.diverged = true;
    } catch (const NumericalError&) {
        result.diverged = true;
        result.final_f = std::numeric_limits<Scalar>::quiet_NaN();
        result.best_f = std::numeric_limits<Scalar>::quiet_NaN();
    }
    return result;
}

Scalar metric_of(const TrialResult& r, const std::string& metric) {
    return metric == "best_f" ? r.best_f : r.final_f;
}

}  // namespace

HpRange HpRange::parse(const std::string& raw) {
    HpRange range;
    if (raw == "flag") {
        range.kind = Kind::flag;
        return range;
    }
    const auto split = [](const std::string& text) {
        std::vector<std::string> parts;
        std::istringstream in(text);
        std::string field;
        while (std::getline(in, field, ':')) parts.push_back(field);
        return parts;
    };
    if (raw.rfind("log:", 0) == 0 || raw.rfind("lin:", 0) == 0) {
        const auto parts = split(raw);
        if (parts.size() != 3) throw ConfigError("range needs form kind:lo:hi, got: " + raw);
        range.kind = parts[0] == "log" ? Kind::log_uniform : Kind::linear;
        range.lo = parse_fixed(parts[1]);
        range.hi = parse_fixed(parts[2]);
        if (!(range.lo < range.hi)) throw ConfigError("range lo must be below hi: " + raw);
        if (range.kind == Kind::log_uniform && !(range.lo > 0)) {
            throw ConfigError("log range needs positive bounds: " + raw);
        }
        return range;
    }
    range.kind = Kind::fixed;
    range.lo = parse_fixed(raw);
    return range;
}

SweepSpec load_sweep_spec(const Config& cfg) {
    SweepSpec spec;
    spec.problem = load_problem(cfg);
    spec.trials = cfg.get_int("sweep", "trials", spec.trials);
    spec.steps = cfg.get_int("sweep", "steps", spec.steps);
    if (spec.trials < 1) throw ConfigError("sweep trials must be positive");
    if (spec.steps < 1) throw ConfigError("sweep steps must be positive");
    spec.metric = cfg.get_string("sweep", "metric", spec.metric);
    if (spec.metric != "final_f" && spec.metric != "best_f") {
        throw ConfigError("sweep metric must be final_f or best_f");
    }
    spec.seed = static_cast<std::uint64_t>(cfg.get_int("sweep", "seed", 0));
    spec.batched = cfg.get_bool("sweep", "batched", spec.problem.name == "logistic");
    spec.threads = static_cast<int>(cfg.get_int("sweep", "threads", 0));
    spec.out_prefix = cfg.get_string("sweep", "out", "");

    const std::string listed = cfg.get_string("sweep", "optimizers");
    std::istringstream in(listed);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) continue;
        const auto known = known_keys().find(name);
        if (known == known_keys().end()) throw ConfigError("unknown optimizer: " + name);
        OptimizerSweep os;
        os.name = name;
        for (const std::string& key : cfg.keys(name)) {
            if (key == "trials" || key == "steps" || key == "metric") {
                throw ConfigError("per-optimizer '" + key +
                                  "' is not allowed: budgets are fixed across optimizers");
            }
            if (std::find(known->second.begin(), known->second.end(), key) ==
                known->second.end()) {
                throw ConfigError("unknown " + name + " hyperparameter: " + key);
            }
            os.ranges[key] = HpRange::parse(cfg.get_string(name, key));
        }
        if (name == "ecdsep" && os.ranges.count("eta") == 0) {
            throw ConfigError("ecdsep sweep must set eta (fixed or range)");
        }
        if (name == "gdm" && os.ranges.count("alpha") == 0) {
            throw ConfigError("gdm sweep must set alpha (fixed or range)");
        }
        spec.optimizers.push_back(std::move(os));
    }
    if (spec.optimizers.empty()) throw ConfigError("sweep lists no optimizers");
    return spec;
}

std::vector<TrialResult> run_sweep(const SweepSpec& spec) {
    const auto objective = make_objective(spec.problem);

    // All hyperparameters are drawn up front from one stream so trial g's
    // values do not depend on scheduling.
    RngStream sampler(spec.seed, 0);
    struct WorkItem {
        const OptimizerSweep* sweep;
        std::int64_t trial;
        std::map<std::string, Scalar> hps;
        std::uint64_t stream;
    };
    std::vector<WorkItem> work;
    work.reserve(static_cast<std::size_t>(spec.trials) * spec.optimizers.size());
    for (const OptimizerSweep& os : spec.optimizers) {
        for (std::int64_t t = 0; t < spec.trials; ++t) {
            WorkItem item;
            item.sweep = &os;
            item.trial = t;
            for (const auto& [key, range] : os.ranges) {
                switch (range.kind) {
                    case HpRange::Kind::fixed: item.hps[key] = range.lo; break;
                    case HpRange::Kind::linear:
                        item.hps[key] = range.lo + sampler.uniform01() * (range.hi - range.lo);
                        break;
                    case HpRange::Kind::log_uniform:
                        item.hps[key] = std::exp(std::log(range.lo) +
                                                 sampler.uniform01() *
                                                     (std::log(range.hi) - std::log(range.lo)));
                        break;
                    case HpRange::Kind::flag:
                        item.hps[key] = sampler.uniform01() < 0.5 ? 1.0 : 0.0;
                        break;
                }
            }
            item.stream = static_cast<std::uint64_t>(work.size()) + 1;
            work.push_back(std::move(item));
        }
    }

    std::vector<TrialResult> results(work.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t g = next.fetch_add(1);
            if (g >= work.size()) return;
            const WorkItem& item = work[g];
            results[g] =
                execute_trial(spec, *objective, *item.sweep, item.trial, item.hps, item.stream);
        }
    };

    unsigned n_threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                          : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(work.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

std::vector<TrialResult> ranked(std::vector<TrialResult> results, const std::string& metric) {
    std::stable_sort(results.begin(), results.end(),
                     [&](const TrialResult& a, const TrialResult& b) {
                         if (a.diverged != b.diverged) return !a.diverged;
                         if (a.diverged) return false;
                         return metric_of(a, metric) < metric_of(b, metric);
                     });
    return results;
}

Scalar best_metric(const std::vector<TrialResult>& results, const std::string& optimizer,
                   const std::string& metric) {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (const TrialResult& r : results) {
        if (r.optimizer != optimizer || r.diverged) continue;
        best = std::min(best, metric_of(r, metric));
    }
    return best;
}

void write_sweep_csv(const std::string& path, const std::vector<TrialResult>& ranked_results,
                     const std::string& metric) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << "rank,optimizer,trial," << metric << ",final_f,best_f,terminated,diverged,hps\n";
    std::int64_t rank = 1;
    for (const TrialResult& r : ranked_results) {
        std::ostringstream hps;
        bool first = true;
        for (const auto& [key, value] : r.hps) {
            if (!first) hps << ';';
            hps << key << '=' << format_float(value);
            first = false;
        }
        out << rank++ << ',' << r.optimizer << ',' << r.trial << ','
            << format_float(metric_of(r, metric)) << ',' << format_float(r.final_f) << ','
            << format_float(r.best_f) << ',' << (r.terminated ? 1 : 0) << ','
            << (r.diverged ? 1 : 0) << ',' << hps.str() << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace ecd::harness
