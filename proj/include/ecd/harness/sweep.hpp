#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ecd/harness/run.hpp"

namespace ecd::harness {

// One hyperparameter search range. Scale-like parameters use log_uniform;
// flag samples a boolean; fixed pins the value for every trial.
struct HpRange {
    enum class Kind { fixed, linear, log_uniform, flag };
    Kind kind = Kind::fixed;
    Scalar lo = 0;  // fixed value lives here
    Scalar hi = 0;

    static HpRange parse(const std::string& raw);
};

struct OptimizerSweep {
    std::string name;  // ecdsep | gdm | adam
    std::map<std::string, HpRange> ranges;
};

// Fixed-budget random search: every optimizer gets the same number of trials
// and the same step count per trial, all from one fixed start point.
struct SweepSpec {
    ProblemConfig problem;
    std::vector<OptimizerSweep> optimizers;
    std::int64_t trials = 1;
    std::int64_t steps = 250;
    std::string metric = "final_f";  // or best_f
    std::uint64_t seed = 0;
    bool batched = false;
    int threads = 0;  // 0: hardware concurrency
    std::string out_prefix;
};

struct TrialResult {
    std::string optimizer;
    std::int64_t trial = 0;
    std::map<std::string, Scalar> hps;
    Scalar final_f = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar best_f = std::numeric_limits<Scalar>::quiet_NaN();
    bool terminated = false;
    bool diverged = false;
};

// Reads [problem], [sweep] and one section per listed optimizer. Per-optimizer
// budget overrides are rejected so the equal-budget contract cannot be broken
// in a config file.
SweepSpec load_sweep_spec(const Config& cfg);

// Samples all hyperparameters up front from RngStream(seed, 0), then runs the
// trials (in parallel; trial g draws from RngStream(seed, g + 1)). Results
// come back in (optimizer, trial) order regardless of scheduling.
std::vector<TrialResult> run_sweep(const SweepSpec& spec);

// Metric ascending, diverged trials last; ties keep (optimizer, trial) order.
std::vector<TrialResult> ranked(std::vector<TrialResult> results, const std::string& metric);

// Best (lowest) metric over an optimizer's non-diverged trials; +inf if none.
Scalar best_metric(const std::vector<TrialResult>& results, const std::string& optimizer,
                   const std::string& metric);

void write_sweep_csv(const std::string& path, const std::vector<TrialResult>& ranked_results,
                     const std::string& metric);

}  // namespace ecd::harness
