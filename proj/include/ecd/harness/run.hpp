#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>

#include "ecd/baselines.hpp"
#include "ecd/ecdsep.hpp"
#include "ecd/harness/config.hpp"
#include "ecd/objective.hpp"
#include "ecd/types.hpp"

namespace ecd::harness {

// [problem] section: which objective to build and where to start.
struct ProblemConfig {
    std::string name;  // zakharov | ackley | basin | logistic
    Index n = 2;
    Scalar f2 = 1.0;     // basin curvature
    Scalar f_min = 0.0;  // basin floor
    Index samples = 256;
    Index batch_size = 32;
    std::uint64_t data_seed = 1;
    ParamVector theta0;
};

// [optimizer] section: which method and its hyperparameters. Only the record
// matching `name` is read.
struct OptimizerConfig {
    std::string name;  // ecdsep | gdm | adam
    EcdHyperParams ecd;
    baselines::GdmHyperParams gdm;
    baselines::AdamHyperParams adam;
};

// [run] section plus output destinations.
struct RunConfig {
    ProblemConfig problem;
    OptimizerConfig optimizer;
    std::int64_t max_steps = 1000;
    std::uint64_t seed = 0;
    std::int64_t record_every = 0;  // 0: resolve by problem kind (1, or 10 for logistic)
    bool batched = false;
    std::string out_prefix;  // empty suppresses artifacts
    bool svg = false;

    std::int64_t resolved_record_every() const {
        if (record_every > 0) return record_every;
        return problem.name == "logistic" ? 10 : 1;
    }
};

struct RunSummary {
    Scalar final_f = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar best_f = std::numeric_limits<Scalar>::infinity();
    std::int64_t steps = 0;
    bool terminated = false;
    double wall_ms = 0;
};

ProblemConfig load_problem(const Config& cfg);
OptimizerConfig load_optimizer(const Config& cfg, const std::string& section = "optimizer");
RunConfig load_run_config(const Config& cfg);

std::unique_ptr<Objective> make_objective(const ProblemConfig& pc);

// JSON rendering of a summary, key order fixed.
std::string summary_to_json(const RunSummary& summary);

// Executes one configured run; writes <out>.csv, <out>.json (and <out>.svg
// when requested) if an output prefix is set. The optimizer's random stream
// is RngStream(seed, 0). `extra`, when set, sees every recorded row alongside
// the current parameters.
RunSummary run_single(const RunConfig& rc, const RecordSink& extra = nullptr);

}  // namespace ecd::harness
