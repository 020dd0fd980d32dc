#pragma once

#include <cstdint>
#include <limits>

#include "ecd/objective.hpp"
#include "ecd/trajectory.hpp"
#include "ecd/types.hpp"

namespace ecd::baselines {

// Gradient descent with heavy-ball momentum, written in the velocity form
//   pi'    = beta * pi - grad
//   theta' = theta + alpha * pi'
// so that beta = 1 with zero gradient keeps the velocity unchanged.
struct GdmHyperParams {
    Scalar alpha = 1e-3;
    Scalar beta = 0.9;

    void validate() const;
};

struct GdmState {
    ParamVector theta;
    ParamVector pi;
    std::int64_t step = 0;
    Scalar last_f = std::numeric_limits<Scalar>::quiet_NaN();
};

GdmState gdm_init(ParamVector theta0);
GdmState gdm_step(GdmState state, const GdmHyperParams& hp, const Objective& objective,
                  BatchToken batch = {});

struct AdamHyperParams {
    Scalar alpha = 1e-3;
    Scalar beta1 = 0.9;
    Scalar beta2 = 0.999;
    Scalar eps = 1e-8;
    Scalar weight_decay = 0.0;
    // false: decay is added to the gradient before the moment updates.
    // true: decay is applied directly to the parameters (decoupled form).
    bool decoupled_wd = false;

    void validate() const;
};

struct AdamState {
    ParamVector theta;
    ParamVector m;
    ParamVector v;
    std::int64_t step = 0;
    Scalar last_f = std::numeric_limits<Scalar>::quiet_NaN();
};

AdamState adam_init(ParamVector theta0);
AdamState adam_step(AdamState state, const AdamHyperParams& hp, const Objective& objective,
                    BatchToken batch = {});

struct BaselineRunResult {
    Scalar final_f = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar best_f = std::numeric_limits<Scalar>::infinity();
    std::int64_t steps = 0;
};

// Both loops emit TrajectoryRecords compatible with the conservative
// optimizer's trace format; fields without a counterpart (the energy column,
// and the momentum norm for the adaptive method) are reported as NaN.
BaselineRunResult run_gdm(GdmState& state, const GdmHyperParams& hp, const Objective& objective,
                          std::int64_t max_steps, std::int64_t record_every = 0,
                          const RecordSink& sink = {}, bool batched = false);
BaselineRunResult run_adam(AdamState& state, const AdamHyperParams& hp, const Objective& objective,
                           std::int64_t max_steps, std::int64_t record_every = 0,
                           const RecordSink& sink = {}, bool batched = false);

}  // namespace ecd::baselines
