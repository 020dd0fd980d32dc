#pragma once

#include <cstdint>
#include <functional>

#include "ecd/types.hpp"

namespace ecd {

/// One logged row of an optimization trajectory.
///
/// `f` is the objective value evaluated during the step (at the pre-update
/// point, on that step's batch). `energy` is the measured conserved quantity
/// (F - F0_eff + wd/2 |theta|^2)^eta (|pi|^2 + s) sampled at the kick midpoint,
/// where its discretization error is second order in dt; NaN for optimizers
/// that conserve nothing. Norms are post-update.
struct TrajectoryRecord {
    std::int64_t step = 0;
    Scalar f = 0;
    Scalar energy = 0;
    Scalar pi_norm = 0;
    Scalar theta_norm = 0;
};

/// Trajectory sink. Receives each emitted record plus the post-step parameter
/// vector (for consumers that average or checkpoint iterates).
using RecordSink = std::function<void(const TrajectoryRecord&, const ParamVector&)>;

}  // namespace ecd
