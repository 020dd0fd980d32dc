#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecd/objective.hpp"
#include "ecd/rng.hpp"
#include "ecd/trajectory.hpp"
#include "ecd/types.hpp"

namespace ecd {

/// Hyperparameters of the energy-conserving descent step.
///
/// eta >= 1 is the concentration exponent and must be set explicitly (the
/// zero default fails validation). s = 1 selects the regularized kinetic term
/// log(|pi|^2 + 1); s = 0 the bare log |pi|^2, in which case delta_e must be
/// positive (it defaults to 1 there, and to 0 when s = 1).
struct EcdHyperParams {
    Scalar dt = 0.4;
    Scalar eta = 0.0;
    Scalar nu = 1e-5;
    Scalar f0 = 0.0;
    std::optional<Scalar> delta_e{};  // resolved by effective_delta_e()
    Scalar wd = 0.0;
    int s = 1;
    bool conserve_energy = true;
    bool self_tune_f0 = false;
    Scalar eps1 = 1e-10;   // projection dead-band on |pi|^2
    Scalar eps2 = 1e-40;   // potential floor: stop (or retune F0) below it
    Scalar f0_bump = 5.0;  // multiplier on V in the self-tuning correction

    Scalar effective_delta_e() const {
        return delta_e.value_or(s == 1 ? 0.0 : 1.0);
    }
    /// Throws DomainError on any violated constraint.
    void validate() const;
};

enum class Termination {
    none,
    reached_f0,   // potential fell below eps2 (or exactly zero)
    crossed_f0,   // objective dropped below F0_eff without self-tuning
};

std::string to_string(Termination t);

/// Optimizer state. A value: step() consumes one and returns the successor.
/// `energy` is the conserved target, set once by init() and never mutated.
/// The fields after `termination` are per-step diagnostics, not part of the
/// flat serialized record.
struct EcdState {
    ParamVector theta;
    ParamVector pi;
    Scalar energy = 0;
    Scalar delta_f0 = 0;
    std::int64_t step = 0;
    Termination termination = Termination::none;

    bool projection_fired = false;   // last step rescaled |pi| onto the shell
    Scalar projection_energy = 0;    // measured energy right after that rescale
    Scalar measured_energy = 0;      // midpoint-convention energy of last step
    Scalar last_f = 0;               // objective value evaluated in last step
    std::vector<std::string> warnings;

    bool terminated() const { return termination != Termination::none; }
};

/// (F - F0_eff + wd/2 |theta|^2)^eta with F0_eff = f0 + delta_f0.
/// Negative bases are legal only for integer eta (odd eta preserves the sign);
/// a negative base with fractional eta throws DomainError.
Scalar effective_potential(Scalar f_value, const ParamVector& theta,
                           const EcdHyperParams& hp, Scalar delta_f0 = 0);

/// Builds the starting state: conserved energy
/// E = (F(theta0) - f0 + wd/2 |theta0|^2)^eta (delta_e + s) and momentum of
/// squared norm delta_e pointing down the gradient. E <= 0 (start at or below
/// F0) is an initialization error. A zero gradient with delta_e > 0 falls back
/// to the uniform direction (1,...,1)/sqrt(n) and records a warning.
EcdState init(const Objective& objective, ParamVector theta0,
              const EcdHyperParams& hp, BatchToken batch = {});

/// Rescales |pi| onto the energy shell: pi_c^2 = E/V - s, applied only when
/// |pi|^2 strays from it by more than eps1 and the shell value is positive.
/// Skips (with a warning) when pi is exactly zero, and skips silently when
/// V <= 0. Sets projection_fired / projection_energy diagnostics.
EcdState project_energy(EcdState state, Scalar v, const EcdHyperParams& hp);

/// Norm-preserving random rotation: pi' = (|pi| / |pi/|pi| + nu z|) (pi/|pi| + nu z)
/// with z standard normal. nu <= 0 or |pi| = 0 returns pi unchanged without
/// consuming randomness.
ParamVector rotate_momentum(const ParamVector& pi, Scalar nu, RngStream& rng);

/// One discrete step: evaluate, (self-tune or stop on a crossed/reached F0),
/// project onto the energy shell, kick pi, move theta by 2 dt pi/(|pi|^2+s),
/// rotate. Throws NumericalError if the objective or gradient is non-finite.
EcdState step(EcdState state, const Objective& objective, const EcdHyperParams& hp,
              RngStream& rng, BatchToken batch = {});

struct RunOptions {
    std::int64_t max_steps = 1000;
    std::int64_t record_every = 1;
    // When set, step t (1-based) evaluates on batch token t-1 so minibatch
    // objectives cycle deterministically; otherwise the full objective is used.
    bool batched = false;
};

struct RunResult {
    EcdState state;
    Scalar best_f = 0;
};

/// Runs step() until termination or max_steps, emitting a record every
/// record_every steps (final step always emitted).
RunResult run(const Objective& objective, ParamVector theta0, const EcdHyperParams& hp,
              const RunOptions& opts, RngStream& rng, const RecordSink& sink = {});

/// Continuation of a run from an existing state (checkpoint resume).
RunResult run(EcdState state, const Objective& objective, const EcdHyperParams& hp,
              const RunOptions& opts, RngStream& rng, const RecordSink& sink = {});

/// Flat serialization [n, theta.., pi.., energy, delta_f0, step, termination].
std::vector<Scalar> to_flat(const EcdState& state);
EcdState state_from_flat(const std::vector<Scalar>& flat);

}  // namespace ecd
