#include "ecd/ecdsep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ecd {

namespace {

bool is_integer(Scalar x) { return std::isfinite(x) && std::nearbyint(x) == x; }

Scalar signed_pow(Scalar base, Scalar eta) {
    if (base >= 0.0) return std::pow(base, eta);
    if (!is_integer(eta))
        throw DomainError(
            "effective potential: negative base with non-integer eta; "
            "enable self-tuning or lower f0");
    return std::pow(base, eta);  // integral exponent: sign handled by pow
}

Scalar potential_base(Scalar f, Scalar theta_sq, const EcdHyperParams& hp, Scalar delta_f0) {
    return f - (hp.f0 + delta_f0) + 0.5 * hp.wd * theta_sq;
}

}  // namespace

void EcdHyperParams::validate() const {
    if (!(dt > 0)) throw DomainError("dt must be positive");
    if (!(eta >= 1)) throw DomainError("eta must be >= 1 (and set explicitly)");
    if (nu < 0) throw DomainError("nu must be >= 0");
    if (s != 0 && s != 1) throw DomainError("s must be 0 or 1");
    if (wd < 0) throw DomainError("wd must be >= 0");
    if (delta_e && *delta_e < 0) throw DomainError("delta_e must be >= 0");
    if (s == 0 && !(effective_delta_e() > 0))
        throw DomainError("s = 0 requires delta_e > 0");
    if (!(eps1 > 0) || !(eps2 > 0)) throw DomainError("eps1 and eps2 must be positive");
    if (self_tune_f0 && !(is_integer(eta) && std::fmod(eta, 2.0) == 1.0))
        throw DomainError("self-tuning requires an odd integer eta");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::none: return "none";
        case Termination::reached_f0: return "reached_f0";
        case Termination::crossed_f0: return "crossed_f0";
    }
    return "unknown";
}

Scalar effective_potential(Scalar f_value, const ParamVector& theta,
                           const EcdHyperParams& hp, Scalar delta_f0) {
    return signed_pow(potential_base(f_value, theta.squaredNorm(), hp, delta_f0), hp.eta);
}

EcdState init(const Objective& objective, ParamVector theta0,
              const EcdHyperParams& hp, BatchToken batch) {
    hp.validate();
    theta0 = validated(std::move(theta0), "theta0");
    if (theta0.size() != objective.dimension())
        throw DimensionError("init: theta0 does not match objective dimension");

    EcdState st;
    st.theta = std::move(theta0);
    const auto eval = objective.evaluate(st.theta, batch);
    if (!std::isfinite(eval.value) || !all_finite(eval.gradient))
        throw NumericalError("init: objective not finite at the start point");

    const Scalar de = hp.effective_delta_e();
    const Scalar base = potential_base(eval.value, st.theta.squaredNorm(), hp, 0.0);
    st.energy = signed_pow(base, hp.eta) * (de + static_cast<Scalar>(hp.s));
    if (!(st.energy > 0))
        throw DomainError("init: conserved energy must be positive (start point below f0?)");

    const Index n = st.theta.size();
    if (de > 0) {
        const Scalar gn = eval.gradient.norm();
        if (gn == 0) {
            st.pi = ParamVector::Constant(n, std::sqrt(de / static_cast<Scalar>(n)));
            st.warnings.push_back("init: zero gradient, momentum set along (1,...,1)");
        } else {
            st.pi = -std::sqrt(de) / gn * eval.gradient;
        }
    } else {
        st.pi = ParamVector::Zero(n);
    }
    st.last_f = eval.value;
    st.measured_energy = st.energy;
    return st;
}

EcdState project_energy(EcdState state, Scalar v, const EcdHyperParams& hp) {
    state.projection_fired = false;
    if (v <= 0) return state;
    const Scalar pi_c2 = state.energy / v - static_cast<Scalar>(hp.s);
    const Scalar pi2 = state.pi.squaredNorm();
    if (std::abs(pi2 - pi_c2) <= hp.eps1 || !(pi_c2 > 0)) return state;
    if (pi2 == 0) {
        state.warnings.push_back("projection skipped: zero momentum off the energy shell");
        return state;
    }
    state.pi *= std::sqrt(pi_c2 / pi2);
    state.projection_fired = true;
    state.projection_energy = v * (state.pi.squaredNorm() + static_cast<Scalar>(hp.s));
    return state;
}

ParamVector rotate_momentum(const ParamVector& pi, Scalar nu, RngStream& rng) {
    if (nu <= 0) return pi;
    const Scalar pn = pi.norm();
    if (pn == 0) return pi;
    ParamVector candidate(pi.size());
    Scalar cn = 0;
    do {
        candidate = pi / pn + nu * rng.normal_vector(pi.size());
        cn = candidate.norm();
    } while (cn == 0);
    return (pn / cn) * candidate;
}

EcdState step(EcdState state, const Objective& objective, const EcdHyperParams& hp,
              RngStream& rng, BatchToken batch) {
    if (state.terminated()) return state;

    const auto eval = objective.evaluate(state.theta, batch);
    if (!std::isfinite(eval.value) || !all_finite(eval.gradient))
        throw NumericalError("non-finite objective or gradient at step " +
                             std::to_string(state.step + 1));
    state.last_f = eval.value;

    const Scalar theta_sq = state.theta.squaredNorm();
    const Scalar base = potential_base(eval.value, theta_sq, hp, state.delta_f0);
    const Scalar v = signed_pow(base, hp.eta);
    const Scalar s = static_cast<Scalar>(hp.s);

    if (hp.self_tune_f0 && v < hp.eps2) {
        // Retune the offset and skip the dynamics for this step.
        state.delta_f0 += hp.f0_bump * v;
        state.projection_fired = false;
        state.measured_energy = v * (state.pi.squaredNorm() + s);
        ++state.step;
        return state;
    }
    if (!hp.self_tune_f0 && v <= 0) {
        // base >= 0 with v = 0 means the objective sits exactly on f0 (or the
        // potential underflowed); base < 0 means it crossed below.
        state.measured_energy = v * (state.pi.squaredNorm() + s);
        state.termination = base >= 0 ? Termination::reached_f0 : Termination::crossed_f0;
        ++state.step;
        return state;
    }
    // From here v > 0, hence base != 0 and the kick divisor is safe.

    if (hp.conserve_energy) state = project_energy(std::move(state), v, hp);
    else state.projection_fired = false;

    const ParamVector pi_in = state.pi;
    state.pi -= (hp.dt * hp.eta / base) * (eval.gradient + hp.wd * state.theta);
    state.measured_energy =
        v * ((0.5 * (pi_in + state.pi)).squaredNorm() + s);

    const Scalar denom = state.pi.squaredNorm() + s;
    if (denom == 0) {
        state.warnings.push_back("theta update skipped: zero momentum with s = 0 at step " +
                                 std::to_string(state.step + 1));
    } else {
        state.theta += (2.0 * hp.dt / denom) * state.pi;
    }

    if (hp.nu > 0) state.pi = rotate_momentum(state.pi, hp.nu, rng);

    ++state.step;
    if (!hp.self_tune_f0 && v < hp.eps2) state.termination = Termination::reached_f0;
    return state;
}

namespace {

RunResult run_loop(EcdState state, const Objective& objective, const EcdHyperParams& hp,
                   const RunOptions& opts, RngStream& rng, const RecordSink& sink) {
    hp.validate();
    Scalar best = std::numeric_limits<Scalar>::infinity();
    while (!state.terminated() && state.step < opts.max_steps) {
        BatchToken token;
        if (opts.batched) token = static_cast<std::uint64_t>(state.step);
        state = step(std::move(state), objective, hp, rng, token);
        best = std::min(best, state.last_f);
        const bool due = opts.record_every > 0 && state.step % opts.record_every == 0;
        if (sink && (due || state.terminated() || state.step >= opts.max_steps)) {
            sink(TrajectoryRecord{state.step, state.last_f, state.measured_energy,
                                  state.pi.norm(), state.theta.norm()},
                 state.theta);
        }
    }
    return {std::move(state), best};
}

}  // namespace

RunResult run(const Objective& objective, ParamVector theta0, const EcdHyperParams& hp,
              const RunOptions& opts, RngStream& rng, const RecordSink& sink) {
    return run_loop(init(objective, std::move(theta0), hp), objective, hp, opts, rng, sink);
}

RunResult run(EcdState state, const Objective& objective, const EcdHyperParams& hp,
              const RunOptions& opts, RngStream& rng, const RecordSink& sink) {
    return run_loop(std::move(state), objective, hp, opts, rng, sink);
}

std::vector<Scalar> to_flat(const EcdState& state) {
    const Index n = state.theta.size();
    std::vector<Scalar> flat;
    flat.reserve(static_cast<std::size_t>(2 * n) + 5);
    flat.push_back(static_cast<Scalar>(n));
    for (Index i = 0; i < n; ++i) flat.push_back(state.theta[i]);
    for (Index i = 0; i < n; ++i) flat.push_back(state.pi[i]);
    flat.push_back(state.energy);
    flat.push_back(state.delta_f0);
    flat.push_back(static_cast<Scalar>(state.step));
    flat.push_back(static_cast<Scalar>(static_cast<int>(state.termination)));
    return flat;
}

EcdState state_from_flat(const std::vector<Scalar>& flat) {
    if (flat.size() < 5) throw DomainError("flat state: too short");
    const auto n = static_cast<Index>(flat[0]);
    if (n < 0 || flat.size() != static_cast<std::size_t>(2 * n) + 5)
        throw DomainError("flat state: length does not match dimension header");
    EcdState st;
    st.theta.resize(n);
    st.pi.resize(n);
    for (Index i = 0; i < n; ++i) st.theta[i] = flat[static_cast<std::size_t>(1 + i)];
    for (Index i = 0; i < n; ++i) st.pi[i] = flat[static_cast<std::size_t>(1 + n + i)];
    const std::size_t tail = static_cast<std::size_t>(1 + 2 * n);
    st.energy = flat[tail];
    st.delta_f0 = flat[tail + 1];
    st.step = static_cast<std::int64_t>(flat[tail + 2]);
    st.termination = static_cast<Termination>(static_cast<int>(flat[tail + 3]));
    return st;
}

}  // namespace ecd
