#include "ecd/baselines.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace ecd::baselines {

namespace {

void require_finite_eval(const ObjectiveEvaluation& eval, std::int64_t step) {
    if (!std::isfinite(eval.value) || !all_finite(eval.gradient)) {
        throw NumericalError("non-finite objective or gradient at step " + std::to_string(step));
    }
}

}  // namespace

void GdmHyperParams::validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (!(beta >= 0) || !(beta <= 1)) throw DomainError("beta must lie in [0, 1]");
}

GdmState gdm_init(ParamVector theta0) {
    GdmState state;
    state.theta = validated(std::move(theta0), "theta0");
    state.pi = ParamVector::Zero(state.theta.size());
    return state;
}

GdmState gdm_step(GdmState state, const GdmHyperParams& hp, const Objective& objective,
                  BatchToken batch) {
    const ObjectiveEvaluation eval = objective.evaluate(state.theta, batch);
    require_finite_eval(eval, state.step);
    state.last_f = eval.value;
    state.pi = hp.beta * state.pi - eval.gradient;
    state.theta += hp.alpha * state.pi;
    ++state.step;
    return state;
}

void AdamHyperParams::validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (!(beta1 >= 0) || !(beta1 < 1)) throw DomainError("beta1 must lie in [0, 1)");
    if (!(beta2 >= 0) || !(beta2 < 1)) throw DomainError("beta2 must lie in [0, 1)");
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (!(weight_decay >= 0)) throw DomainError("weight_decay must be non-negative");
}

AdamState adam_init(ParamVector theta0) {
    AdamState state;
    state.theta = validated(std::move(theta0), "theta0");
    state.m = ParamVector::Zero(state.theta.size());
    state.v = ParamVector::Zero(state.theta.size());
    return state;
}

AdamState adam_step(AdamState state, const AdamHyperParams& hp, const Objective& objective,
                    BatchToken batch) {
    const ObjectiveEvaluation eval = objective.evaluate(state.theta, batch);
    require_finite_eval(eval, state.step);
    state.last_f = eval.value;

    ParamVector grad = eval.gradient;
    if (hp.weight_decay > 0 && !hp.decoupled_wd) grad += hp.weight_decay * state.theta;

    state.m = hp.beta1 * state.m + (1.0 - hp.beta1) * grad;
    state.v = hp.beta2 * state.v + (1.0 - hp.beta2) * grad.cwiseProduct(grad);

    const std::int64_t t = state.step + 1;
    const Scalar m_corr = 1.0 - std::pow(hp.beta1, static_cast<Scalar>(t));
    const Scalar v_corr = 1.0 - std::pow(hp.beta2, static_cast<Scalar>(t));

    if (hp.weight_decay > 0 && hp.decoupled_wd) state.theta *= (1.0 - hp.alpha * hp.weight_decay);
    state.theta -= (hp.alpha / m_corr) *
                   (state.m.array() / ((state.v.array() / v_corr).sqrt() + hp.eps)).matrix();
    ++state.step;
    return state;
}

namespace {

constexpr Scalar kNaN = std::numeric_limits<Scalar>::quiet_NaN();

template <typename State, typename Hp, typename StepFn, typename PiNormFn>
BaselineRunResult run_generic(State& state, const Hp& hp, const Objective& objective,
                              std::int64_t max_steps, std::int64_t record_every,
                              const RecordSink& sink, bool batched, StepFn&& do_step,
                              PiNormFn&& pi_norm_of) {
    hp.validate();
    BaselineRunResult result;
    while (state.step < max_steps) {
        BatchToken batch;
        if (batched) batch = static_cast<std::uint64_t>(state.step);
        state = do_step(std::move(state), hp, objective, batch);
        result.final_f = state.last_f;
        result.best_f = std::min(result.best_f, state.last_f);
        const bool due = record_every > 0 && state.step % record_every == 0;
        if (sink && (due || state.step >= max_steps)) {
            TrajectoryRecord rec;
            rec.step = state.step;
            rec.f = state.last_f;
            rec.energy = kNaN;
            rec.pi_norm = pi_norm_of(state);
            rec.theta_norm = norm(state.theta);
            sink(rec, state.theta);
        }
    }
    result.steps = state.step;
    return result;
}

}  // namespace

BaselineRunResult run_gdm(GdmState& state, const GdmHyperParams& hp, const Objective& objective,
                          std::int64_t max_steps, std::int64_t record_every,
                          const RecordSink& sink, bool batched) {
    return run_generic(
        state, hp, objective, max_steps, record_every, sink, batched,
        [](GdmState s, const GdmHyperParams& h, const Objective& o, BatchToken b) {
            return gdm_step(std::move(s), h, o, b);
        },
        [](const GdmState& s) { return norm(s.pi); });
}

BaselineRunResult run_adam(AdamState& state, const AdamHyperParams& hp, const Objective& objective,
                           std::int64_t max_steps, std::int64_t record_every,
                           const RecordSink& sink, bool batched) {
    return run_generic(
        state, hp, objective, max_steps, record_every, sink, batched,
        [](AdamState s, const AdamHyperParams& h, const Objective& o, BatchToken b) {
            return adam_step(std::move(s), h, o, b);
        },
        [](const AdamState&) { return kNaN; });
}

}  // namespace ecd::baselines
