#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ecd/types.hpp"

namespace ecd {

struct ObjectiveEvaluation {
    Scalar value;
    ParamVector gradient;
};

/// Opaque minibatch selector. Objectives without batches ignore it; objectives
/// with batches must map equal tokens to identical (value, gradient) pairs.
using BatchToken = std::optional<std::uint64_t>;

/// A differentiable objective F: R^n -> R.
class Objective {
public:
    virtual ~Objective() = default;

    virtual Index dimension() const = 0;

    /// Value and gradient at theta. Deterministic: equal (theta, batch) in,
    /// bit-identical evaluation out. Empty batch means the full objective.
    virtual ObjectiveEvaluation evaluate(const ParamVector& theta,
                                         BatchToken batch = {}) const = 0;

    virtual std::string name() const = 0;
};

}  // namespace ecd
