#pragma once

#include <cstdint>

#include "ecd/rng.hpp"
#include "ecd/types.hpp"

namespace ecd::theory {

// Isotropic quadratic basin F(theta) = f2 * |theta|^2 + f_min used by the
// closed-form predictions below. `energy` is the conserved value the
// trajectory carries; `f_init` is the objective value at initialization
// (needed only by the chaos-scale advisories).
struct BasinSpec {
    Index n = 2;
    Scalar f2 = 1.0;
    Scalar f_min = 0.0;
    Scalar f0 = 0.0;
    Scalar eta = 1.0;
    Scalar energy = 1.0;
    Scalar f_init = 0.0;

    void validate() const;
};

// Stationary density over potential values for an n-dimensional isotropic
// system at conserved energy `energy`:
//   energy^((n-2)/2) * pi^(n/2) / Gamma(n/2) * v^(-n/2).
// The log form sidesteps overflow of the Gamma and power factors at large n.
Scalar log_measure_density(Scalar v, Index n, Scalar energy);
Scalar measure_density(Scalar v, Index n, Scalar energy);

// Squared radius where the stationary measure peaks:
//   (f_min - f0) * (n - 1) / (f2 * (1 + n*(eta - 1))).
// Requires n >= 2; the peak sits at zero radius when f_min = f0.
Scalar concentration_radius_sq(const BasinSpec& b);

// Parameter-space speed at the concentration radius:
//   sqrt(energy) * ((f_min - f0) * n * eta / (1 + n*(eta - 1)))^(eta/2).
Scalar speed_at_radius(const BasinSpec& b);

// Monte-Carlo estimate of the expected cosine of the per-step rotation angle
// for chaos scale nu in dimension n:
//   E[ (1 + nu*z1) / sqrt(1 + 2*nu*z1 + nu^2*|z|^2) ],  z ~ N(0, I_n).
// The reference direction is fixed to the first basis vector; by isotropy of
// z the distribution does not depend on that choice.
Scalar expected_bounce_cosine(Scalar nu, Index n, RngStream& rng, std::int64_t samples);

// Advisory chaos scale giving roughly one full rotation per orbit at the
// concentration radius. Two closed forms, selected by eta:
//   eta > 1 (requires f0 = 0, f_min > 0, f_init > 0):
//     (dt/sqrt(n)) * sqrt(f2/f_min) * (f_min/f_init)^(eta/2)
//                  * (eta/(eta-1))^(eta/2) * sqrt(eta-1)
//   eta = 1 (requires f_init - f0 > 0):
//     (dt/sqrt(n)) * sqrt(f2/(f_init - f0))
// These are heuristics for seeding sweeps, not guarantees.
Scalar nu_star_eta_gt1(const BasinSpec& b, Scalar dt);
Scalar nu_star_eta1(const BasinSpec& b, Scalar dt);
Scalar nu_star(const BasinSpec& b, Scalar dt);

}  // namespace ecd::theory
