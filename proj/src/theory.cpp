#include "ecd/theory.hpp"

#include <cmath>
#include <numbers>

namespace ecd::theory {

void BasinSpec::validate() const {
    if (n < 1) throw DomainError("basin dimension must be at least 1");
    if (!(f2 > 0) || !std::isfinite(f2)) throw DomainError("f2 must be positive");
    if (!(eta >= 1) || !std::isfinite(eta)) throw DomainError("eta must be at least 1");
    if (!(energy > 0) || !std::isfinite(energy)) throw DomainError("energy must be positive");
    if (f_min < f0) throw DomainError("f_min must not lie below f0");
}

Scalar log_measure_density(Scalar v, Index n, Scalar energy) {
    if (!(v > 0)) throw DomainError("potential value must be positive");
    if (!(energy > 0)) throw DomainError("energy must be positive");
    if (n < 1) throw DomainError("dimension must be at least 1");
    const Scalar half_n = 0.5 * static_cast<Scalar>(n);
    return (half_n - 1.0) * std::log(energy) + half_n * std::log(std::numbers::pi) -
           std::lgamma(half_n) - half_n * std::log(v);
}

Scalar measure_density(Scalar v, Index n, Scalar energy) {
    return std::exp(log_measure_density(v, n, energy));
}

Scalar concentration_radius_sq(const BasinSpec& b) {
    b.validate();
    if (b.n < 2) throw DomainError("concentration radius needs dimension at least 2");
    const Scalar denom = 1.0 + static_cast<Scalar>(b.n) * (b.eta - 1.0);
    if (!(denom > 0)) throw DomainError("non-positive saddle-point denominator");
    return (b.f_min - b.f0) * static_cast<Scalar>(b.n - 1) / (b.f2 * denom);
}

Scalar speed_at_radius(const BasinSpec& b) {
    b.validate();
    if (b.n < 2) throw DomainError("speed at radius needs dimension at least 2");
    const Scalar denom = 1.0 + static_cast<Scalar>(b.n) * (b.eta - 1.0);
    if (!(denom > 0)) throw DomainError("non-positive saddle-point denominator");
    const Scalar base = (b.f_min - b.f0) * static_cast<Scalar>(b.n) * b.eta / denom;
    if (base < 0) throw DomainError("negative speed base");
    return std::sqrt(b.energy) * std::pow(base, 0.5 * b.eta);
}

Scalar expected_bounce_cosine(Scalar nu, Index n, RngStream& rng, std::int64_t samples) {
    if (samples < 1) throw DomainError("need at least one sample");
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (!(nu >= 0)) throw DomainError("nu must be non-negative");
    Scalar sum = 0.0;
    for (std::int64_t k = 0; k < samples; ++k) {
        Scalar z1 = 0.0;
        Scalar zsq = 0.0;
        for (Index i = 0; i < n; ++i) {
            const Scalar z = rng.normal();
            if (i == 0) z1 = z;
            zsq += z * z;
        }
        sum += (1.0 + nu * z1) / std::sqrt(1.0 + 2.0 * nu * z1 + nu * nu * zsq);
    }
    return sum / static_cast<Scalar>(samples);
}

Scalar nu_star_eta_gt1(const BasinSpec& b, Scalar dt) {
    b.validate();
    if (!(dt > 0)) throw DomainError("dt must be positive");
    if (!(b.eta > 1)) throw DomainError("this branch needs eta above 1");
    if (b.f0 != 0) throw DomainError("this branch assumes a zero offset");
    if (!(b.f_min > 0)) throw DomainError("this branch needs a positive f_min");
    if (!(b.f_init > 0)) throw DomainError("this branch needs a positive f_init");
    const Scalar root_n = std::sqrt(static_cast<Scalar>(b.n));
    return (dt / root_n) * std::sqrt(b.f2 / b.f_min) *
           std::pow(b.f_min / b.f_init, 0.5 * b.eta) *
           std::pow(b.eta / (b.eta - 1.0), 0.5 * b.eta) * std::sqrt(b.eta - 1.0);
}

Scalar nu_star_eta1(const BasinSpec& b, Scalar dt) {
    b.validate();
    if (!(dt > 0)) throw DomainError("dt must be positive");
    if (!(b.f_init - b.f0 > 0)) throw DomainError("f_init must lie above f0");
    const Scalar root_n = std::sqrt(static_cast<Scalar>(b.n));
    return (dt / root_n) * std::sqrt(b.f2 / (b.f_init - b.f0));
}

Scalar nu_star(const BasinSpec& b, Scalar dt) {
    return b.eta == 1.0 ? nu_star_eta1(b, dt) : nu_star_eta_gt1(b, dt);
}

}  // namespace ecd::theory
