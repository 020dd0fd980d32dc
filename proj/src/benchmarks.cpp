#include "ecd/benchmarks.hpp"

#include <cmath>
#include <numbers>

#include "ecd/rng.hpp"

namespace ecd::bench {

Zakharov::Zakharov(Index n) : n_(n) {
    if (n < 1) throw DomainError("zakharov: dimension must be >= 1");
}

ObjectiveEvaluation Zakharov::evaluate(const ParamVector& theta, BatchToken) const {
    if (theta.size() != n_) throw DimensionError("zakharov: wrong dimension");
    Scalar s = 0;
    for (Index i = 0; i < n_; ++i) s += 0.5 * static_cast<Scalar>(i + 1) * theta[i];
    const Scalar s2 = s * s;
    const Scalar f = theta.squaredNorm() + s2 + s2 * s2;
    ParamVector g(n_);
    const Scalar ds = s + 2.0 * s * s2;  // d(S^2+S^4)/dS * 1/2
    for (Index i = 0; i < n_; ++i)
        g[i] = 2.0 * theta[i] + ds * static_cast<Scalar>(i + 1);
    return {f, std::move(g)};
}

ObjectiveEvaluation RegularizedAckley::evaluate(const ParamVector& theta, BatchToken) const {
    if (theta.size() != 2) throw DimensionError("ackley: dimension must be 2");
    constexpr Scalar two_pi = 2.0 * std::numbers::pi;
    const Scalar t1 = theta[0], t2 = theta[1];
    const Scalar r2 = t1 * t1 + t2 * t2;
    if (r2 == 0.0) {
        // -20 e^0 and +20 cancel, as do -e^{cos 0} and +e: exactly zero.
        return {0.0, ParamVector::Zero(2)};
    }
    const Scalar cos_sum = 0.5 * (std::cos(two_pi * t1) + std::cos(two_pi * t2));
    const Scalar eb = std::exp(cos_sum);
    const Scalar u = std::sqrt(0.5 * r2);
    const Scalar ea = std::exp(-0.2 * u);
    const Scalar f = -20.0 * ea - eb + std::numbers::e + 20.0 + 1e-8 * r2 * r2 * r2 * r2;
    const Scalar da = 2.0 * ea / u;  // d(-20 e^{-0.2 u})/dtheta_i = da * theta_i
    const Scalar r6 = r2 * r2 * r2;
    ParamVector g(2);
    g[0] = da * t1 + eb * std::numbers::pi * std::sin(two_pi * t1) + 8e-8 * r6 * t1;
    g[1] = da * t2 + eb * std::numbers::pi * std::sin(two_pi * t2) + 8e-8 * r6 * t2;
    return {f, std::move(g)};
}

QuadraticBasin::QuadraticBasin(Index n, Scalar f2, Scalar f_min)
    : n_(n), f2_(f2), f_min_(f_min) {
    if (n < 1) throw DomainError("basin: dimension must be >= 1");
    if (!(f2 > 0)) throw DomainError("basin: curvature f2 must be positive");
}

ObjectiveEvaluation QuadraticBasin::evaluate(const ParamVector& theta, BatchToken) const {
    if (theta.size() != n_) throw DimensionError("basin: wrong dimension");
    return {f2_ * theta.squaredNorm() + f_min_, 2.0 * f2_ * theta};
}

SyntheticClassification::SyntheticClassification(Index n_features, Index n_samples,
                                                 Index batch_size, std::uint64_t data_seed)
    : n_features_(n_features), n_samples_(n_samples) {
    if (n_features < 1 || n_samples < 2)
        throw DomainError("logistic: need n_features >= 1 and n_samples >= 2");
    if (batch_size <= 0 || batch_size > n_samples) batch_size = n_samples;
    batch_size_ = batch_size;
    n_batches_ = (n_samples + batch_size - 1) / batch_size;

    // Balanced labels, class-conditional Gaussians at +/- mu with unit
    // covariance, |mu| = 1 so the blobs overlap but stay separable on average.
    const Scalar mu = 1.0 / std::sqrt(static_cast<Scalar>(n_features));
    RngStream rng(data_seed);
    x_.resize(n_samples, n_features);
    y_.resize(n_samples);
    for (Index i = 0; i < n_samples; ++i) {
        const Scalar label = (i < n_samples / 2) ? 0.0 : 1.0;
        const Scalar sign = label == 0.0 ? -1.0 : 1.0;
        y_[i] = label;
        for (Index j = 0; j < n_features; ++j) x_(i, j) = sign * mu + rng.normal();
    }
    // Fixed shuffle so contiguous slices form class-mixed batches.
    RngStream shuffle_rng(data_seed, 1);
    for (Index i = n_samples - 1; i > 0; --i) {
        const Index j = static_cast<Index>(shuffle_rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        x_.row(i).swap(x_.row(j));
        std::swap(y_[i], y_[j]);
    }
}

ObjectiveEvaluation SyntheticClassification::evaluate(const ParamVector& theta,
                                                      BatchToken batch) const {
    if (theta.size() != n_features_ + 1) throw DimensionError("logistic: wrong dimension");
    Index lo = 0, hi = n_samples_;
    if (batch.has_value()) {
        const Index b = static_cast<Index>(*batch % static_cast<std::uint64_t>(n_batches_));
        lo = b * batch_size_;
        hi = std::min(lo + batch_size_, n_samples_);
    }
    const Index m = hi - lo;
    const auto w = theta.head(n_features_);
    const Scalar bias = theta[n_features_];

    Scalar loss = 0;
    ParamVector g = ParamVector::Zero(n_features_ + 1);
    for (Index i = lo; i < hi; ++i) {
        const Scalar z = x_.row(i).dot(w) + bias;
        // softplus(z) - y z, numerically stable in both tails
        loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y_[i] * z;
        const Scalar p = 1.0 / (1.0 + std::exp(-z));
        const Scalar r = p - y_[i];
        g.head(n_features_) += r * x_.row(i).transpose();
        g[n_features_] += r;
    }
    const Scalar inv_m = 1.0 / static_cast<Scalar>(m);
    return {loss * inv_m, g * inv_m};
}

}  // namespace ecd::bench
