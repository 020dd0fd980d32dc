#pragma once

#include <cstdint>
#include <vector>

#include "ecd/objective.hpp"

namespace ecd::bench {

/// F(theta) = sum_i theta_i^2 + S^2 + S^4 with S = (1/2) sum_i i*theta_i
/// (1-based i). Global minimum 0 at the origin; notoriously ill-conditioned
/// through the quartic coupling term.
class Zakharov final : public Objective {
public:
    explicit Zakharov(Index n);
    Index dimension() const override { return n_; }
    ObjectiveEvaluation evaluate(const ParamVector& theta, BatchToken batch = {}) const override;
    std::string name() const override { return "zakharov"; }

private:
    Index n_;
};

/// Two-dimensional Ackley function plus the tiny confining term
/// 1e-8 (theta1^2+theta2^2)^4 that removes the flat far field. Minimum 0 at
/// the origin; the gradient at the exact origin is defined as zero.
class RegularizedAckley final : public Objective {
public:
    Index dimension() const override { return 2; }
    ObjectiveEvaluation evaluate(const ParamVector& theta, BatchToken batch = {}) const override;
    std::string name() const override { return "ackley"; }
};

/// Isotropic quadratic basin F(theta) = f2 |theta|^2 + f_min.
class QuadraticBasin final : public Objective {
public:
    QuadraticBasin(Index n, Scalar f2, Scalar f_min);
    Index dimension() const override { return n_; }
    ObjectiveEvaluation evaluate(const ParamVector& theta, BatchToken batch = {}) const override;
    std::string name() const override { return "basin"; }
    Scalar f2() const { return f2_; }
    Scalar f_min() const { return f_min_; }

private:
    Index n_;
    Scalar f2_;
    Scalar f_min_;
};

/// Mean cross-entropy of a logistic model on a fixed synthetic two-blob
/// classification set (class-conditional unit Gaussians at +/- mu, balanced
/// labels, deterministic in the data seed). theta = [w; b], dimension
/// n_features + 1. A batch token selects minibatch (token mod n_batches) over
/// a fixed shuffled sample order; an empty token evaluates the full set.
class SyntheticClassification final : public Objective {
public:
    SyntheticClassification(Index n_features, Index n_samples, Index batch_size,
                            std::uint64_t data_seed);

    Index dimension() const override { return n_features_ + 1; }
    ObjectiveEvaluation evaluate(const ParamVector& theta, BatchToken batch = {}) const override;
    std::string name() const override { return "logistic"; }

    Index n_batches() const { return n_batches_; }
    Index n_samples() const { return n_samples_; }

private:
    Index n_features_;
    Index n_samples_;
    Index batch_size_;
    Index n_batches_;
    Eigen::MatrixXd x_;           // n_samples x n_features, shuffled order
    Eigen::VectorXd y_;           // labels in {0,1}, same order
};

}  // namespace ecd::bench
