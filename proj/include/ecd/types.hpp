#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ecd {

using Scalar = double;
using Index = Eigen::Index;

/// Dense parameter vector. All optimizer state lives in these.
using ParamVector = Eigen::VectorXd;

/// Thrown when two vectors of different lengths are combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a value or gradient becomes non-finite mid-run.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool all_finite(const ParamVector& v) { return v.allFinite(); }

/// Pass-through check used at construction boundaries: rejects NaN/Inf entries.
inline ParamVector validated(ParamVector v, const char* what = "vector") {
    if (!v.allFinite())
        throw DomainError(std::string(what) + " has non-finite entries");
    return v;
}

inline Scalar dot(const ParamVector& a, const ParamVector& b) {
    if (a.size() != b.size())
        throw DimensionError("dot: length mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    return a.dot(b);
}

inline Scalar norm(const ParamVector& v) { return v.norm(); }
inline Scalar squared_norm(const ParamVector& v) { return v.squaredNorm(); }

}  // namespace ecd
