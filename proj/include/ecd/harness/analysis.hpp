#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecd/benchmarks.hpp"
#include "ecd/ecdsep.hpp"
#include "ecd/harness/config.hpp"
#include "ecd/types.hpp"

namespace ecd::harness {

// Arithmetic mean of thetas[start_index..end]. Throws DomainError when the
// tail is empty.
ParamVector swa_average(const std::vector<ParamVector>& thetas, std::size_t start_index);

// Evaluates the metric on the tail average for every start index in the last
// half of the sequence and returns the minimizing (average, start_index).
// Needs at least two iterates.
std::pair<ParamVector, std::size_t> best_tail_average(const std::vector<ParamVector>& thetas,
                                                      const Objective& metric);

// Where a long chaotic trajectory spends its time versus where the stationary
// measure says it should: radial histogram after burn-in, its (3-bin smoothed)
// mode mapped through F, and the closed-form radius/speed predictions.
struct ConcentrationReport {
    bool ok = false;
    std::string error;
    std::int64_t samples = 0;
    Scalar predicted_radius_sq = 0;
    Scalar predicted_f = 0;
    Scalar predicted_speed = 0;
    Scalar empirical_mode_radius = 0;
    Scalar empirical_mode_f = 0;
    Scalar empirical_speed = 0;
    Scalar relative_deviation_f = 0;
    Scalar relative_deviation_speed = 0;
    Scalar bin_width = 0;
    std::vector<std::int64_t> histogram;   // raw counts per radius bin
    std::vector<Scalar> smoothed;          // 3-bin moving average, zero padded
};

// Runs the conservative optimizer on the basin for `steps` steps and compares
// the post-burn-in radial distribution against the predictions. Requires
// nu > 0 (the comparison is meaningless without chaotic mixing). The histogram
// spans [0, 99.9% radius quantile]; samples above that range are dropped.
ConcentrationReport concentration_report(const bench::QuadraticBasin& problem,
                                         const EcdHyperParams& hp, const ParamVector& theta0,
                                         std::uint64_t seed, std::int64_t steps,
                                         std::int64_t burn_in, int bins);

std::string concentration_to_json(const ConcentrationReport& report);
void write_concentration_csv(const std::string& path, const ConcentrationReport& report);

struct EtaScanRow {
    Scalar eta = 0;
    Scalar tail_mean_f = 0;
};

// Runs one trajectory per eta (same seed, same other hyperparameters) and
// reports the mean objective over the last half of each run, sorted by eta.
std::vector<EtaScanRow> eta_monotonicity_report(const bench::QuadraticBasin& problem,
                                                std::vector<Scalar> etas, EcdHyperParams base_hp,
                                                const ParamVector& theta0, std::uint64_t seed,
                                                std::int64_t steps);

void write_eta_scan_csv(const std::string& path, const std::vector<EtaScanRow>& rows);

}  // namespace ecd::harness
