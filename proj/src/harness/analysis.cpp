#include "ecd/harness/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ecd/harness/csv.hpp"
#include "ecd/theory.hpp"

namespace ecd::harness {

ParamVector swa_average(const std::vector<ParamVector>& thetas, std::size_t start_index) {
    if (start_index >= thetas.size()) throw DomainError("swa_average: empty tail");
    ParamVector sum = thetas[start_index];
    for (std::size_t i = start_index + 1; i < thetas.size(); ++i) {
        if (thetas[i].size() != sum.size()) throw DimensionError("swa_average: ragged iterates");
        sum += thetas[i];
    }
    return sum / static_cast<Scalar>(thetas.size() - start_index);
}

std::pair<ParamVector, std::size_t> best_tail_average(const std::vector<ParamVector>& thetas,
                                                      const Objective& metric) {
    const std::size_t m = thetas.size();
    if (m < 2) throw DomainError("best_tail_average: need at least two iterates");
    // Suffix sums make every tail average one subtraction-free pass.
    ParamVector suffix = ParamVector::Zero(thetas.back().size());
    const std::size_t first = m / 2;
    std::vector<ParamVector> tails(m - first);
    for (std::size_t i = m; i-- > first;) {
        if (thetas[i].size() != suffix.size()) {
            throw DimensionError("best_tail_average: ragged iterates");
        }
        suffix += thetas[i];
        tails[i - first] = suffix / static_cast<Scalar>(m - i);
    }
    std::size_t best_start = first;
    Scalar best_value = std::numeric_limits<Scalar>::infinity();
    ParamVector best_avg;
    for (std::size_t s = first; s < m; ++s) {
        const ParamVector& avg = tails[s - first];
        const Scalar value = metric.evaluate(avg).value;
        if (value < best_value) {
            best_value = value;
            best_start = s;
            best_avg = avg;
        }
    }
    return {best_avg, best_start};
}

namespace {

Scalar quantile(std::vector<Scalar> values, Scalar q) {
    const auto idx = static_cast<std::size_t>(
        q * static_cast<Scalar>(values.size() - 1));
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(idx),
                     values.end());
    return values[idx];
}

}  // namespace

ConcentrationReport concentration_report(const bench::QuadraticBasin& problem,
                                         const EcdHyperParams& hp, const ParamVector& theta0,
                                         std::uint64_t seed, std::int64_t steps,
                                         std::int64_t burn_in, int bins) {
    if (!(hp.nu > 0)) throw ConfigError("concentration analysis requires nu > 0");
    if (bins < 3) throw ConfigError("concentration analysis needs at least 3 bins");
    if (burn_in < 0 || burn_in >= steps) throw ConfigError("burn_in must lie in [0, steps)");

    ConcentrationReport report;

    std::vector<Scalar> radii;
    std::vector<Scalar> speeds;  // paired with radii[i] at the move's start point
    radii.reserve(static_cast<std::size_t>(steps - burn_in));
    ParamVector prev_theta;
    bool have_prev = false;

    RngStream rng(seed, 0);
    RunOptions opts;
    opts.max_steps = steps;
    opts.record_every = 1;
    const RecordSink sink = [&](const TrajectoryRecord& rec, const ParamVector& theta) {
        if (rec.step <= burn_in) return;
        if (have_prev) {
            speeds.push_back((theta - prev_theta).norm() / hp.dt);
            radii.push_back(prev_theta.norm());
        }
        prev_theta = theta;
        have_prev = true;
    };
    const RunResult result = run(problem, theta0, hp, opts, rng, sink);

    if (result.state.terminated() && result.state.step <= burn_in) {
        report.error = "trajectory terminated at step " + std::to_string(result.state.step) +
                       ", before the burn-in of " + std::to_string(burn_in);
        return report;
    }
    if (radii.size() < 2) {
        report.error = "too few post-burn-in samples";
        return report;
    }

    theory::BasinSpec spec;
    spec.n = problem.dimension();
    spec.f2 = problem.f2();
    spec.f_min = problem.f_min();
    spec.f0 = hp.f0;
    spec.eta = hp.eta;
    spec.energy = result.state.energy;
    spec.f_init = problem.evaluate(theta0).value;
    report.predicted_radius_sq = theory::concentration_radius_sq(spec);
    report.predicted_f = problem.f2() * report.predicted_radius_sq + problem.f_min();
    report.predicted_speed = theory::speed_at_radius(spec);

    const Scalar hi = quantile(radii, 0.999);
    if (!(hi > 0)) {
        report.error = "degenerate radius distribution";
        return report;
    }
    const Scalar width = hi / static_cast<Scalar>(bins);
    report.bin_width = width;
    report.histogram.assign(static_cast<std::size_t>(bins), 0);
    for (const Scalar r : radii) {
        if (r > hi) continue;
        const auto b = std::min<std::size_t>(static_cast<std::size_t>(r / width),
                                             static_cast<std::size_t>(bins - 1));
        ++report.histogram[b];
    }
    report.smoothed.resize(report.histogram.size());
    for (std::size_t i = 0; i < report.histogram.size(); ++i) {
        Scalar acc = static_cast<Scalar>(report.histogram[i]);
        if (i > 0) acc += static_cast<Scalar>(report.histogram[i - 1]);
        if (i + 1 < report.histogram.size()) acc += static_cast<Scalar>(report.histogram[i + 1]);
        report.smoothed[i] = acc / 3.0;
    }
    std::size_t mode = 0;
    for (std::size_t i = 1; i < report.smoothed.size(); ++i) {
        if (report.smoothed[i] > report.smoothed[mode]) mode = i;
    }
    report.empirical_mode_radius = (static_cast<Scalar>(mode) + 0.5) * width;
    report.empirical_mode_f =
        problem.f2() * report.empirical_mode_radius * report.empirical_mode_radius +
        problem.f_min();

    Scalar speed_sum = 0;
    std::int64_t speed_count = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] > hi) continue;
        const auto b = std::min<std::size_t>(static_cast<std::size_t>(radii[i] / width),
                                             static_cast<std::size_t>(bins - 1));
        if (b == mode) {
            speed_sum += speeds[i];
            ++speed_count;
        }
    }
    report.empirical_speed = speed_count > 0 ? speed_sum / static_cast<Scalar>(speed_count)
                                             : std::numeric_limits<Scalar>::quiet_NaN();

    const auto rel_dev = [](Scalar emp, Scalar pred) {
        if (pred == 0) return std::numeric_limits<Scalar>::quiet_NaN();
        return std::abs(emp - pred) / std::abs(pred);
    };
    report.relative_deviation_f = rel_dev(report.empirical_mode_f, report.predicted_f);
    report.relative_deviation_speed = rel_dev(report.empirical_speed, report.predicted_speed);
    report.samples = static_cast<std::int64_t>(radii.size());
    report.ok = true;
    return report;
}

std::string concentration_to_json(const ConcentrationReport& report) {
    std::ostringstream out;
    out << "{\"ok\": " << (report.ok ? "true" : "false") << ", \"error\": \"" << report.error
        << "\", \"samples\": " << report.samples
        << ", \"predicted_radius_sq\": " << format_float(report.predicted_radius_sq)
        << ", \"predicted_f\": " << format_float(report.predicted_f)
        << ", \"predicted_speed\": " << format_float(report.predicted_speed)
        << ", \"empirical_mode_radius\": " << format_float(report.empirical_mode_radius)
        << ", \"empirical_mode_f\": " << format_float(report.empirical_mode_f)
        << ", \"empirical_speed\": " << format_float(report.empirical_speed)
        << ", \"relative_deviation_f\": " << format_float(report.relative_deviation_f)
        << ", \"relative_deviation_speed\": " << format_float(report.relative_deviation_speed)
        << "}";
    return out.str();
}

void write_concentration_csv(const std::string& path, const ConcentrationReport& report) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << "radius,count,smoothed\n";
    for (std::size_t i = 0; i < report.histogram.size(); ++i) {
        const Scalar center = (static_cast<Scalar>(i) + 0.5) * report.bin_width;
        out << format_float(center) << ',' << report.histogram[i] << ','
            << format_float(report.smoothed[i]) << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

std::vector<EtaScanRow> eta_monotonicity_report(const bench::QuadraticBasin& problem,
                                                std::vector<Scalar> etas, EcdHyperParams base_hp,
                                                const ParamVector& theta0, std::uint64_t seed,
                                                std::int64_t steps) {
    if (etas.empty()) throw ConfigError("eta scan needs at least one eta");
    if (steps < 2) throw ConfigError("eta scan needs at least two steps");
    std::sort(etas.begin(), etas.end());
    std::vector<EtaScanRow> rows;
    rows.reserve(etas.size());
    for (const Scalar eta : etas) {
        EcdHyperParams hp = base_hp;
        hp.eta = eta;
        hp.validate();
        Scalar sum = 0;
        std::int64_t count = 0;
        RngStream rng(seed, 0);
        RunOptions opts;
        opts.max_steps = steps;
        opts.record_every = 1;
        const RecordSink sink = [&](const TrajectoryRecord& rec, const ParamVector&) {
            if (rec.step > steps / 2) {
                sum += rec.f;
                ++count;
            }
        };
        run(problem, theta0, hp, opts, rng, sink);
        rows.push_back({eta, count > 0 ? sum / static_cast<Scalar>(count)
                                       : std::numeric_limits<Scalar>::quiet_NaN()});
    }
    return rows;
}

void write_eta_scan_csv(const std::string& path, const std::vector<EtaScanRow>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << "eta,tail_mean_f\n";
    for (const EtaScanRow& row : rows) {
        out << format_float(row.eta) << ',' << format_float(row.tail_mean_f) << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace ecd::harness
