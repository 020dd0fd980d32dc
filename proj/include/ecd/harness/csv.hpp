#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "ecd/harness/config.hpp"
#include "ecd/trajectory.hpp"
#include "ecd/types.hpp"

namespace ecd::harness {

// Shortest round-trippable decimal rendering used for every float the harness
// writes, so artifacts are byte-stable across runs.
std::string format_float(Scalar value);

inline constexpr const char* kTrajectoryHeader = "step,f,energy,pi_norm,theta_norm";

// Streams TrajectoryRecords to a CSV file, one row per record, header first.
class TrajectoryCsvWriter {
public:
    explicit TrajectoryCsvWriter(const std::string& path);

    void write(const TrajectoryRecord& record);
    void close();

private:
    std::ofstream out_;
    std::string path_;
};

// Round-trip reader for the writer's output; validates the header.
std::vector<TrajectoryRecord> read_trajectory_csv(const std::string& path);

}  // namespace ecd::harness
