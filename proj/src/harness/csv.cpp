#include "ecd/harness/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace ecd::harness {

std::string format_float(Scalar value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

TrajectoryCsvWriter::TrajectoryCsvWriter(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw IoError("cannot open output file: " + path);
    out_ << kTrajectoryHeader << '\n';
}

void TrajectoryCsvWriter::write(const TrajectoryRecord& record) {
    out_ << record.step << ',' << format_float(record.f) << ',' << format_float(record.energy)
         << ',' << format_float(record.pi_norm) << ',' << format_float(record.theta_norm) << '\n';
}

void TrajectoryCsvWriter::close() {
    if (!out_.is_open()) return;
    out_.close();
    if (!out_) throw IoError("failed writing output file: " + path_);
}

std::vector<TrajectoryRecord> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trajectory file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader) {
        throw IoError("unexpected trajectory header in " + path);
    }
    std::vector<TrajectoryRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw IoError(path + ":" + std::to_string(line_no) + ": expected 5 fields");
        }
        TrajectoryRecord rec;
        rec.step = std::strtoll(fields[0].c_str(), nullptr, 10);
        rec.f = std::strtod(fields[1].c_str(), nullptr);
        rec.energy = std::strtod(fields[2].c_str(), nullptr);
        rec.pi_norm = std::strtod(fields[3].c_str(), nullptr);
        rec.theta_norm = std::strtod(fields[4].c_str(), nullptr);
        records.push_back(rec);
    }
    return records;
}

}  // namespace ecd::harness
