#pragma once

#include <string>
#include <vector>

#include "ecd/types.hpp"

namespace ecd::harness {

// Minimal self-contained line chart. Non-finite y values break the polyline
// rather than distorting the scale.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<Scalar>& xs,
                      const std::vector<Scalar>& ys);

}  // namespace ecd::harness
