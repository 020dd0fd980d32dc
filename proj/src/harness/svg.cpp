#include "ecd/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ecd/harness/config.hpp"

namespace ecd::harness {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 700.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 400.0;

std::string label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<Scalar>& xs,
                      const std::vector<Scalar>& ys) {
    if (xs.size() != ys.size()) {
        throw DimensionError("chart series lengths differ");
    }

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        x_lo = std::min(x_lo, static_cast<double>(xs[i]));
        x_hi = std::max(x_hi, static_cast<double>(xs[i]));
        y_lo = std::min(y_lo, static_cast<double>(ys[i]));
        y_hi = std::max(y_hi, static_cast<double>(ys[i]));
    }
    const bool have_data = std::isfinite(x_lo) && std::isfinite(y_lo);
    if (!have_data) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    auto px = [&](double x) {
        return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft);
    };
    auto py = [&](double y) {
        return kBottom - (y - y_lo) / (y_hi - y_lo) * (kBottom - kTop);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth
        << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << (kWidth / 2)
        << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\""
        << kRight << "\" y2=\"" << kBottom
        << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << kBottom << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << kLeft << "\" y=\"" << (kBottom + 18)
        << "\" text-anchor=\"middle\">" << label(x_lo) << "</text>\n";
    svg << "<text x=\"" << kRight << "\" y=\"" << (kBottom + 18)
        << "\" text-anchor=\"middle\">" << label(x_hi) << "</text>\n";
    svg << "<text x=\"" << (kLeft - 6) << "\" y=\"" << (kBottom + 4)
        << "\" text-anchor=\"end\">" << label(y_lo) << "</text>\n";
    svg << "<text x=\"" << (kLeft - 6) << "\" y=\"" << (kTop + 4)
        << "\" text-anchor=\"end\">" << label(y_hi) << "</text>\n";

    bool open = false;
    std::string points;
    auto flush_segment = [&]() {
        if (open && !points.empty()) {
            svg << "<polyline points=\"" << points
                << "\" fill=\"none\" stroke=\"#2465b0\" stroke-width=\"1.5\"/>\n";
        }
        points.clear();
        open = false;
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            flush_segment();
            continue;
        }
        if (!points.empty()) points += ' ';
        points += coord(px(xs[i]));
        points += ',';
        points += coord(py(ys[i]));
        open = true;
    }
    flush_segment();
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open chart file for writing: " + path);
    }
    out << svg.str();
    out.flush();
    if (!out) {
        throw IoError("failed writing chart file: " + path);
    }
}

}  // namespace ecd::harness
