#include "ptf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ptf/common.hpp"

namespace ptf {

namespace {

struct Box {
    double x0, x1, y0, y1;
};

double map_coord(double v, double lo, double hi, double p0, double p1) {
    if (hi == lo) return 0.5 * (p0 + p1);
    return p0 + (v - lo) / (hi - lo) * (p1 - p0);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string loglog_svg(std::span<const double> xs, std::span<const double> ys,
                       double reference_slope, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log10(xs[i]));
            ly.push_back(std::log10(ys[i]));
        }
    }
    if (lx.size() < 2) throw std::invalid_argument("log-log plot needs at least two positive points");

    const double pad = 0.15;
    Box data{*std::min_element(lx.begin(), lx.end()), *std::max_element(lx.begin(), lx.end()),
             *std::min_element(ly.begin(), ly.end()), *std::max_element(ly.begin(), ly.end())};
    const double spanx = std::max(data.x1 - data.x0, 1e-9);
    const double spany = std::max(data.y1 - data.y0, 1e-9);
    data.x0 -= pad * spanx;
    data.x1 += pad * spanx;
    data.y0 -= pad * spany;
    data.y1 += pad * spany;

    const double width = 640, height = 480;
    const Box frame{70, width - 20, height - 50, 20};  // y axis inverted

    auto px = [&](double v) { return map_coord(v, data.x0, data.x1, frame.x0, frame.x1); };
    auto py = [&](double v) { return map_coord(v, data.y0, data.y1, frame.y0, frame.y1); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"14\" text-anchor=\"middle\" font-size=\"13\">" << title
        << "</text>\n";

    // Frame.
    out << "<rect x=\"" << frame.x0 << "\" y=\"" << frame.y1 << "\" width=\"" << frame.x1 - frame.x0
        << "\" height=\"" << frame.y0 - frame.y1 << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Decade ticks.
    for (int e = static_cast<int>(std::floor(data.x0)); e <= static_cast<int>(std::ceil(data.x1)); ++e) {
        if (e < data.x0 || e > data.x1) continue;
        const double gx = px(e);
        out << "<line x1=\"" << gx << "\" y1=\"" << frame.y0 << "\" x2=\"" << gx << "\" y2=\"" << frame.y1
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << gx << "\" y=\"" << frame.y0 + 16 << "\" text-anchor=\"middle\" font-size=\"11\">1e"
            << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::floor(data.y0)); e <= static_cast<int>(std::ceil(data.y1)); ++e) {
        if (e < data.y0 || e > data.y1) continue;
        const double gy = py(e);
        out << "<line x1=\"" << frame.x0 << "\" y1=\"" << gy << "\" x2=\"" << frame.x1 << "\" y2=\"" << gy
            << "\" stroke=\"#ddd\"/>\n";
        out << "<text x=\"" << frame.x0 - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e"
            << e << "</text>\n";
    }

    // Axis labels.
    out << "<text x=\"" << (frame.x0 + frame.x1) / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << (frame.y0 + frame.y1) / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << (frame.y0 + frame.y1) / 2 << ")\">" << y_label << "</text>\n";

    // Reference line through the series midpoint.
    const size_t mid = lx.size() / 2;
    const double cx = lx[mid], cy = ly[mid];
    const double ry0 = cy + reference_slope * (data.x0 - cx);
    const double ry1 = cy + reference_slope * (data.x1 - cx);
    out << "<line x1=\"" << px(data.x0) << "\" y1=\"" << py(ry0) << "\" x2=\"" << px(data.x1)
        << "\" y2=\"" << py(ry1)
        << "\" stroke=\"#c33\" stroke-dasharray=\"6 4\" fill=\"none\"/>\n";
    out << "<text x=\"" << frame.x1 - 6 << "\" y=\"" << frame.y1 + 14
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#c33\">slope " << fmt(reference_slope)
        << "</text>\n";

    // Data polyline and points.
    out << "<polyline fill=\"none\" stroke=\"#226\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < lx.size(); ++i) out << fmt(px(lx[i])) << ',' << fmt(py(ly[i])) << ' ';
    out << "\"/>\n";
    for (size_t i = 0; i < lx.size(); ++i)
        out << "<circle cx=\"" << fmt(px(lx[i])) << "\" cy=\"" << fmt(py(ly[i]))
            << "\" r=\"2.5\" fill=\"#226\"/>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace ptf
