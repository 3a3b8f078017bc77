#include "osc/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace osc::harness {

namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 80, kRight = 170, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

struct Axis {
    bool log = false;
    double lo = 0, hi = 1;
    double px_lo = 0, px_hi = 1;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0); }
    double map(double v) const {
        const double a = log ? std::log10(lo) : lo, b = log ? std::log10(hi) : hi;
        const double t = ((log ? std::log10(v) : v) - a) / (b - a);
        return px_lo + t * (px_hi - px_lo);
    }
    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); d += 1) {
                const double t = std::pow(10.0, d);
                if (t >= lo * (1 - 1e-9) && t <= hi * (1 + 1e-9)) out.push_back(t);
            }
            if (out.size() < 2) out = {lo, hi};
            return out;
        }
        const double span = hi - lo;
        const double raw = span / 6;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0})
            if (raw <= m * mag) {
                step = m * mag;
                break;
            }
        for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
        return out;
    }
};

Axis make_axis(std::vector<double> values, bool log, double px_lo, double px_hi) {
    Axis a;
    a.log = log;
    a.px_lo = px_lo;
    a.px_hi = px_hi;
    values.erase(std::remove_if(values.begin(), values.end(), [&](double v) { return !a.usable(v); }), values.end());
    if (values.empty()) values = {log ? 1.0 : 0.0, log ? 10.0 : 1.0};
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (log) {
        if (lo == hi) {
            lo /= 2;
            hi *= 2;
        }
        lo /= 1.2;
        hi *= 1.2;
    } else {
        if (lo == hi) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

}  // namespace

std::string render_svg(const PlotSpec& plot) {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(plot.title)
      << "</text>\n";

    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    const bool bars = !plot.categories.empty();

    std::vector<double> xs, ys;
    for (const auto& s : plot.series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
        ys.insert(ys.end(), s.lo.begin(), s.lo.end());
        ys.insert(ys.end(), s.hi.begin(), s.hi.end());
    }
    if (bars) ys.push_back(0.0);
    Axis ax = bars ? Axis{false, 0, 1, x0, x1} : make_axis(xs, plot.log_x, x0, x1);
    Axis ay = make_axis(ys, plot.log_y && !bars, y0, y1);

    o << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ay.ticks()) {
        const double py = ay.map(t);
        o << "<line x1=\"" << x0 - 4 << "\" y1=\"" << num(py) << "\" x2=\"" << x0 << "\" y2=\"" << num(py)
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << x0 - 7 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << tick_label(t)
          << "</text>\n";
    }
    if (!bars) {
        for (double t : ax.ticks()) {
            const double px = ax.map(t);
            o << "<line x1=\"" << num(px) << "\" y1=\"" << y0 << "\" x2=\"" << num(px) << "\" y2=\"" << y0 + 4
              << "\" stroke=\"black\"/>\n";
            o << "<text x=\"" << num(px) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">" << tick_label(t)
              << "</text>\n";
        }
    }
    o << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
      << esc(plot.x_label) << "</text>\n";
    o << "<text transform=\"translate(20," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << esc(plot.y_label) << "</text>\n";

    const std::size_t groups = plot.categories.size();
    const std::size_t nseries = std::max<std::size_t>(plot.series.size(), 1);
    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const Series& s = plot.series[si];
        const char* colour = kPalette[si % std::size(kPalette)];
        if (bars) {
            const double slot = (x1 - x0) / static_cast<double>(groups);
            const double bw = 0.8 * slot / static_cast<double>(nseries);
            for (std::size_t g = 0; g < groups && g < s.y.size(); ++g) {
                if (!std::isfinite(s.y[g])) continue;
                const double px = x0 + slot * (static_cast<double>(g) + 0.1) + bw * static_cast<double>(si);
                const double top = ay.map(std::max(s.y[g], 0.0)), base = ay.map(0.0);
                o << "<rect x=\"" << num(px) << "\" y=\"" << num(top) << "\" width=\"" << num(bw) << "\" height=\""
                  << num(base - top) << "\" fill=\"" << colour << "\"/>\n";
            }
            continue;
        }
        std::string path;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!ax.usable(s.x[i]) || !ay.usable(s.y[i])) continue;
            const double px = ax.map(s.x[i]), py = ay.map(s.y[i]);
            path += (path.empty() ? "M" : " L") + num(px) + " " + num(py);
            if (i < s.lo.size() && i < s.hi.size() && ay.usable(s.lo[i]) && ay.usable(s.hi[i]))
                o << "<line x1=\"" << num(px) << "\" y1=\"" << num(ay.map(s.lo[i])) << "\" x2=\"" << num(px)
                  << "\" y2=\"" << num(ay.map(s.hi[i])) << "\" stroke=\"" << colour << "\"/>\n";
            if (s.markers)
                o << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"3.5\" fill=\"" << colour
                  << "\"/>\n";
        }
        if (s.line && !path.empty())
            o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
    }
    if (bars) {
        const double slot = (x1 - x0) / static_cast<double>(groups);
        for (std::size_t g = 0; g < groups; ++g) {
            const double px = x0 + slot * (static_cast<double>(g) + 0.5);
            o << "<text transform=\"translate(" << num(px) << "," << y0 + 12 << ") rotate(30)\" font-size=\"10\">"
              << esc(plot.categories[g]) << "</text>\n";
        }
    }
    for (std::size_t si = 0; si < plot.series.size(); ++si) {
        const double ly = y1 + 14 + 18 * static_cast<double>(si);
        o << "<rect x=\"" << x1 + 12 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
          << kPalette[si % std::size(kPalette)] << "\"/>\n";
        o << "<text x=\"" << x1 + 28 << "\" y=\"" << ly << "\">" << esc(plot.series[si].label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace osc::harness
