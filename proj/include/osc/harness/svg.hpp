#ifndef OSC_HARNESS_SVG_HPP
#define OSC_HARNESS_SVG_HPP

#include <string>
#include <vector>

namespace osc::harness {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> lo;  // optional error bar ends, same length as y
    std::vector<double> hi;
    bool markers = true;
    bool line = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
    std::vector<std::string> categories;  // non-empty: bar chart, one bar group per category, y of each series
};

/// Static SVG document. Non-finite points (and non-positive ones on log axes) are skipped.
std::string render_svg(const PlotSpec& plot);

}  // namespace osc::harness

#endif  // OSC_HARNESS_SVG_HPP
