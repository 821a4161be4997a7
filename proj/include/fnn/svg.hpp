#pragma once

// Minimal self-contained SVG line plots for the CLI's optional --svg output.
// The CSV data files are the contract; this is a convenience view.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace fnn {

struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> y;
};

inline std::string svg_line_plot(const std::vector<SvgSeries>& series,
                                 const std::string& title, bool log_y = false) {
    const int width = 720, height = 480, margin = 56;
    double x_min = std::numeric_limits<double>::max(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double yv = s.y[i];
            if (log_y) {
                if (!(yv > 0.0)) continue;
                yv = std::log10(yv);
            }
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, yv);
            y_max = std::max(y_max, yv);
        }
    }
    if (!(x_max > x_min)) x_max = x_min + 1.0;
    if (!(y_max > y_min)) y_max = y_min + 1.0;

    auto px = [&](double x) {
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
    };

    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
        "\" height=\"" + std::to_string(height) + "\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"" + std::to_string(width / 2) +
        "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
        title + (log_y ? " (log10 y)" : "") + "</text>\n"
        "<rect x=\"" + std::to_string(margin) + "\" y=\"" + std::to_string(margin) +
        "\" width=\"" + std::to_string(width - 2 * margin) + "\" height=\"" +
        std::to_string(height - 2 * margin) + "\" fill=\"none\" stroke=\"#888\"/>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double yv = s.y[i];
            if (log_y) {
                if (!(yv > 0.0)) continue;
                yv = std::log10(yv);
            }
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(yv));
            out += buf;
        }
        out += "\"/>\n";
        out += "<text x=\"" + std::to_string(width - margin - 150) + "\" y=\"" +
               std::to_string(margin + 18 + 18 * legend_row) + "\" fill=\"" + s.color +
               "\" font-family=\"sans-serif\" font-size=\"13\">" + s.label + "</text>\n";
        ++legend_row;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fnn
