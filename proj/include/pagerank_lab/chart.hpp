#ifndef PAGERANK_LAB_CHART_HPP
#define PAGERANK_LAB_CHART_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csv.hpp"

namespace pagerank_lab {

struct ChartOptions {
    std::string x_column;
    std::string y_column;
    std::string series_column; // empty: single series
    bool log_x = false;
    std::string title;
    int width = 960;
    int height = 560;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string svg_num(double v) {
    // two decimals is plenty for pixel coordinates
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline const std::vector<std::string>& chart_palette() {
    static const std::vector<std::string> palette = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette;
}

} // namespace detail

/// Writes a self-contained SVG line chart of `table`, one polyline per
/// distinct value of the series column, legend included. With `log_x`
/// the x axis is log10-scaled (all x values must be positive) and tick
/// marks sit on decades.
inline void write_line_chart_svg(std::ostream& os, const CsvTable& table,
                                 const ChartOptions& opt) {
    const std::size_t xi = table.column(opt.x_column);
    const std::size_t yi = table.column(opt.y_column);
    const bool has_series = !opt.series_column.empty();
    const std::size_t si = has_series ? table.column(opt.series_column) : 0;

    if (table.rows.empty()) throw std::invalid_argument("chart: csv has no data rows");

    struct Point {
        double x, y;
    };
    std::map<std::string, std::vector<Point>> series;
    for (const auto& row : table.rows) {
        const double x_raw = parse_double(row[xi]);
        const double y = parse_double(row[yi]);
        if (opt.log_x && !(x_raw > 0.0))
            throw std::invalid_argument("chart: log-x needs positive x values, got " +
                                        row[xi]);
        const double x = opt.log_x ? std::log10(x_raw) : x_raw;
        series[has_series ? row[si] : std::string("all")].push_back({x, y});
    }
    for (auto& [name, pts] : series)
        std::sort(pts.begin(), pts.end(),
                  [](const Point& a, const Point& b) { return a.x < b.x; });

    double x_min = series.begin()->second.front().x, x_max = x_min;
    double y_min = series.begin()->second.front().y, y_max = y_min;
    for (const auto& [name, pts] : series)
        for (const Point& p : pts) {
            x_min = std::min(x_min, p.x);
            x_max = std::max(x_max, p.x);
            y_min = std::min(y_min, p.y);
            y_max = std::max(y_max, p.y);
        }
    if (x_min == x_max) {
        x_min -= 1;
        x_max += 1;
    }
    if (y_min == y_max) {
        y_min -= 1;
        y_max += 1;
    }

    const double ml = 70, mr = 160, mt = 40, mb = 50; // margins
    const double pw = opt.width - ml - mr;            // plot area
    const double ph = opt.height - mt - mb;
    const auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    const auto py = [&](double y) {
        return mt + ph - (y - y_min) / (y_max - y_min) * ph;
    };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << opt.width
       << "' height='" << opt.height << "' viewBox='0 0 " << opt.width << ' '
       << opt.height << "'>\n";
    os << "<rect width='" << opt.width << "' height='" << opt.height
       << "' fill='white'/>\n";
    if (!opt.title.empty())
        os << "<text x='" << ml << "' y='24' font-family='sans-serif' font-size='16'>"
           << detail::xml_escape(opt.title) << "</text>\n";

    // axes
    os << "<g stroke='black' stroke-width='1'>\n";
    os << "<line x1='" << detail::svg_num(ml) << "' y1='" << detail::svg_num(mt)
       << "' x2='" << detail::svg_num(ml) << "' y2='" << detail::svg_num(mt + ph)
       << "'/>\n";
    os << "<line x1='" << detail::svg_num(ml) << "' y1='" << detail::svg_num(mt + ph)
       << "' x2='" << detail::svg_num(ml + pw) << "' y2='"
       << detail::svg_num(mt + ph) << "'/>\n";
    os << "</g>\n";

    // x ticks: decades under log scale, else 6 evenly spaced
    std::vector<std::pair<double, std::string>> x_ticks;
    if (opt.log_x) {
        for (int e = static_cast<int>(std::ceil(x_min - 1e-9));
             e <= static_cast<int>(std::floor(x_max + 1e-9)); ++e)
            x_ticks.emplace_back(e, "1e" + std::to_string(e));
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double x = x_min + (x_max - x_min) * i / 5.0;
            x_ticks.emplace_back(x, detail::tick_label(x));
        }
    }
    for (const auto& [x, label] : x_ticks) {
        os << "<line x1='" << detail::svg_num(px(x)) << "' y1='"
           << detail::svg_num(mt + ph) << "' x2='" << detail::svg_num(px(x))
           << "' y2='" << detail::svg_num(mt + ph + 5) << "' stroke='black'/>\n";
        os << "<text x='" << detail::svg_num(px(x)) << "' y='"
           << detail::svg_num(mt + ph + 20)
           << "' font-family='sans-serif' font-size='11' text-anchor='middle'>"
           << detail::xml_escape(label) << "</text>\n";
    }
    os << "<text x='" << detail::svg_num(ml + pw / 2) << "' y='"
       << detail::svg_num(mt + ph + 38)
       << "' font-family='sans-serif' font-size='13' text-anchor='middle'>"
       << detail::xml_escape(opt.log_x ? opt.x_column + " (log scale)" : opt.x_column)
       << "</text>\n";

    // y ticks
    for (int i = 0; i <= 5; ++i) {
        const double y = y_min + (y_max - y_min) * i / 5.0;
        os << "<line x1='" << detail::svg_num(ml - 5) << "' y1='"
           << detail::svg_num(py(y)) << "' x2='" << detail::svg_num(ml) << "' y2='"
           << detail::svg_num(py(y)) << "' stroke='black'/>\n";
        os << "<text x='" << detail::svg_num(ml - 8) << "' y='"
           << detail::svg_num(py(y) + 4)
           << "' font-family='sans-serif' font-size='11' text-anchor='end'>"
           << detail::xml_escape(detail::tick_label(y)) << "</text>\n";
    }
    os << "<text x='16' y='" << detail::svg_num(mt + ph / 2)
       << "' font-family='sans-serif' font-size='13' text-anchor='middle' "
          "transform='rotate(-90 16 "
       << detail::svg_num(mt + ph / 2) << ")'>" << detail::xml_escape(opt.y_column)
       << "</text>\n";

    // one polyline per series, in sorted series order
    std::size_t color = 0;
    for (const auto& [name, pts] : series) {
        const std::string& stroke =
            detail::chart_palette()[color % detail::chart_palette().size()];
        os << "<polyline fill='none' stroke='" << stroke << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) os << ' ';
            os << detail::svg_num(px(pts[i].x)) << ',' << detail::svg_num(py(pts[i].y));
        }
        os << "'/>\n";
        ++color;
    }

    // legend
    double ly = mt + 10;
    color = 0;
    for (const auto& [name, pts] : series) {
        const std::string& stroke =
            detail::chart_palette()[color % detail::chart_palette().size()];
        os << "<line x1='" << detail::svg_num(ml + pw + 12) << "' y1='"
           << detail::svg_num(ly) << "' x2='" << detail::svg_num(ml + pw + 36)
           << "' y2='" << detail::svg_num(ly) << "' stroke='" << stroke
           << "' stroke-width='1.5'/>\n";
        os << "<text x='" << detail::svg_num(ml + pw + 42) << "' y='"
           << detail::svg_num(ly + 4) << "' font-family='sans-serif' font-size='12'>"
           << detail::xml_escape(name) << "</text>\n";
        ly += 18;
        ++color;
    }

    os << "</svg>\n";
}

} // namespace pagerank_lab

#endif
