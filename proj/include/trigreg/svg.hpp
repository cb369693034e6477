#pragma once

#include "trigreg/experiments.hpp"
#include "trigreg/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigreg {

// Minimal static SVG emission: one boxplot per selected column, or a line
// plot of per-group column means. Output bytes depend only on the input
// table and options.

struct PlotOptions {
    int width = 640;
    int height = 400;
    bool log10_values = false;  // plot log10 of the data, as the figures do
    std::string group_column;   // line plots: x axis + grouping key
};

namespace svg_detail {

struct BoxStats {
    double q25, median, q75, lo_whisker, hi_whisker;
    std::vector<double> outliers;
};

// whiskers at the most extreme points within 1.5 IQR of the box
inline BoxStats box_stats(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }),
            v.end());
    if (v.empty()) throw std::invalid_argument("boxplot: no finite values in column");
    std::sort(v.begin(), v.end());
    const auto quantile = [&](double p) {
        const double h = (v.size() - 1) * p;
        const std::size_t lo = static_cast<std::size_t>(h);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (h - lo) * (v[hi] - v[lo]);
    };
    BoxStats b{quantile(0.25), quantile(0.5), quantile(0.75), 0, 0, {}};
    const double iqr = b.q75 - b.q25;
    const double lo_fence = b.q25 - 1.5 * iqr;
    const double hi_fence = b.q75 + 1.5 * iqr;
    b.lo_whisker = b.q75;
    b.hi_whisker = b.q25;
    b.lo_whisker = v.back();
    b.hi_whisker = v.front();
    for (double x : v) {
        if (x >= lo_fence) { b.lo_whisker = x; break; }
    }
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (*it <= hi_fence) { b.hi_whisker = *it; break; }
    }
    for (double x : v)
        if (x < lo_fence || x > hi_fence) b.outliers.push_back(x);
    return b;
}

inline std::string num(double v) { return format_double(v); }

inline std::string line(double x1, double y1, double x2, double y2, const std::string& style) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" " + style + "/>\n";
}

inline std::string text(double x, double y, const std::string& s, const std::string& extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"11\" " + extra + ">" + s +
           "</text>\n";
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    double to_pixel(double v, double px_lo, double px_hi) const {
        const double t = (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

inline Axis fit_axis(double lo, double hi) {
    if (!(hi > lo)) {  // degenerate span still renders
        const double pad = std::abs(lo) > 0 ? 0.1 * std::abs(lo) : 1.0;
        return {lo - pad, hi + pad};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace svg_detail

inline std::string svg_boxplot(const RecordTable& table, const std::vector<std::string>& columns,
                               const PlotOptions& opt = {}) {
    using namespace svg_detail;
    if (columns.empty()) throw std::invalid_argument("svg_boxplot: no columns");
    std::vector<BoxStats> boxes;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& col : columns) {
        std::vector<double> v = table.column(col);
        if (opt.log10_values)
            for (double& x : v) x = std::log10(x);
        BoxStats b = box_stats(v);
        lo = std::min({lo, b.lo_whisker, b.outliers.empty() ? b.lo_whisker
                                                            : *std::min_element(b.outliers.begin(),
                                                                                b.outliers.end())});
        hi = std::max({hi, b.hi_whisker, b.outliers.empty() ? b.hi_whisker
                                                            : *std::max_element(b.outliers.begin(),
                                                                                b.outliers.end())});
        boxes.push_back(std::move(b));
    }
    const Axis axis = fit_axis(lo, hi);
    const double top = 20, bottom = opt.height - 40, left = 60, right = opt.width - 20;
    const auto ypix = [&](double v) { return bottom - (axis.to_pixel(v, 0, 1)) * (bottom - top); };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string stroke = "stroke=\"black\" stroke-width=\"1\"";
    const std::string blue = "stroke=\"#1f4e9c\" stroke-width=\"1.2\" fill=\"none\"";
    out += line(left, bottom, right, bottom, stroke);
    out += line(left, top, left, bottom, stroke);
    // y tick labels at axis ends and midpoint
    for (double t : {axis.lo, 0.5 * (axis.lo + axis.hi), axis.hi})
        out += text(4, ypix(t) + 4, format_double(std::round(t * 1000) / 1000));

    const double slot = (right - left) / boxes.size();
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const BoxStats& b = boxes[i];
        const double cx = left + slot * (i + 0.5);
        const double half = std::min(40.0, slot * 0.25);
        out += "<rect x=\"" + num(cx - half) + "\" y=\"" + num(ypix(b.q75)) + "\" width=\"" +
               num(2 * half) + "\" height=\"" + num(ypix(b.q25) - ypix(b.q75)) + "\" " + blue +
               "/>\n";
        out += line(cx - half, ypix(b.median), cx + half, ypix(b.median),
                    "stroke=\"#c23b21\" stroke-width=\"1.5\"");
        out += line(cx, ypix(b.q75), cx, ypix(b.hi_whisker), stroke);
        out += line(cx, ypix(b.q25), cx, ypix(b.lo_whisker), stroke);
        out += line(cx - half / 2, ypix(b.hi_whisker), cx + half / 2, ypix(b.hi_whisker), stroke);
        out += line(cx - half / 2, ypix(b.lo_whisker), cx + half / 2, ypix(b.lo_whisker), stroke);
        for (double o : b.outliers) {
            out += line(cx - 3, ypix(o), cx + 3, ypix(o), "stroke=\"#c23b21\" stroke-width=\"1\"");
            out += line(cx, ypix(o) - 3, cx, ypix(o) + 3, "stroke=\"#c23b21\" stroke-width=\"1\"");
        }
        out += text(cx - 4.0 * columns[i].size() / 2, bottom + 16, columns[i]);
    }
    out += "</svg>\n";
    return out;
}

// means of each selected column per value of the grouping column,
// one polyline per column
inline std::string svg_line_plot(const RecordTable& table, const std::vector<std::string>& columns,
                                 const PlotOptions& opt) {
    using namespace svg_detail;
    if (columns.empty()) throw std::invalid_argument("svg_line_plot: no columns");
    if (opt.group_column.empty())
        throw std::invalid_argument("svg_line_plot: a group column is required");
    const std::vector<double> group = table.column(opt.group_column);

    std::map<double, std::vector<std::vector<double>>> per_group;  // group -> per-column values
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        auto& slot = per_group[group[r]];
        if (slot.empty()) slot.resize(columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            double v = table.rows[r][table.column_index(columns[c])];
            if (opt.log10_values) v = std::log10(v);
            if (std::isfinite(v)) slot[c].push_back(v);
        }
    }
    std::vector<double> xs;
    std::vector<std::vector<double>> means(columns.size());
    for (const auto& [g, vals] : per_group) {
        xs.push_back(g);
        for (std::size_t c = 0; c < columns.size(); ++c) {
            double m = std::numeric_limits<double>::quiet_NaN();
            if (!vals[c].empty()) {
                m = 0.0;
                for (double v : vals[c]) m += v;
                m /= vals[c].size();
            }
            means[c].push_back(m);
        }
    }
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (const auto& m : means)
        for (double v : m)
            if (std::isfinite(v)) { ylo = std::min(ylo, v); yhi = std::max(yhi, v); }
    if (!std::isfinite(ylo)) throw std::invalid_argument("svg_line_plot: no finite means");
    const Axis yaxis = fit_axis(ylo, yhi);
    const Axis xaxis = fit_axis(xs.front(), xs.back());
    const double top = 20, bottom = opt.height - 40, left = 60, right = opt.width - 20;
    const auto ypix = [&](double v) { return bottom - yaxis.to_pixel(v, 0, 1) * (bottom - top); };
    const auto xpix = [&](double v) { return left + xaxis.to_pixel(v, 0, 1) * (right - left); };

    const std::vector<std::string> palette = {"#1f4e9c", "#c23b21", "#3a7d34", "#7a4aa1"};
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::string stroke = "stroke=\"black\" stroke-width=\"1\"";
    out += line(left, bottom, right, bottom, stroke);
    out += line(left, top, left, bottom, stroke);
    for (double t : {yaxis.lo, 0.5 * (yaxis.lo + yaxis.hi), yaxis.hi})
        out += text(4, ypix(t) + 4, format_double(std::round(t * 1000) / 1000));
    for (double t : {xs.front(), xs.back()})
        out += text(xpix(t) - 8, bottom + 16, format_double(t));

    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::string points;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!std::isfinite(means[c][i])) continue;
            points += num(xpix(xs[i])) + "," + num(ypix(means[c][i])) + " ";
        }
        out += "<polyline fill=\"none\" stroke=\"" + palette[c % palette.size()] +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        out += text(right - 150, top + 14.0 * (c + 1), columns[c],
                    "fill=\"" + palette[c % palette.size()] + "\"");
    }
    out += "</svg>\n";
    return out;
}

}  // namespace trigreg
