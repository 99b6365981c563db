#ifndef GRASSMANN_SVG_PLOT_HPP
#define GRASSMANN_SVG_PLOT_HPP

// 2-D scatter of an MDS embedding as a standalone SVG document.
// Class i (in ascending label order) gets shape i mod 3: circle, plus,
// triangle. Train points are hollow, test points filled.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "grassmann/error.hpp"
#include "grassmann/io.hpp"
#include "grassmann/mds.hpp"

namespace grassmann {

namespace detail {

inline std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline const char* class_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    return palette[i % 6];
}

// One marker centred at (x, y) with half-size r.
inline std::string svg_marker(std::size_t shape, double x, double y, double r, const char* color, bool filled,
                              const std::string& css_class, const std::string& attrs) {
    const std::string paint = std::string(" fill=\"") + (filled ? color : "none") + "\" stroke=\"" + color +
                              "\" stroke-width=\"1.2\"";
    const std::string head = "<";
    if (shape == 0) {
        return head + "circle class=\"" + css_class + "\"" + attrs + " cx=\"" + fmt_coord(x) + "\" cy=\"" +
               fmt_coord(y) + "\" r=\"" + fmt_coord(r) + "\"" + paint + "/>";
    }
    std::vector<std::pair<double, double>> pts;
    if (shape == 1) {
        const double t = r / 3.0;  // arm half-width
        pts = {{-t, -r}, {t, -r}, {t, -t}, {r, -t}, {r, t}, {t, t}, {t, r}, {-t, r}, {-t, t}, {-r, t}, {-r, -t}, {-t, -t}};
    } else {
        pts = {{0.0, -r}, {r, 0.8 * r}, {-r, 0.8 * r}};
    }
    std::string p;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) p += ' ';
        p += fmt_coord(x + pts[i].first) + "," + fmt_coord(y + pts[i].second);
    }
    return head + "polygon class=\"" + css_class + "\"" + attrs + " points=\"" + p + "\"" + paint + "/>";
}

}  // namespace detail

/// SVG text for columns dim_x and dim_y (1-based, both ≤ retained d).
inline std::string render_embedding_svg(const EmbeddingResult& E, std::size_t dim_x = 1, std::size_t dim_y = 2) {
    const std::size_t d = E.retained_dim;
    for (std::size_t c : {dim_x, dim_y}) {
        if (c < 1 || c > d) {
            throw ValidationError("plot: dimension " + std::to_string(c) + " out of range, embedding has d=" +
                                  std::to_string(d) + " retained columns");
        }
    }
    if (E.size() == 0) throw ValidationError("plot: empty embedding");
    if (E.labels.size() != E.size() || E.splits.size() != E.size()) {
        throw ValidationError("plot: labels/splits do not match the embedding rows");
    }

    std::vector<int> classes = E.labels;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    auto class_index = [&](int label) {
        return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) - classes.begin());
    };

    constexpr double width = 640, height = 480, left = 70, right = 150, top = 30, bottom = 60, r = 4.0;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto range = [&](std::size_t col) {
        double lo = E.coordinates(0, col), hi = lo;
        for (std::size_t i = 1; i < E.size(); ++i) {
            lo = std::min(lo, E.coordinates(i, col));
            hi = std::max(hi, E.coordinates(i, col));
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        return std::pair{lo - pad, hi + pad};
    };
    const auto [x0, x1] = range(dim_x - 1);
    const auto [y0, y1] = range(dim_y - 1);
    auto sx = [&](double v) { return left + (v - x0) / (x1 - x0) * plot_w; };
    auto sy = [&](double v) { return top + (y1 - v) / (y1 - y0) * plot_h; };

    using detail::fmt_coord;
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<rect class=\"frame\" x=\"" + fmt_coord(left) + "\" y=\"" + fmt_coord(top) + "\" width=\"" + fmt_coord(plot_w) +
         "\" height=\"" + fmt_coord(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = x0 + (x1 - x0) * t / 4.0, fy = y0 + (y1 - y0) * t / 4.0;
        s += "<text class=\"tick\" x=\"" + fmt_coord(sx(fx)) + "\" y=\"" + fmt_coord(top + plot_h + 16) +
             "\" font-size=\"10\" text-anchor=\"middle\">" + fmt_coord(fx) + "</text>\n";
        s += "<text class=\"tick\" x=\"" + fmt_coord(left - 6) + "\" y=\"" + fmt_coord(sy(fy) + 3) +
             "\" font-size=\"10\" text-anchor=\"end\">" + fmt_coord(fy) + "</text>\n";
    }
    s += "<text class=\"axis-label\" x=\"" + fmt_coord(left + plot_w / 2) + "\" y=\"" + fmt_coord(height - 15) +
         "\" font-size=\"12\" text-anchor=\"middle\">MDS dimension " + std::to_string(dim_x) + " (eigenvalue " +
         std::to_string(dim_x) + " of B)</text>\n";
    s += "<text class=\"axis-label\" x=\"18\" y=\"" + fmt_coord(top + plot_h / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + fmt_coord(top + plot_h / 2) +
         ")\">MDS dimension " + std::to_string(dim_y) + " (eigenvalue " + std::to_string(dim_y) + " of B)</text>\n";

    for (std::size_t i = 0; i < E.size(); ++i) {
        const std::size_t c = class_index(E.labels[i]);
        const bool test = E.splits[i] == Split::Test;
        const std::string attrs = " data-label=\"" + std::to_string(E.labels[i]) + "\" data-split=\"" +
                                  std::string(to_string(E.splits[i])) + "\"";
        s += detail::svg_marker(c % 3, sx(E.coordinates(i, dim_x - 1)), sy(E.coordinates(i, dim_y - 1)), r,
                                detail::class_color(c), test, "marker", attrs) +
             "\n";
    }

    // Legend: one entry per (class, split) pair.
    double ly = top + 10;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (bool test : {false, true}) {
            s += detail::svg_marker(c % 3, width - right + 20, ly, r, detail::class_color(c), test, "legend-marker", "") +
                 "\n";
            s += "<text class=\"legend\" x=\"" + fmt_coord(width - right + 32) + "\" y=\"" + fmt_coord(ly + 4) +
                 "\" font-size=\"11\">class " + std::to_string(classes[c]) + (test ? " test" : " train") + "</text>\n";
            ly += 18;
        }
    }
    s += "</svg>\n";
    return s;
}

inline void emit_embedding_plot(const EmbeddingResult& E, const std::filesystem::path& out_path, std::size_t dim_x = 1,
                                std::size_t dim_y = 2) {
    write_file_atomic(out_path, render_embedding_svg(E, dim_x, dim_y));
}

}  // namespace grassmann

#endif  // GRASSMANN_SVG_PLOT_HPP
