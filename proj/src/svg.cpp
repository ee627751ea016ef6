#include "heat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heat/config.hpp"

namespace heat {

namespace {

const char* const kPalette[] = {"#2ca02c", "#d62728", "#1f77b4", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

struct Extent {
    double lo = 0.0;
    double hi = 1.0;

    void widen_if_degenerate() {
        if (hi > lo) return;
        // flat data: pad so the line sits mid-plot
        double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

std::string render_svg_lines(const std::vector<Series>& series,
                             const SvgOptions& opts) {
    if (series.empty())
        throw std::invalid_argument("render_svg_lines: at least one series required");
    for (const auto& s : series)
        if (s.xs.size() != s.ys.size() || s.xs.empty())
            throw std::invalid_argument("render_svg_lines: bad series \"" +
                                        s.label + "\"");

    Extent x, y;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (first) {
                x.lo = x.hi = s.xs[i];
                y.lo = y.hi = s.ys[i];
                first = false;
            }
            x.lo = std::min(x.lo, s.xs[i]);
            x.hi = std::max(x.hi, s.xs[i]);
            y.lo = std::min(y.lo, s.ys[i]);
            y.hi = std::max(y.hi, s.ys[i]);
        }
    }
    x.widen_if_degenerate();
    y.widen_if_degenerate();

    const double margin = 60.0;
    const double w = opts.width, h = opts.height;
    const double plot_w = w - 2 * margin, plot_h = h - 2 * margin;
    auto px = [&](double v) { return margin + (v - x.lo) / (x.hi - x.lo) * plot_w; };
    auto py = [&](double v) { return h - margin - (v - y.lo) / (y.hi - y.lo) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.width
        << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width
        << " " << opts.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(h - margin)
        << "\" x2=\"" << fmt(w - margin) << "\" y2=\"" << fmt(h - margin)
        << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(margin)
        << "\" x2=\"" << fmt(margin) << "\" y2=\"" << fmt(h - margin)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(w / 2) << "\" y=\"" << fmt(h - margin / 4)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << opts.x_label
        << "</text>\n"
        << "<text x=\"" << fmt(margin / 4) << "\" y=\"" << fmt(h / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
        << fmt(margin / 4) << " " << fmt(h / 2) << ")\">" << opts.y_label
        << "</text>\n";
    if (!opts.title.empty())
        out << "<text x=\"" << fmt(w / 2) << "\" y=\"" << fmt(margin / 2)
            << "\" text-anchor=\"middle\" font-size=\"16\">" << opts.title
            << "</text>\n";

    // axis extent ticks
    out << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(h - margin + 16)
        << "\" font-size=\"11\">" << fmt(x.lo) << "</text>\n"
        << "<text x=\"" << fmt(w - margin) << "\" y=\"" << fmt(h - margin + 16)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(x.hi) << "</text>\n"
        << "<text x=\"" << fmt(margin - 4) << "\" y=\"" << fmt(h - margin)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(y.lo) << "</text>\n"
        << "<text x=\"" << fmt(margin - 4) << "\" y=\"" << fmt(margin + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(y.hi) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\""
            << kPalette[s % (sizeof kPalette / sizeof *kPalette)]
            << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < series[s].xs.size(); ++i) {
            if (i) out << ' ';
            out << fmt(px(series[s].xs[i])) << ',' << fmt(py(series[s].ys[i]));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_svg_lines(const std::vector<Series>& series, const std::string& path,
                    const SvgOptions& opts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << render_svg_lines(series, opts);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace heat
