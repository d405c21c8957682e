#include "stylized/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace stylized {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", std::fabs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.04 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
};

}  // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgChart::line(std::span<const double> x, std::span<const double> y, std::string color) {
    layers_.push_back({Kind::line, {x.begin(), x.end()}, {y.begin(), y.end()}, std::move(color)});
}

void SvgChart::points(std::span<const double> x, std::span<const double> y, std::string color) {
    layers_.push_back({Kind::points, {x.begin(), x.end()}, {y.begin(), y.end()}, std::move(color)});
}

void SvgChart::stems(std::span<const double> x, std::span<const double> y, std::string color) {
    layers_.push_back({Kind::stems, {x.begin(), x.end()}, {y.begin(), y.end()}, std::move(color)});
}

void SvgChart::bars(std::span<const double> edges, std::span<const double> heights, std::string color) {
    layers_.push_back({Kind::bars, {edges.begin(), edges.end()}, {heights.begin(), heights.end()}, std::move(color)});
}

void SvgChart::hline(double y, std::string color, bool dashed) {
    layers_.push_back({Kind::hline, {}, {y}, std::move(color), dashed});
}

void SvgChart::identity_line(std::string color) { layers_.push_back({Kind::identity, {}, {}, std::move(color)}); }

std::string SvgChart::render(int width, int height) const {
    constexpr double left = 70.0, right = 20.0, top = 40.0, bottom = 55.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    Range xr, yr;
    for (const auto& l : layers_) {
        for (double v : l.x) xr.add(v);
        for (double v : l.y) yr.add(v);
        if (l.kind == Kind::stems || l.kind == Kind::bars) yr.add(0.0);
    }
    bool has_identity = false;
    for (const auto& l : layers_) has_identity |= l.kind == Kind::identity;
    if (has_identity) {
        const double lo = std::min(xr.lo, yr.lo), hi = std::max(xr.hi, yr.hi);
        xr.lo = yr.lo = lo;
        xr.hi = yr.hi = hi;
    }
    xr.finish();
    yr.finish();

    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         xml_escape(title_) + "</text>\n";
    s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
        s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(top + plot_h + 16) + "\" text-anchor=\"middle\">" +
             tick_label(xv) + "</text>\n";
        s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" + tick_label(yv) +
             "</text>\n";
    }
    s += "<text x=\"" + num(left + plot_w / 2) + "\" y=\"" + num(height - 12.0) + "\" text-anchor=\"middle\">" +
         xml_escape(x_label_) + "</text>\n";
    s += "<text transform=\"translate(16," + num(top + plot_h / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         xml_escape(y_label_) + "</text>\n";

    for (const auto& l : layers_) {
        const std::string color = xml_escape(l.color);
        switch (l.kind) {
            case Kind::line: {
                s += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.2\" points=\"";
                for (std::size_t i = 0; i < std::min(l.x.size(), l.y.size()); ++i) {
                    s += num(px(l.x[i])) + "," + num(py(l.y[i])) + " ";
                }
                s += "\"/>\n";
                break;
            }
            case Kind::points:
                for (std::size_t i = 0; i < std::min(l.x.size(), l.y.size()); ++i) {
                    s += "<circle cx=\"" + num(px(l.x[i])) + "\" cy=\"" + num(py(l.y[i])) + "\" r=\"1.8\" fill=\"" +
                         color + "\"/>\n";
                }
                break;
            case Kind::stems:
                for (std::size_t i = 0; i < std::min(l.x.size(), l.y.size()); ++i) {
                    s += "<line x1=\"" + num(px(l.x[i])) + "\" y1=\"" + num(py(0.0)) + "\" x2=\"" + num(px(l.x[i])) +
                         "\" y2=\"" + num(py(l.y[i])) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
                }
                break;
            case Kind::bars:
                for (std::size_t i = 0; i + 1 < l.x.size() && i < l.y.size(); ++i) {
                    const double x0 = px(l.x[i]), x1 = px(l.x[i + 1]);
                    const double y0 = py(l.y[i]), base = py(0.0);
                    s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(std::max(0.0, x1 - x0)) +
                         "\" height=\"" + num(std::max(0.0, base - y0)) + "\" fill=\"" + color +
                         "\" stroke=\"#6b8fb5\" stroke-width=\"0.5\"/>\n";
                }
                break;
            case Kind::hline:
                s += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(l.y[0])) + "\" x2=\"" + num(left + plot_w) +
                     "\" y2=\"" + num(py(l.y[0])) + "\" stroke=\"" + color + "\"" +
                     (l.dashed ? " stroke-dasharray=\"5,4\"" : "") + "/>\n";
                break;
            case Kind::identity:
                s += "<line x1=\"" + num(px(xr.lo)) + "\" y1=\"" + num(py(xr.lo)) + "\" x2=\"" + num(px(xr.hi)) +
                     "\" y2=\"" + num(py(xr.hi)) + "\" stroke=\"" + color + "\" stroke-dasharray=\"5,4\"/>\n";
                break;
        }
    }
    s += "</svg>\n";
    return s;
}

}  // namespace stylized
