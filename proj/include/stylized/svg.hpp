#pragma once

#include <span>
#include <string>
#include <vector>

namespace stylized {

/// Minimal static 2-D chart rendered to a standalone SVG document.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label);

    void line(std::span<const double> x, std::span<const double> y, std::string color = "#1f77b4");
    void points(std::span<const double> x, std::span<const double> y, std::string color = "#1f77b4");
    /// Vertical stems from y = 0, as in an ACF plot.
    void stems(std::span<const double> x, std::span<const double> y, std::string color = "#1f77b4");
    /// Filled bars between consecutive edges.
    void bars(std::span<const double> edges, std::span<const double> heights, std::string color = "#c6dbef");
    void hline(double y, std::string color = "#d62728", bool dashed = true);
    /// Diagonal y = x across the data range.
    void identity_line(std::string color = "#d62728");

    [[nodiscard]] std::string render(int width = 720, int height = 440) const;

private:
    enum class Kind { line, points, stems, bars, hline, identity };
    struct Layer {
        Kind kind;
        std::vector<double> x;
        std::vector<double> y;
        std::string color;
        bool dashed = false;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Layer> layers_;
};

/// Escapes &, <, >, " and ' for XML text and attributes.
[[nodiscard]] std::string xml_escape(const std::string& text);

}  // namespace stylized
