#include "accretia/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace accretia {

namespace {

constexpr double kCanvas = 640.0;
constexpr double kMargin = 60.0;

const char* kMarkerColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
    char buffer[64];
    // fixed precision keeps the output byte-deterministic
    std::snprintf(buffer, sizeof(buffer), "%.4f", v);
    return buffer;
}

}  // namespace

std::string render_spectrum_svg(const std::vector<LabeledPoints>& groups,
                                const std::vector<SectorWedge>& sectors) {
    double radius = 0.0;
    for (const auto& group : groups) {
        for (const Complex& p : group.points) {
            if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
                throw std::invalid_argument("render_spectrum_svg: non-finite point");
            }
            radius = std::max(radius, std::abs(p));
        }
    }
    for (const auto& wedge : sectors) {
        if (wedge.half_angle < 0.0 || wedge.half_angle > std::numbers::pi / 2.0 + 1e-12) {
            throw std::invalid_argument("render_spectrum_svg: half_angle outside [0, pi/2]");
        }
    }
    if (radius == 0.0) radius = 1.0;
    const double scale = (kCanvas / 2.0 - kMargin) / radius;
    const double cx = kCanvas / 2.0;
    const double cy = kCanvas / 2.0;
    auto px = [&](double re) { return cx + scale * re; };
    auto py = [&](double im) { return cy - scale * im; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
        << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const double wedge_r = radius * 1.15;
    for (const auto& wedge : sectors) {
        const double a0 = wedge.center_angle - wedge.half_angle;
        const double a1 = wedge.center_angle + wedge.half_angle;
        svg << "<path d=\"M " << fmt(px(0)) << " " << fmt(py(0)) << " L "
            << fmt(px(wedge_r * std::cos(a0))) << " " << fmt(py(wedge_r * std::sin(a0)));
        if (wedge.half_angle > 0.0) {
            svg << " A " << fmt(scale * wedge_r) << " " << fmt(scale * wedge_r) << " 0 0 0 "
                << fmt(px(wedge_r * std::cos(a1))) << " " << fmt(py(wedge_r * std::sin(a1)));
        }
        svg << " Z\" fill=\"#aec7e8\" fill-opacity=\"0.35\" stroke=\"#1f77b4\" "
               "stroke-width=\"0.8\"/>\n";
    }

    // axes
    svg << "<line x1=\"0\" y1=\"" << fmt(cy) << "\" x2=\"" << kCanvas << "\" y2=\"" << fmt(cy)
        << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<line x1=\"" << fmt(cx) << "\" y1=\"0\" x2=\"" << fmt(cx) << "\" y2=\"" << kCanvas
        << "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << fmt(kCanvas - 48.0) << "\" y=\"" << fmt(cy - 8.0)
        << "\" font-size=\"13\" fill=\"#444444\">Re</text>\n";
    svg << "<text x=\"" << fmt(cx + 8.0) << "\" y=\"16\" font-size=\"13\" fill=\"#444444\">Im</text>\n";

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const char* color = kMarkerColors[g % 5];
        for (const Complex& p : groups[g].points) {
            svg << "<circle cx=\"" << fmt(px(p.real())) << "\" cy=\"" << fmt(py(p.imag()))
                << "\" r=\"4\" fill=\"" << color << "\"/>\n";
        }
    }

    double legend_y = 24.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const char* color = kMarkerColors[g % 5];
        svg << "<circle cx=\"20\" cy=\"" << fmt(legend_y - 4.0) << "\" r=\"4\" fill=\"" << color
            << "\"/>\n";
        svg << "<text x=\"32\" y=\"" << fmt(legend_y) << "\" font-size=\"13\" fill=\"#222222\">"
            << groups[g].label << "</text>\n";
        legend_y += 18.0;
    }

    svg << "</svg>\n";
    return svg.str();
}

void emit_spectrum_svg(const std::vector<LabeledPoints>& points,
                       const std::vector<SectorWedge>& sectors, const std::string& path) {
    const std::string body = render_spectrum_svg(points, sectors);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_spectrum_svg: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("emit_spectrum_svg: write failed for " + path);
}

}  // namespace accretia
