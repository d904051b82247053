#pragma once

#include <string>
#include <vector>

#include "accretia/types.hpp"

namespace accretia {

struct LabeledPoints {
    std::string label;
    std::vector<Complex> points;
};

struct SectorWedge {
    double center_angle;  // radians
    double half_angle;    // radians, in [0, pi/2]
};

/// Renders labeled spectra with shaded sector wedges as a standalone SVG
/// string; byte-deterministic for fixed input.
std::string render_spectrum_svg(const std::vector<LabeledPoints>& points,
                                const std::vector<SectorWedge>& sectors);

/// render_spectrum_svg written to a file; throws on I/O failure.
void emit_spectrum_svg(const std::vector<LabeledPoints>& points,
                       const std::vector<SectorWedge>& sectors, const std::string& path);

}  // namespace accretia
