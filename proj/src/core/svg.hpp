// Deterministic SVG rendering of one- and two-dimensional periodic
// complexes: fundamental domain outline, cells, per-section colors and
// bending-parameter labels.
#pragma once

#include <string>

#include "mumford_data.hpp"

namespace mumford {

// Renders the complex over one fundamental domain. Walls are colored by
// their lowest contributing section index and labeled with the bending
// weight. Throws std::invalid_argument for ambient dimension > 2.
std::string emit_svg(const PeriodicComplex& pc);

// The joint bending complex of the data, rendered as above.
std::string emit_svg(const MumfordData& data);

}  // namespace mumford
