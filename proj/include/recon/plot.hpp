#pragma once

#include <string>

#include "recon/polygons.hpp"

namespace recon {

// Farey tessellation in the Poincaré disk: every edge between neighbours of
// height <= max_height, drawn as an arc orthogonal to the boundary circle.
std::string farey_svg(int max_height);

std::string polygon_svg(const PlanarPolygon& p);

}  // namespace recon
