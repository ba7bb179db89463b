#pragma once

#include <array>
#include <span>
#include <vector>

#include "flipforge/kernel.hpp"

namespace flipforge::detail {

// Facets of the convex hull of points in general position, each oriented
// counterclockwise seen from outside.  Throws DegenerateLift when four points
// are found coplanar.
std::vector<std::array<Label, 3>> convex_hull_3d(std::span<const Point3> pts);

}  // namespace flipforge::detail
