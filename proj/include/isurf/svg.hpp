#pragma once

#include <optional>
#include <string>

#include "isurf/topview.hpp"

namespace isurf {

// Renders sampled members of a circle family plus an optional envelope
// cyclic. One <path> per member; the envelope is a single contour path in a
// distinct stroke. The viewBox is fitted to the member geometry.
std::string svg_family(const CircleFamilyF& fam, const std::optional<CyclicF>& envelope,
                       int members = 9);

}  // namespace isurf
