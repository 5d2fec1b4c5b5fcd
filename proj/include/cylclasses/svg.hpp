#pragma once

#include <string>

#include "cylclasses/strata.hpp"

namespace cylclasses {

/// Renders the cylindrical construction: both broken lines, the vertical
/// seams, and segment labels. Deterministic bytes for fixed input and
/// library version.
std::string polygon_svg(const Permutation& p, const SuspensionData& susp);

}  // namespace cylclasses
