#pragma once

#include <vector>

#include "lfd/carve.hpp"

namespace lfd::detail {

std::vector<ConvexCell> carve_cells(const ConstraintSet& set, const std::vector<Prism>& prisms,
                                    const StarSetup& setup, const CarveOptions& options,
                                    CarveStats* stats, bool* touches_cone);

Polyhedron assemble_polyhedron(std::vector<ConvexCell> cells, const ConstraintSet& set,
                               const std::vector<Prism>& prisms, const StarSetup& setup,
                               const CarveOptions& options);

}  // namespace lfd::detail
