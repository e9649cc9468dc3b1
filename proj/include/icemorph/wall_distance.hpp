#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "icemorph/greedy.hpp"
#include "icemorph/mesh.hpp"
#include "icemorph/rbf.hpp"

namespace icemorph {

// Exact distance from every mesh node to the nearest node of the deforming
// patch; exactly zero on the patch itself.
struct DistanceIndex {
  std::vector<double> distances;  // one per mesh node
};

DistanceIndex build_distance_index(const Mesh& mesh, const std::string& marker);
DistanceIndex build_distance_index(const Mesh& mesh,
                                   const std::vector<std::size_t>& surface_nodes);

// Linear taper in wall distance: 1 at the wall, 0 at and beyond the support
// distance D = reduction_factor * max |target| of the level.
struct WallFunction {
  double reduction_factor = 5.0;
  double support_distance = 0.0;
};

WallFunction make_wall_function(double reduction_factor, double level_target_max);
double eval_wall_function(const WallFunction& wf, double wall_distance);

// Sparse per-node displacement contribution of one level. Only nodes inside
// the support distance appear; everything else is left untouched.
struct VolumeUpdate {
  std::vector<std::pair<std::size_t, Vec3>> entries;  // ascending node index
};

VolumeUpdate update_volume(const Mesh& mesh, const RbfLevel& level,
                           const DistanceIndex& index, const WallFunction& wf,
                           const BasisFunction& basis);

}  // namespace icemorph
