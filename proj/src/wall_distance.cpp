#include "icemorph/wall_distance.hpp"

#include <stdexcept>

#include "icemorph/kdtree.hpp"

namespace icemorph {

DistanceIndex build_distance_index(const Mesh& mesh, const std::string& marker) {
  return build_distance_index(mesh, mesh.marker(marker).nodes);
}

DistanceIndex build_distance_index(const Mesh& mesh,
                                   const std::vector<std::size_t>& surface_nodes) {
  if (surface_nodes.empty()) {
    throw std::invalid_argument("cannot build a distance index for an empty patch");
  }
  std::vector<Vec3> surface;
  surface.reserve(surface_nodes.size());
  for (std::size_t n : surface_nodes) surface.push_back(mesh.nodes[n]);
  KdTree tree(std::move(surface), mesh.dim);

  DistanceIndex index;
  index.distances.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    index.distances[i] = tree.nearest_distance(mesh.nodes[i]);
  }
  // Patch nodes sit at distance zero by definition, independent of rounding.
  for (std::size_t n : surface_nodes) index.distances[n] = 0.0;
  return index;
}

WallFunction make_wall_function(double reduction_factor, double level_target_max) {
  if (!(reduction_factor > 0.0)) {
    throw std::invalid_argument("volume reduction factor must be positive");
  }
  return {reduction_factor, reduction_factor * level_target_max};
}

double eval_wall_function(const WallFunction& wf, double wall_distance) {
  if (wf.support_distance <= 0.0) return wall_distance == 0.0 ? 1.0 : 0.0;
  const double xi = wall_distance / wf.support_distance;
  return xi < 1.0 ? 1.0 - xi : 0.0;
}

VolumeUpdate update_volume(const Mesh& mesh, const RbfLevel& level,
                           const DistanceIndex& index, const WallFunction& wf,
                           const BasisFunction& basis) {
  VolumeUpdate update;
  if (index.distances.size() != mesh.nodes.size()) {
    throw std::invalid_argument("distance index does not match the mesh");
  }
  // A zero support distance means a zero target: nothing moves this level.
  if (wf.support_distance <= 0.0) return update;

  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const double d = index.distances[i];
    if (d >= wf.support_distance) continue;
    const double psi = eval_wall_function(wf, d);
    Vec3 value = eval_interpolant(level.weights, basis, mesh.nodes[i]);
    update.entries.emplace_back(i, value * psi);
  }
  return update;
}

}  // namespace icemorph
