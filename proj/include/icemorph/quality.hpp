#pragma once

#include <cstddef>
#include <vector>

#include "icemorph/mesh.hpp"

namespace icemorph {

// Per-element quality: orthogonality angle in degrees (90 is ideal, computed
// from internal face normals against adjacent-centroid lines) and signed
// area/volume (negative means inverted).
struct QualityReport {
  std::vector<double> element_orthogonality_deg;
  std::vector<double> element_signed_measure;
  double min_orthogonality_deg = 90.0;
  double mean_orthogonality_deg = 90.0;
  std::size_t inverted_count = 0;
  std::size_t degenerate_count = 0;
};

QualityReport orthogonality(const Mesh& mesh);

// Shoelace areas in 2D (quads split into two triangles); tet volumes via the
// scalar triple product, hex/prism/pyramid by decomposition into tets.
std::vector<double> signed_measures(const Mesh& mesh);
double signed_measure(const Mesh& mesh, const Element& element);

std::size_t count_inverted(const Mesh& mesh);

}  // namespace icemorph
