#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icemorph/vec.hpp"

namespace icemorph {

enum class ElementKind {
  Line,
  Triangle,
  Quadrilateral,
  Tetrahedron,
  Hexahedron,
  Prism,
  Pyramid,
};

// VTK cell type ids, shared by the SU2 and VTK legacy formats.
int vtk_cell_type(ElementKind kind);
bool element_kind_from_vtk(int vtk_id, ElementKind& kind);
std::size_t element_node_count(ElementKind kind);
std::string_view element_kind_name(ElementKind kind);
bool is_volume_kind(ElementKind kind, int dim);
bool is_boundary_kind(ElementKind kind, int dim);

struct Element {
  ElementKind kind = ElementKind::Triangle;
  std::vector<std::size_t> nodes;
};

// Named boundary patch. `nodes` lists the patch's unique node indices in
// first-appearance order of the boundary element list; greedy seeding and
// displacement defaults rely on that order being stable.
struct Marker {
  std::string name;
  std::vector<Element> elements;
  std::vector<std::size_t> nodes;
};

struct Mesh {
  int dim = 2;
  std::vector<Vec3> nodes;
  std::vector<Element> elements;
  std::vector<Marker> markers;

  std::size_t node_count() const { return nodes.size(); }

  const Marker* find_marker(std::string_view name) const;
  // Throws std::invalid_argument when the marker does not exist.
  const Marker& marker(std::string_view name) const;
};

// Recomputes a marker's unique node list from its boundary elements.
std::vector<std::size_t> marker_nodes_from_elements(
    const std::vector<Element>& elements);

// First pair of nodes closer than 1e-12 of the bounding-box diagonal, if
// any; such nodes would make the interpolation matrix singular.
std::optional<std::pair<std::size_t, std::size_t>> find_coincident_nodes(
    const Mesh& mesh);

// Checks index ranges, element kinds against the mesh dimension, and
// rejects coincident nodes.
void validate_mesh(const Mesh& mesh);

}  // namespace icemorph
