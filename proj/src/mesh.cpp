#include "icemorph/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace icemorph {

int vtk_cell_type(ElementKind kind) {
  switch (kind) {
    case ElementKind::Line: return 3;
    case ElementKind::Triangle: return 5;
    case ElementKind::Quadrilateral: return 9;
    case ElementKind::Tetrahedron: return 10;
    case ElementKind::Hexahedron: return 12;
    case ElementKind::Prism: return 13;
    case ElementKind::Pyramid: return 14;
  }
  return -1;
}

bool element_kind_from_vtk(int vtk_id, ElementKind& kind) {
  switch (vtk_id) {
    case 3: kind = ElementKind::Line; return true;
    case 5: kind = ElementKind::Triangle; return true;
    case 9: kind = ElementKind::Quadrilateral; return true;
    case 10: kind = ElementKind::Tetrahedron; return true;
    case 12: kind = ElementKind::Hexahedron; return true;
    case 13: kind = ElementKind::Prism; return true;
    case 14: kind = ElementKind::Pyramid; return true;
    default: return false;
  }
}

std::size_t element_node_count(ElementKind kind) {
  switch (kind) {
    case ElementKind::Line: return 2;
    case ElementKind::Triangle: return 3;
    case ElementKind::Quadrilateral: return 4;
    case ElementKind::Tetrahedron: return 4;
    case ElementKind::Hexahedron: return 8;
    case ElementKind::Prism: return 6;
    case ElementKind::Pyramid: return 5;
  }
  return 0;
}

std::string_view element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::Line: return "line";
    case ElementKind::Triangle: return "triangle";
    case ElementKind::Quadrilateral: return "quadrilateral";
    case ElementKind::Tetrahedron: return "tetrahedron";
    case ElementKind::Hexahedron: return "hexahedron";
    case ElementKind::Prism: return "prism";
    case ElementKind::Pyramid: return "pyramid";
  }
  return "unknown";
}

bool is_volume_kind(ElementKind kind, int dim) {
  if (dim == 2) {
    return kind == ElementKind::Triangle || kind == ElementKind::Quadrilateral;
  }
  return kind == ElementKind::Tetrahedron || kind == ElementKind::Hexahedron ||
         kind == ElementKind::Prism || kind == ElementKind::Pyramid;
}

bool is_boundary_kind(ElementKind kind, int dim) {
  if (dim == 2) return kind == ElementKind::Line;
  return kind == ElementKind::Triangle || kind == ElementKind::Quadrilateral;
}

const Marker* Mesh::find_marker(std::string_view name) const {
  for (const auto& m : markers) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

const Marker& Mesh::marker(std::string_view name) const {
  const Marker* m = find_marker(name);
  if (!m) {
    throw std::invalid_argument("mesh has no marker named '" + std::string(name) + "'");
  }
  return *m;
}

std::vector<std::size_t> marker_nodes_from_elements(
    const std::vector<Element>& elements) {
  std::vector<std::size_t> nodes;
  std::unordered_set<std::size_t> seen;
  for (const auto& e : elements) {
    for (std::size_t n : e.nodes) {
      if (seen.insert(n).second) nodes.push_back(n);
    }
  }
  return nodes;
}

// Coincident-node scan with a uniform hash grid of cell size equal to the
// tolerance; any pair within tolerance lands in the same or an adjacent cell.
std::optional<std::pair<std::size_t, std::size_t>> find_coincident_nodes(
    const Mesh& mesh) {
  const std::size_t n = mesh.nodes.size();
  if (n < 2) return std::nullopt;

  Vec3 lo = mesh.nodes.front(), hi = mesh.nodes.front();
  for (const auto& p : mesh.nodes) {
    lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
    lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
    lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
  }
  const double diag = distance(lo, hi);
  if (diag == 0.0) return std::make_pair(std::size_t{0}, std::size_t{1});
  const double tol = 1e-12 * diag;

  struct Key {
    std::int64_t a, b, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<std::int64_t>{}(k.a);
      h ^= std::hash<std::int64_t>{}(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<std::int64_t>{}(k.c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };

  auto cell_of = [&](const Vec3& p) -> Key {
    return {static_cast<std::int64_t>(std::floor((p.x - lo.x) / tol)),
            static_cast<std::int64_t>(std::floor((p.y - lo.y) / tol)),
            static_cast<std::int64_t>(std::floor((p.z - lo.z) / tol))};
  };

  std::unordered_multimap<Key, std::size_t, KeyHash> grid;
  grid.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Key k = cell_of(mesh.nodes[i]);
    for (std::int64_t da = -1; da <= 1; ++da) {
      for (std::int64_t db = -1; db <= 1; ++db) {
        for (std::int64_t dc = -1; dc <= 1; ++dc) {
          const Key nb{k.a + da, k.b + db, k.c + dc};
          auto [it, end] = grid.equal_range(nb);
          for (; it != end; ++it) {
            if (distance(mesh.nodes[i], mesh.nodes[it->second]) <= tol) {
              return std::make_pair(it->second, i);
            }
          }
        }
      }
    }
    grid.emplace(k, i);
  }
  return std::nullopt;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.dim != 2 && mesh.dim != 3) {
    throw std::invalid_argument("mesh dimension must be 2 or 3");
  }
  const std::size_t n = mesh.nodes.size();
  auto check_element = [&](const Element& e, bool boundary, const std::string& where) {
    const bool kind_ok = boundary ? is_boundary_kind(e.kind, mesh.dim)
                                  : is_volume_kind(e.kind, mesh.dim);
    if (!kind_ok) {
      throw std::invalid_argument(where + ": element kind '" +
                                  std::string(element_kind_name(e.kind)) +
                                  "' not allowed for a " + std::to_string(mesh.dim) +
                                  "D mesh");
    }
    if (e.nodes.size() != element_node_count(e.kind)) {
      throw std::invalid_argument(where + ": wrong node count for " +
                                  std::string(element_kind_name(e.kind)));
    }
    for (std::size_t idx : e.nodes) {
      if (idx >= n) {
        throw std::invalid_argument(where + ": node index " + std::to_string(idx) +
                                    " out of range (mesh has " + std::to_string(n) +
                                    " nodes)");
      }
    }
  };
  for (const auto& e : mesh.elements) check_element(e, false, "element list");
  for (const auto& m : mesh.markers) {
    for (const auto& e : m.elements) check_element(e, true, "marker '" + m.name + "'");
    for (std::size_t idx : m.nodes) {
      if (idx >= n) {
        throw std::invalid_argument("marker '" + m.name + "': node index " +
                                    std::to_string(idx) + " out of range");
      }
    }
  }
  if (auto dup = find_coincident_nodes(mesh)) {
    throw std::invalid_argument("duplicate nodes " + std::to_string(dup->first) +
                                " and " + std::to_string(dup->second) +
                                " (coincident within tolerance)");
  }
}

}  // namespace icemorph
