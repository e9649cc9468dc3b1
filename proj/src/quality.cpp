#include "icemorph/quality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace icemorph {

namespace {

struct Face {
  std::array<std::size_t, 4> nodes{};
  std::size_t count = 0;
};

// Faces in local node numbering; 2D elements expose their edges.
std::vector<Face> element_faces(const Element& e) {
  auto f2 = [](std::size_t a, std::size_t b) { return Face{{a, b, 0, 0}, 2}; };
  auto f3 = [](std::size_t a, std::size_t b, std::size_t c) {
    return Face{{a, b, c, 0}, 3};
  };
  auto f4 = [](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return Face{{a, b, c, d}, 4};
  };
  switch (e.kind) {
    case ElementKind::Triangle:
      return {f2(0, 1), f2(1, 2), f2(2, 0)};
    case ElementKind::Quadrilateral:
      return {f2(0, 1), f2(1, 2), f2(2, 3), f2(3, 0)};
    case ElementKind::Tetrahedron:
      return {f3(0, 1, 2), f3(0, 1, 3), f3(1, 2, 3), f3(0, 2, 3)};
    case ElementKind::Hexahedron:
      return {f4(0, 1, 2, 3), f4(4, 5, 6, 7), f4(0, 1, 5, 4),
              f4(1, 2, 6, 5), f4(2, 3, 7, 6), f4(3, 0, 4, 7)};
    case ElementKind::Prism:
      return {f3(0, 1, 2), f3(3, 4, 5), f4(0, 1, 4, 3), f4(1, 2, 5, 4),
              f4(2, 0, 3, 5)};
    case ElementKind::Pyramid:
      return {f4(0, 1, 2, 3), f3(0, 1, 4), f3(1, 2, 4), f3(2, 3, 4), f3(3, 0, 4)};
    case ElementKind::Line:
      return {};
  }
  return {};
}

Vec3 element_centroid(const Mesh& mesh, const Element& e) {
  Vec3 c;
  for (std::size_t n : e.nodes) c += mesh.nodes[n];
  return c * (1.0 / static_cast<double>(e.nodes.size()));
}

// Unit normal; zero vector for degenerate faces. Quad normals average the
// two triangle normals.
Vec3 face_normal(const Mesh& mesh, const Face& f,
                 const std::vector<std::size_t>& global) {
  if (f.count == 2) {
    const Vec3 t = mesh.nodes[global[1]] - mesh.nodes[global[0]];
    return normalized(Vec3{t.y, -t.x, 0.0});
  }
  const Vec3& a = mesh.nodes[global[0]];
  const Vec3& b = mesh.nodes[global[1]];
  const Vec3& c = mesh.nodes[global[2]];
  Vec3 n = cross(b - a, c - a);
  if (f.count == 4) {
    const Vec3& d = mesh.nodes[global[3]];
    n = normalized(n) + normalized(cross(c - a, d - a));
  }
  return normalized(n);
}

Vec3 face_centroid(const Mesh& mesh, const std::vector<std::size_t>& global) {
  Vec3 c;
  for (std::size_t n : global) c += mesh.nodes[n];
  return c * (1.0 / static_cast<double>(global.size()));
}

// Orthogonality score of one face: 90 degrees when the face normal is
// aligned with the direction joining the adjacent centroids, 0 when
// perpendicular. atan2 keeps the fold well conditioned near alignment.
double face_score(const Vec3& normal, const Vec3& centroid_line) {
  const Vec3 c = normalized(centroid_line);
  if (normal.squared_norm() == 0.0 || c.squared_norm() == 0.0) return 0.0;
  const double along = std::abs(dot(normal, c));
  const double transverse = cross(normal, c).norm();
  return 90.0 - std::atan2(transverse, along) * 180.0 / std::numbers::pi;
}

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a)) / 6.0;
}

double tri_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace

double signed_measure(const Mesh& mesh, const Element& e) {
  const auto& nd = mesh.nodes;
  const auto& n = e.nodes;
  switch (e.kind) {
    case ElementKind::Triangle:
      return tri_area(nd[n[0]], nd[n[1]], nd[n[2]]);
    case ElementKind::Quadrilateral:
      return tri_area(nd[n[0]], nd[n[1]], nd[n[2]]) +
             tri_area(nd[n[0]], nd[n[2]], nd[n[3]]);
    case ElementKind::Tetrahedron:
      return tet_volume(nd[n[0]], nd[n[1]], nd[n[2]], nd[n[3]]);
    case ElementKind::Hexahedron: {
      // Six tets around the 0-6 body diagonal.
      double v = 0.0;
      v += tet_volume(nd[n[0]], nd[n[1]], nd[n[2]], nd[n[6]]);
      v += tet_volume(nd[n[0]], nd[n[2]], nd[n[3]], nd[n[6]]);
      v += tet_volume(nd[n[0]], nd[n[3]], nd[n[7]], nd[n[6]]);
      v += tet_volume(nd[n[0]], nd[n[7]], nd[n[4]], nd[n[6]]);
      v += tet_volume(nd[n[0]], nd[n[4]], nd[n[5]], nd[n[6]]);
      v += tet_volume(nd[n[0]], nd[n[5]], nd[n[1]], nd[n[6]]);
      return v;
    }
    case ElementKind::Prism:
      return tet_volume(nd[n[0]], nd[n[1]], nd[n[2]], nd[n[3]]) +
             tet_volume(nd[n[1]], nd[n[2]], nd[n[3]], nd[n[4]]) +
             tet_volume(nd[n[2]], nd[n[3]], nd[n[4]], nd[n[5]]);
    case ElementKind::Pyramid:
      return tet_volume(nd[n[0]], nd[n[1]], nd[n[2]], nd[n[4]]) +
             tet_volume(nd[n[0]], nd[n[2]], nd[n[3]], nd[n[4]]);
    case ElementKind::Line:
      return 0.0;
  }
  return 0.0;
}

std::vector<double> signed_measures(const Mesh& mesh) {
  std::vector<double> measures;
  measures.reserve(mesh.elements.size());
  for (const auto& e : mesh.elements) measures.push_back(signed_measure(mesh, e));
  return measures;
}

std::size_t count_inverted(const Mesh& mesh) {
  std::size_t count = 0;
  for (const auto& e : mesh.elements) {
    if (signed_measure(mesh, e) <= 0.0) ++count;
  }
  return count;
}

QualityReport orthogonality(const Mesh& mesh) {
  QualityReport report;
  const std::size_t n_elems = mesh.elements.size();
  report.element_signed_measure = signed_measures(mesh);
  for (double m : report.element_signed_measure) {
    if (m <= 0.0) ++report.inverted_count;
  }
  report.element_orthogonality_deg.assign(n_elems, 90.0);
  if (n_elems == 0) return report;

  struct FaceUse {
    std::size_t element;
    std::vector<std::size_t> global;  // original node order
  };
  std::map<std::vector<std::size_t>, std::vector<FaceUse>> faces;
  for (std::size_t ei = 0; ei < n_elems; ++ei) {
    for (const Face& f : element_faces(mesh.elements[ei])) {
      std::vector<std::size_t> global(f.count);
      for (std::size_t k = 0; k < f.count; ++k) {
        global[k] = mesh.elements[ei].nodes[f.nodes[k]];
      }
      std::vector<std::size_t> key = global;
      std::sort(key.begin(), key.end());
      faces[key].push_back({ei, std::move(global)});
    }
  }

  std::vector<Vec3> centroids(n_elems);
  for (std::size_t ei = 0; ei < n_elems; ++ei) {
    centroids[ei] = element_centroid(mesh, mesh.elements[ei]);
  }

  constexpr double unset = -1.0;
  std::vector<double> internal_score(n_elems, unset);
  std::vector<double> boundary_score(n_elems, unset);
  std::vector<char> degenerate(n_elems, 0);

  auto fold_in = [](double& slot, double value) {
    slot = slot < 0.0 ? value : std::min(slot, value);
  };

  for (const auto& [key, uses] : faces) {
    Face f;
    f.count = key.size();
    const Vec3 normal = face_normal(mesh, f, uses.front().global);
    const bool is_degenerate = normal.squared_norm() == 0.0;
    if (uses.size() == 2) {
      const Vec3 line = centroids[uses[1].element] - centroids[uses[0].element];
      const double score = is_degenerate ? 0.0 : face_score(normal, line);
      for (const auto& use : uses) {
        fold_in(internal_score[use.element], score);
        if (is_degenerate) degenerate[use.element] = 1;
      }
    } else {
      for (const auto& use : uses) {
        const Vec3 line = face_centroid(mesh, use.global) - centroids[use.element];
        const double score = is_degenerate ? 0.0 : face_score(normal, line);
        fold_in(boundary_score[use.element], score);
        if (is_degenerate) degenerate[use.element] = 1;
      }
    }
  }

  double sum = 0.0;
  double min_score = 90.0;
  for (std::size_t ei = 0; ei < n_elems; ++ei) {
    double score = internal_score[ei] >= 0.0 ? internal_score[ei]
                                             : boundary_score[ei];
    if (score < 0.0) score = 90.0;  // isolated element without usable faces
    if (degenerate[ei]) {
      score = 0.0;
      ++report.degenerate_count;
    }
    report.element_orthogonality_deg[ei] = score;
    sum += score;
    min_score = std::min(min_score, score);
  }
  report.min_orthogonality_deg = min_score;
  report.mean_orthogonality_deg = sum / static_cast<double>(n_elems);
  return report;
}

}  // namespace icemorph
