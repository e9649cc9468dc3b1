#include "icemorph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace icemorph {

double naca0012_half_thickness(double x_over_c, double chord) {
  const double x = std::clamp(x_over_c, 0.0, 1.0);
  // Closed trailing edge variant: the last coefficient makes y(1) == 0.
  const double y = 0.2969 * std::sqrt(x) - 0.1260 * x - 0.3516 * x * x +
                   0.2843 * x * x * x - 0.1036 * x * x * x * x;
  return 5.0 * 0.12 * chord * y;
}

namespace {

constexpr double kFarfieldChords = 25.0;
constexpr double kFirstLayerFraction = 1.5e-4;

// Growth ratio g with (g-1)/(g^M-1) equal to the first-layer fraction.
double solve_growth(std::size_t layers, double first_fraction) {
  double lo = 1.0 + 1e-12, hi = 100.0;
  auto fraction = [&](double g) {
    return (g - 1.0) / (std::pow(g, static_cast<double>(layers)) - 1.0);
  };
  if (fraction(lo) <= first_fraction) return lo;  // nearly uniform spacing
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fraction(mid) > first_fraction) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Mesh gen_airfoil_mesh(double chord, std::size_t circumferential,
                      std::size_t radial_layers) {
  if (!(chord > 0.0)) throw std::invalid_argument("chord must be positive");
  if (circumferential < 8 || radial_layers < 8) {
    throw std::invalid_argument("airfoil grid needs at least 8x8 cells");
  }
  if (circumferential % 2 != 0) {
    throw std::invalid_argument("circumferential count must be even");
  }
  const std::size_t n = circumferential;
  const std::size_t m = radial_layers;

  // Profile ring, trailing edge first, counterclockwise (upper surface first).
  std::vector<Vec3> profile(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
    const double x_over_c = 0.5 * (1.0 + std::cos(theta));
    double y = naca0012_half_thickness(x_over_c, chord);
    if (j == 0 || 2 * j == n) {
      y = 0.0;
    } else if (2 * j > n) {
      y = -y;
    }
    profile[j] = {x_over_c * chord, y, 0.0};
  }

  const Vec3 center{0.5 * chord, 0.0, 0.0};
  const double far_radius = kFarfieldChords * chord;
  std::vector<Vec3> farfield(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(n);
    farfield[j] = center + Vec3{far_radius * std::cos(theta),
                                far_radius * std::sin(theta), 0.0};
  }

  const double growth = solve_growth(m, kFirstLayerFraction);
  const double denom = std::pow(growth, static_cast<double>(m)) - 1.0;
  std::vector<double> fraction(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    fraction[i] = denom > 0.0
                      ? (std::pow(growth, static_cast<double>(i)) - 1.0) / denom
                      : static_cast<double>(i) / static_cast<double>(m);
  }
  fraction[0] = 0.0;
  fraction[m] = 1.0;

  Mesh mesh;
  mesh.dim = 2;
  mesh.nodes.reserve((m + 1) * n);
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double t = fraction[i];
      mesh.nodes.push_back(profile[j] * (1.0 - t) + farfield[j] * t);
    }
  }

  mesh.elements.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t jn = (j + 1) % n;
      Element quad;
      quad.kind = ElementKind::Quadrilateral;
      quad.nodes = {i * n + j, (i + 1) * n + j, (i + 1) * n + jn, i * n + jn};
      mesh.elements.push_back(std::move(quad));
    }
  }

  auto ring_marker = [&](const std::string& name, std::size_t ring) {
    Marker marker;
    marker.name = name;
    for (std::size_t j = 0; j < n; ++j) {
      Element line;
      line.kind = ElementKind::Line;
      line.nodes = {ring * n + j, ring * n + (j + 1) % n};
      marker.elements.push_back(std::move(line));
    }
    marker.nodes = marker_nodes_from_elements(marker.elements);
    return marker;
  };
  mesh.markers.push_back(ring_marker("airfoil", 0));
  mesh.markers.push_back(ring_marker("farfield", m));
  return mesh;
}

DisplacementField gen_sinusoidal_displacement(const Mesh& mesh,
                                              const std::string& marker_name,
                                              SinusoidalMode mode,
                                              double amplitude,
                                              double wavenumber) {
  const Marker& marker = mesh.marker(marker_name);
  if (mode == SinusoidalMode::Wing && mesh.dim != 3) {
    throw std::invalid_argument("wing mode requires a 3D mesh");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto coord = [&](std::size_t node) {
    return mode == SinusoidalMode::Airfoil ? mesh.nodes[node].x : mesh.nodes[node].z;
  };
  for (std::size_t node : marker.nodes) {
    lo = std::min(lo, coord(node));
    hi = std::max(hi, coord(node));
  }
  const double extent = hi - lo;
  if (!(extent > 0.0)) {
    throw std::invalid_argument("marker '" + marker_name +
                                "' has no extent along the driving axis");
  }

  DisplacementField field;
  field.patch = marker_name;
  for (std::size_t node : marker.nodes) {
    const double t = (coord(node) - lo) / extent;
    const double dy = amplitude * std::sin(wavenumber * std::numbers::pi * t);
    field.entries[node] = Vec3{0.0, dy, 0.0};
  }
  return field;
}

std::vector<double> ice_horn_positions(const IceBumpParams& params) {
  std::vector<double> horns;
  horns.reserve(params.horns);
  for (std::size_t k = 0; k < params.horns; ++k) {
    const double offset = (static_cast<double>(k) -
                           0.5 * static_cast<double>(params.horns - 1)) *
                          3.0 * params.width;
    horns.push_back(params.center + offset);
  }
  return horns;
}

namespace {

struct BoundaryChain {
  // neighbors[i] lists the marker-local indices adjacent to marker node i.
  std::vector<std::vector<std::size_t>> neighbors;
  bool closed = false;
};

BoundaryChain chain_from_marker(const Marker& marker) {
  std::map<std::size_t, std::size_t> local;  // global node -> marker position
  for (std::size_t i = 0; i < marker.nodes.size(); ++i) local[marker.nodes[i]] = i;

  BoundaryChain chain;
  chain.neighbors.resize(marker.nodes.size());
  for (const auto& e : marker.elements) {
    if (e.kind != ElementKind::Line) {
      throw std::invalid_argument("arc positions require a line-element marker");
    }
    const std::size_t a = local.at(e.nodes[0]);
    const std::size_t b = local.at(e.nodes[1]);
    chain.neighbors[a].push_back(b);
    chain.neighbors[b].push_back(a);
  }
  std::size_t endpoints = 0;
  for (const auto& nb : chain.neighbors) {
    if (nb.size() > 2) {
      throw std::invalid_argument("marker polyline branches; arc length undefined");
    }
    if (nb.size() == 1) ++endpoints;
    if (nb.empty()) {
      throw std::invalid_argument("marker has an isolated node");
    }
  }
  chain.closed = endpoints == 0;
  if (!chain.closed && endpoints != 2) {
    throw std::invalid_argument("marker polyline is not a single chain");
  }
  return chain;
}

}  // namespace

std::vector<double> marker_arc_positions(const Mesh& mesh, const Marker& marker) {
  if (mesh.dim != 2) {
    throw std::invalid_argument("arc positions are defined for 2D markers only");
  }
  if (marker.nodes.size() < 2) {
    throw std::invalid_argument("marker too small for arc positions");
  }
  const BoundaryChain chain = chain_from_marker(marker);

  // Walk the chain accumulating length.
  std::size_t start = 0;
  if (!chain.closed) {
    for (std::size_t i = 0; i < chain.neighbors.size(); ++i) {
      if (chain.neighbors[i].size() == 1) {
        start = i;
        break;
      }
    }
  }
  std::vector<double> cumulative(marker.nodes.size(), 0.0);
  std::vector<char> visited(marker.nodes.size(), 0);
  std::size_t prev = start;
  std::size_t cur = start;
  visited[start] = 1;
  double length = 0.0;
  for (std::size_t step = 1; step < marker.nodes.size(); ++step) {
    std::size_t next = marker.nodes.size();
    for (std::size_t nb : chain.neighbors[cur]) {
      if (!visited[nb]) {
        next = nb;
        break;
      }
    }
    if (next == marker.nodes.size()) {
      throw std::invalid_argument("marker polyline is not a single chain");
    }
    length += distance(mesh.nodes[marker.nodes[cur]],
                       mesh.nodes[marker.nodes[next]]);
    cumulative[next] = length;
    visited[next] = 1;
    prev = cur;
    cur = next;
  }
  (void)prev;
  double perimeter = length;
  if (chain.closed) {
    perimeter += distance(mesh.nodes[marker.nodes[cur]],
                          mesh.nodes[marker.nodes[start]]);
  }

  // Zero at the leading edge: the minimum-x marker node, lowest index on ties.
  std::size_t le = 0;
  for (std::size_t i = 1; i < marker.nodes.size(); ++i) {
    if (mesh.nodes[marker.nodes[i]].x < mesh.nodes[marker.nodes[le]].x) le = i;
  }

  std::vector<double> arc(marker.nodes.size());
  for (std::size_t i = 0; i < marker.nodes.size(); ++i) {
    double s = cumulative[i] - cumulative[le];
    if (chain.closed && perimeter > 0.0) {
      s -= perimeter * std::floor(s / perimeter + 0.5);  // wrap to [-P/2, P/2)
    }
    arc[i] = s;
  }
  return arc;
}

DisplacementField gen_ice_bump(const Mesh& mesh, const std::string& marker_name,
                               const IceBumpParams& params) {
  const Marker& marker = mesh.marker(marker_name);
  if (mesh.dim != 2) {
    throw std::invalid_argument("ice bump generation supports 2D meshes");
  }
  if (!(params.width > 0.0)) throw std::invalid_argument("bump width must be positive");
  if (params.horns < 1) throw std::invalid_argument("at least one horn is required");

  const std::vector<double> arc = marker_arc_positions(mesh, marker);
  const std::vector<double> horns = ice_horn_positions(params);
  const BoundaryChain chain = chain_from_marker(marker);

  // Outward node normals from adjacent edge normals; the marker centroid
  // decides the outward side.
  Vec3 centroid;
  for (std::size_t node : marker.nodes) centroid += mesh.nodes[node];
  centroid *= 1.0 / static_cast<double>(marker.nodes.size());

  auto edge_normal = [&](std::size_t a, std::size_t b) {
    const Vec3 t = mesh.nodes[marker.nodes[b]] - mesh.nodes[marker.nodes[a]];
    Vec3 n = normalized(Vec3{t.y, -t.x, 0.0});
    const Vec3 mid = 0.5 * (mesh.nodes[marker.nodes[a]] + mesh.nodes[marker.nodes[b]]);
    if (dot(n, mid - centroid) < 0.0) n *= -1.0;
    return n;
  };

  DisplacementField field;
  field.patch = marker_name;
  for (std::size_t i = 0; i < marker.nodes.size(); ++i) {
    double nearest_horn = std::numeric_limits<double>::infinity();
    double magnitude = 0.0;
    for (double h : horns) {
      const double ds = arc[i] - h;
      nearest_horn = std::min(nearest_horn, std::abs(ds));
      magnitude += std::exp(-(ds * ds) / (params.width * params.width));
    }
    if (nearest_horn >= 5.0 * params.width) continue;  // exact zero outside
    magnitude *= params.height;
    if (magnitude == 0.0) continue;

    Vec3 normal;
    for (std::size_t nb : chain.neighbors[i]) normal += edge_normal(i, nb);
    normal = normalized(normal);
    field.entries[marker.nodes[i]] = normal * magnitude;
  }
  return field;
}

}  // namespace icemorph
