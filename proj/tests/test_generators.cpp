#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "icemorph/generators.hpp"
#include "icemorph/quality.hpp"
#include "oracles.hpp"

using namespace icemorph;

TEST_CASE("airfoil grid construction arithmetic") {
  const Mesh mesh = gen_airfoil_mesh(1.0, 64, 32);
  CHECK(mesh.node_count() == 64 * 33);
  CHECK(mesh.elements.size() == 64 * 32);
  REQUIRE(mesh.markers.size() == 2);
  CHECK(mesh.marker("airfoil").nodes.size() == 64);
  CHECK(mesh.marker("farfield").nodes.size() == 64);
  // The profile ring comes first and in order; the seed is the trailing edge.
  for (std::size_t j = 0; j < 64; ++j) CHECK(mesh.marker("airfoil").nodes[j] == j);
  CHECK(mesh.nodes[0] == Vec3{1.0, 0.0, 0.0});
  CHECK_NOTHROW(validate_mesh(mesh));
}

TEST_CASE("profile thickness stays within the analytic bound") {
  const double chord = 0.7;
  const Mesh mesh = gen_airfoil_mesh(chord, 128, 8);
  double max_y = 0.0;
  for (std::size_t node : mesh.marker("airfoil").nodes) {
    CHECK(std::abs(mesh.nodes[node].y) <= 0.0601 * chord);
    max_y = std::max(max_y, std::abs(mesh.nodes[node].y));
  }
  // Brute-force scan of the thickness polynomial.
  double analytic_max = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    analytic_max = std::max(analytic_max,
                            naca0012_half_thickness(i / 100000.0, chord));
  }
  CHECK(analytic_max <= 0.0601 * chord);
  CHECK(max_y <= analytic_max + 1e-12);
}

TEST_CASE("generated cells are positively oriented") {
  const Mesh mesh = gen_airfoil_mesh(1.0, 96, 12);
  for (double m : signed_measures(mesh)) CHECK(m > 0.0);
}

TEST_CASE("far-field ring sits at 25 chords") {
  const double chord = 2.0;
  const Mesh mesh = gen_airfoil_mesh(chord, 64, 8);
  const Vec3 center{0.5 * chord, 0.0, 0.0};
  for (std::size_t node : mesh.marker("farfield").nodes) {
    CHECK(distance(mesh.nodes[node], center) ==
          doctest::Approx(25.0 * chord).epsilon(1e-12));
  }
}

TEST_CASE("generator rejects degenerate counts") {
  CHECK_THROWS_AS(gen_airfoil_mesh(1.0, 6, 32), std::invalid_argument);
  CHECK_THROWS_AS(gen_airfoil_mesh(1.0, 64, 4), std::invalid_argument);
  CHECK_THROWS_AS(gen_airfoil_mesh(1.0, 65, 8), std::invalid_argument);
  CHECK_THROWS_AS(gen_airfoil_mesh(0.0, 64, 8), std::invalid_argument);
}

TEST_CASE("chordwise sinusoid hits the printed values") {
  // Straight marker with known normalized positions, including the extremes.
  Mesh mesh;
  mesh.dim = 2;
  mesh.nodes = {{0.0, 0.0}, {0.1, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {0.5, 5.0}};
  Marker wall;
  wall.name = "wall";
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    Element line;
    line.kind = ElementKind::Line;
    line.nodes = {i, i + 1};
    wall.elements.push_back(line);
  }
  wall.nodes = marker_nodes_from_elements(wall.elements);
  mesh.markers.push_back(wall);

  const DisplacementField field = gen_sinusoidal_displacement(
      mesh, "wall", SinusoidalMode::Airfoil, 0.01, 15.0);
  CHECK(field.at(0).y == 0.0);
  CHECK(field.at(1).y == doctest::Approx(-0.01).epsilon(1e-12));  // sin(1.5 pi)
  CHECK(field.at(2).y == doctest::Approx(0.01 * std::sin(7.5 * std::numbers::pi))
                             .epsilon(1e-12));
  CHECK(field.at(0).x == 0.0);
}

TEST_CASE("spanwise sinusoid needs a 3D mesh and hits the printed values") {
  const Mesh flat = testing::make_quad_grid(4, 4);
  CHECK_THROWS_AS(gen_sinusoidal_displacement(flat, "wall", SinusoidalMode::Wing,
                                              0.03, 4.0),
                  std::invalid_argument);

  const Mesh box = testing::make_box_grid(4, 4, 8, 1.0, 1.0, 1.0);
  const DisplacementField field =
      gen_sinusoidal_displacement(box, "wall", SinusoidalMode::Wing, 0.03, 4.0);
  // z/b = 0.125 -> dy = 0.03 sin(pi/2) = 0.03.
  bool checked = false;
  for (std::size_t node : box.marker("wall").nodes) {
    if (box.nodes[node].z == 0.125) {
      CHECK(field.at(node).y == doctest::Approx(0.03).epsilon(1e-12));
      checked = true;
    }
    if (box.nodes[node].z == 0.0) CHECK(field.at(node).y == 0.0);
  }
  CHECK(checked);
}

TEST_CASE("ice bump: zero height, peak value and cutoff") {
  const Mesh mesh = gen_airfoil_mesh(1.0, 256, 8);

  IceBumpParams zero;
  zero.height = 0.0;
  const DisplacementField none = gen_ice_bump(mesh, "airfoil", zero);
  CHECK(none.max_magnitude() == 0.0);

  IceBumpParams single;
  single.center = 0.0;
  single.height = 0.03;
  single.width = 0.05;
  single.horns = 1;
  const DisplacementField field = gen_ice_bump(mesh, "airfoil", single);
  const auto arc = marker_arc_positions(mesh, mesh.marker("airfoil"));

  // The leading-edge node sits at arc position zero: full bump height there.
  const auto& nodes = mesh.marker("airfoil").nodes;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (arc[i] == 0.0) {
      CHECK(field.at(nodes[i]).norm() == doctest::Approx(0.03).epsilon(1e-12));
    }
    if (std::abs(arc[i]) >= 5.0 * single.width) {
      CHECK(field.at(nodes[i]) == Vec3{});
    }
  }
}

TEST_CASE("ice bump maxima land on the horn centers") {
  const Mesh mesh = gen_airfoil_mesh(1.0, 512, 8);
  IceBumpParams params;
  params.center = 0.05;
  params.height = 0.02;
  params.width = 0.04;
  params.horns = 2;
  const DisplacementField field = gen_ice_bump(mesh, "airfoil", params);
  const auto arc = marker_arc_positions(mesh, mesh.marker("airfoil"));
  const auto horns = ice_horn_positions(params);
  REQUIRE(horns.size() == 2);
  CHECK(horns[0] == doctest::Approx(params.center - 1.5 * params.width));
  CHECK(horns[1] == doctest::Approx(params.center + 1.5 * params.width));

  const auto& nodes = mesh.marker("airfoil").nodes;
  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double m = field.at(nodes[i]).norm();
    if (m > best) {
      best = m;
      best_i = i;
    }
  }
  // The max lies within one node spacing of a horn center.
  const double spacing = 2.1 * arc.size() > 0
                             ? 2.2 * (std::abs(arc[1] - arc[0]) + 0.01)
                             : 0.05;
  const double to_horn = std::min(std::abs(arc[best_i] - horns[0]),
                                  std::abs(arc[best_i] - horns[1]));
  CHECK(to_horn < spacing);
}

TEST_CASE("ice bump rejects 3D meshes") {
  const Mesh box = testing::make_box_grid(3, 3, 3);
  CHECK_THROWS_AS(gen_ice_bump(box, "wall", IceBumpParams{}),
                  std::invalid_argument);
}

TEST_CASE("arc positions: zero at the leading edge, bounded by the perimeter") {
  const Mesh mesh = gen_airfoil_mesh(1.0, 128, 8);
  const auto arc = marker_arc_positions(mesh, mesh.marker("airfoil"));
  double perimeter = 0.0;
  const auto& nodes = mesh.marker("airfoil").nodes;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    perimeter += distance(mesh.nodes[nodes[j]],
                          mesh.nodes[nodes[(j + 1) % nodes.size()]]);
  }
  bool saw_zero = false;
  for (double s : arc) {
    CHECK(std::abs(s) <= 0.5 * perimeter + 1e-12);
    if (s == 0.0) saw_zero = true;
  }
  CHECK(saw_zero);
}
