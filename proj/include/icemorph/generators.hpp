#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "icemorph/mesh.hpp"
#include "icemorph/mesh_io.hpp"

namespace icemorph {

/// Structured O-grid of quadrilaterals around a NACA0012 profile (closed
/// trailing edge), far-field ring at 25 chords. Markers: "airfoil" on the
/// profile, "farfield" on the outer ring. `circumferential` must be even and
/// both counts >= 8. Produces circumferential*(radial_layers+1) nodes.
Mesh gen_airfoil_mesh(double chord, std::size_t circumferential,
                      std::size_t radial_layers);

// NACA0012 half-thickness at x/c in [0,1], closed trailing edge.
double naca0012_half_thickness(double x_over_c, double chord);

enum class SinusoidalMode { Airfoil, Wing };

/// Vertical displacement dy = amplitude * sin(wavenumber * pi * t) where t is
/// the marker-relative chordwise (airfoil) or spanwise (wing) coordinate,
/// normalized to [0,1] over the marker extent. Defaults: airfoil amplitude
/// 0.01 wavenumber 15, wing amplitude 0.03 wavenumber 4.
DisplacementField gen_sinusoidal_displacement(const Mesh& mesh,
                                              const std::string& marker,
                                              SinusoidalMode mode,
                                              double amplitude,
                                              double wavenumber);

constexpr double kSinAirfoilAmplitude = 0.01;
constexpr double kSinAirfoilWavenumber = 15.0;
constexpr double kSinWingAmplitude = 0.03;
constexpr double kSinWingWavenumber = 4.0;

struct IceBumpParams {
  double center = 0.0;   // arc position of the bump group, 0 = leading edge
  double height = 0.02;  // peak normal displacement
  double width = 0.05;   // Gaussian width of each horn
  std::size_t horns = 2;
};

/// Localized surface-normal bumps: height * sum over horns of
/// exp(-((s - s_horn)/width)^2), cut to exactly zero beyond 5*width of every
/// horn. `s` is the arc length along the marker measured from the leading
/// edge (the minimum-x marker node). 2D markers only.
DisplacementField gen_ice_bump(const Mesh& mesh, const std::string& marker,
                               const IceBumpParams& params);

// Horn centers used by gen_ice_bump: spaced 3*width apart around `center`.
std::vector<double> ice_horn_positions(const IceBumpParams& params);

// Signed arc position of every marker node along the boundary polyline,
// zero at the leading edge. Order matches marker.nodes.
std::vector<double> marker_arc_positions(const Mesh& mesh, const Marker& marker);

}  // namespace icemorph
