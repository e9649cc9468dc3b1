#include <cstddef>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icemorph/generators.hpp"
#include "icemorph/mesh_io.hpp"
#include "icemorph/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<std::size_t, std::size_t> parse_grid_counts(const std::string& text) {
  const auto parts = split_csv(text);
  if (parts.size() != 2) {
    throw UsageError("--gen-airfoil expects N,M (circumferential,radial)");
  }
  try {
    return {std::stoul(parts[0]), std::stoul(parts[1])};
  } catch (const std::exception&) {
    throw UsageError("--gen-airfoil expects two integers, got '" + text + "'");
  }
}

icemorph::IceBumpParams parse_ice_bump(const std::string& text) {
  icemorph::IceBumpParams params;
  if (text.empty()) return params;
  const auto parts = split_csv(text);
  if (parts.size() > 4) {
    throw UsageError("--ice-bump expects center[,height[,width[,horns]]]");
  }
  try {
    if (parts.size() > 0) params.center = std::stod(parts[0]);
    if (parts.size() > 1) params.height = std::stod(parts[1]);
    if (parts.size() > 2) params.width = std::stod(parts[2]);
    if (parts.size() > 3) params.horns = std::stoul(parts[3]);
  } catch (const std::exception&) {
    throw UsageError("bad --ice-bump value '" + text + "'");
  }
  return params;
}

void require_file(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    throw UsageError("file not found: " + path);
  }
}

double marker_reference_length(const icemorph::Mesh& mesh,
                               const icemorph::Marker& marker) {
  icemorph::Vec3 lo = mesh.nodes[marker.nodes.front()];
  icemorph::Vec3 hi = lo;
  for (std::size_t node : marker.nodes) {
    const auto& p = mesh.nodes[node];
    lo.x = std::min(lo.x, p.x); hi.x = std::max(hi.x, p.x);
    lo.y = std::min(lo.y, p.y); hi.y = std::max(hi.y, p.y);
    lo.z = std::min(lo.z, p.z); hi.z = std::max(hi.z, p.z);
  }
  return std::max({hi.x - lo.x, hi.y - lo.y, hi.z - lo.z});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "icemorph: radial basis function mesh deformation with greedy control "
      "point selection and wall-distance volume reduction"};

  std::string mesh_path, gen_airfoil, marker_name, deform_path;
  bool sin_airfoil = false, sin_wing = false;
  std::string ice_bump_spec;
  bool ice_bump = false;
  std::string basis_name = "c2";
  double radius_mult = 2.0;
  double eps = 0.1;
  std::size_t levels = 5;
  std::size_t cap = 5000;
  double volume_k = 5.0;
  std::string fixed_list;
  std::string out_path, report_path, summary_path;
  std::string format = "su2";
  bool quality_cells = false, no_quality = false;
  double chord = 1.0;
  std::optional<double> amplitude, wavenumber, ref_length;

  app.add_option("--mesh", mesh_path, "input mesh file (SU2 ASCII)");
  app.add_option("--gen-airfoil", gen_airfoil,
                 "generate a NACA0012 O-grid, N,M = circumferential,radial cells");
  app.add_option("--marker", marker_name,
                 "deforming boundary marker (default: airfoil for generated meshes)");
  app.add_option("--deform", deform_path,
                 "displacement file: lines `node dx dy [dz]`");
  app.add_flag("--sin-airfoil", sin_airfoil,
               "sinusoidal chordwise deformation dy = A sin(W pi x)");
  app.add_flag("--sin-wing", sin_wing,
               "sinusoidal spanwise deformation dy = A sin(W pi z), 3D only");
  auto* bump_opt =
      app.add_option("--ice-bump", ice_bump_spec,
                     "localized horn bumps: center[,height[,width[,horns]]]");
  bump_opt->expected(0, 1);
  app.add_option("--amp", amplitude, "sinusoidal amplitude override");
  app.add_option("--wave", wavenumber, "sinusoidal wavenumber override");
  app.add_option("--basis", basis_name, "basis function: c0, c2, c4 or c6")
      ->check(CLI::IsMember({"c0", "c2", "c4", "c6"}));
  app.add_option("--radius", radius_mult,
                 "support radius as a multiple of the reference length");
  app.add_option("--ref-length", ref_length,
                 "reference length (default: deforming marker extent)");
  app.add_option("--eps", eps, "greedy tolerance per level, in (0,1)");
  app.add_option("--levels", levels, "number of residual levels");
  app.add_option("--cap", cap, "max control points per level");
  app.add_option("--volume-k", volume_k, "volume reduction factor");
  app.add_option("--fixed", fixed_list, "comma-separated markers pinned at zero");
  app.add_option("--out", out_path, "deformed mesh output path");
  app.add_option("--format", format, "output mesh format")
      ->check(CLI::IsMember({"su2", "vtk"}));
  app.add_option("--report", report_path, "convergence history CSV path");
  app.add_option("--summary", summary_path, "key: value summary file path");
  app.add_flag("--quality", quality_cells,
               "export per-element orthogonality as VTK cell data");
  app.add_flag("--no-quality", no_quality, "skip mesh quality analysis");
  app.add_option("--chord", chord, "chord length for --gen-airfoil");

  if (argc <= 1) {
    std::cout << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  ice_bump = bump_opt->count() > 0;

  try {
    const bool have_mesh = !mesh_path.empty();
    const bool have_gen = !gen_airfoil.empty();
    if (have_mesh == have_gen) {
      throw UsageError("exactly one of --mesh or --gen-airfoil is required");
    }
    const int sources = int(!deform_path.empty()) + int(sin_airfoil) +
                        int(sin_wing) + int(ice_bump);
    if (sources != 1) {
      throw UsageError(
          "exactly one of --deform, --sin-airfoil, --sin-wing or --ice-bump "
          "is required");
    }

    icemorph::Mesh mesh;
    if (have_mesh) {
      require_file(mesh_path);
      mesh = icemorph::read_su2(mesh_path);
      if (marker_name.empty()) {
        throw UsageError("--marker is required with --mesh");
      }
    } else {
      const auto [circumferential, radial] = parse_grid_counts(gen_airfoil);
      mesh = icemorph::gen_airfoil_mesh(chord, circumferential, radial);
      if (marker_name.empty()) marker_name = "airfoil";
    }
    const icemorph::Marker& marker = mesh.marker(marker_name);

    icemorph::DisplacementField field;
    if (!deform_path.empty()) {
      require_file(deform_path);
      field = icemorph::read_displacements(deform_path, mesh, marker_name);
    } else if (sin_airfoil || sin_wing) {
      const auto mode = sin_airfoil ? icemorph::SinusoidalMode::Airfoil
                                    : icemorph::SinusoidalMode::Wing;
      const double a = amplitude.value_or(sin_airfoil
                                              ? icemorph::kSinAirfoilAmplitude
                                              : icemorph::kSinWingAmplitude);
      const double w = wavenumber.value_or(sin_airfoil
                                               ? icemorph::kSinAirfoilWavenumber
                                               : icemorph::kSinWingWavenumber);
      field = icemorph::gen_sinusoidal_displacement(mesh, marker_name, mode, a, w);
    } else {
      field = icemorph::gen_ice_bump(mesh, marker_name, parse_ice_bump(ice_bump_spec));
    }

    icemorph::DeformationConfig config;
    config.greedy.tolerance = eps;
    config.greedy.max_levels = levels;
    config.greedy.max_points_per_level = cap;
    config.greedy.basis.kind = icemorph::wendland_kind_from_string(basis_name);
    const double ref = ref_length.value_or(marker_reference_length(mesh, marker));
    if (!(ref > 0.0)) throw UsageError("reference length must be positive");
    config.greedy.basis.support_radius = radius_mult * ref;
    config.volume_k = volume_k;
    config.fixed_markers = split_csv(fixed_list);
    config.compute_quality = !no_quality;

    auto [deformed, report] = icemorph::deform(mesh, field, config);

    if (!out_path.empty()) {
      if (format == "su2") {
        icemorph::write_su2(deformed, out_path);
      } else {
        std::vector<icemorph::CellData> cells;
        if (quality_cells && report.quality_after) {
          cells.push_back({"orthogonality_deg",
                           report.quality_after->element_orthogonality_deg});
          cells.push_back({"signed_measure",
                           report.quality_after->element_signed_measure});
        }
        icemorph::write_vtk(deformed, out_path, cells);
      }
    }
    if (!report_path.empty()) icemorph::write_convergence_csv(report, report_path);
    if (!summary_path.empty()) icemorph::write_summary(report, summary_path);
    icemorph::write_summary(report, std::cout);
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
