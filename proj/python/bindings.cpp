#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

#include "icemorph/generators.hpp"
#include "icemorph/mesh_io.hpp"
#include "icemorph/pipeline.hpp"
#include "icemorph/quality.hpp"
#include "icemorph/rbf.hpp"
#include "icemorph/wall_distance.hpp"

namespace py = pybind11;
using namespace icemorph;

namespace {

std::array<double, 3> to_array(const Vec3& v) { return {v.x, v.y, v.z}; }

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

std::vector<Vec3> to_vecs(const std::vector<std::array<double, 3>>& points) {
  std::vector<Vec3> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(to_vec(p));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radial basis function mesh deformation with greedy control point "
            "selection and wall-distance volume reduction";

  py::class_<Mesh>(m, "Mesh")
      .def_readonly("dim", &Mesh::dim)
      .def_property_readonly("num_nodes", &Mesh::node_count)
      .def_property_readonly(
          "num_elements",
          [](const Mesh& mesh) { return mesh.elements.size(); })
      .def("node",
           [](const Mesh& mesh, std::size_t i) {
             if (i >= mesh.nodes.size()) throw py::index_error();
             return to_array(mesh.nodes[i]);
           })
      .def("nodes",
           [](const Mesh& mesh) {
             std::vector<std::array<double, 3>> out;
             out.reserve(mesh.nodes.size());
             for (const auto& p : mesh.nodes) out.push_back(to_array(p));
             return out;
           })
      .def("marker_names",
           [](const Mesh& mesh) {
             std::vector<std::string> names;
             for (const auto& marker : mesh.markers) names.push_back(marker.name);
             return names;
           })
      .def("marker_nodes",
           [](const Mesh& mesh, const std::string& name) {
             return mesh.marker(name).nodes;
           });

  py::class_<DisplacementField>(m, "DisplacementField")
      .def(py::init([](const std::string& patch) {
             DisplacementField f;
             f.patch = patch;
             return f;
           }),
           py::arg("patch"))
      .def_readonly("patch", &DisplacementField::patch)
      .def("set",
           [](DisplacementField& f, std::size_t node, double dx, double dy,
              double dz) { f.entries[node] = Vec3{dx, dy, dz}; },
           py::arg("node"), py::arg("dx"), py::arg("dy"), py::arg("dz") = 0.0)
      .def("entries",
           [](const DisplacementField& f) {
             std::map<std::size_t, std::array<double, 3>> out;
             for (const auto& [node, d] : f.entries) out[node] = to_array(d);
             return out;
           })
      .def("max_magnitude", &DisplacementField::max_magnitude);

  py::class_<DeformationConfig>(m, "DeformationConfig")
      .def(py::init<>())
      .def_property(
          "basis",
          [](const DeformationConfig& c) {
            return std::string(wendland_kind_name(c.greedy.basis.kind));
          },
          [](DeformationConfig& c, const std::string& name) {
            c.greedy.basis.kind = wendland_kind_from_string(name);
          })
      .def_property(
          "support_radius",
          [](const DeformationConfig& c) { return c.greedy.basis.support_radius; },
          [](DeformationConfig& c, double r) { c.greedy.basis.support_radius = r; })
      .def_property(
          "tolerance",
          [](const DeformationConfig& c) { return c.greedy.tolerance; },
          [](DeformationConfig& c, double eps) { c.greedy.tolerance = eps; })
      .def_property(
          "levels",
          [](const DeformationConfig& c) { return c.greedy.max_levels; },
          [](DeformationConfig& c, std::size_t n) { c.greedy.max_levels = n; })
      .def_property(
          "max_points_per_level",
          [](const DeformationConfig& c) { return c.greedy.max_points_per_level; },
          [](DeformationConfig& c, std::size_t n) {
            c.greedy.max_points_per_level = n;
          })
      .def_readwrite("volume_k", &DeformationConfig::volume_k)
      .def_readwrite("fixed_markers", &DeformationConfig::fixed_markers)
      .def_readwrite("compute_quality", &DeformationConfig::compute_quality);

  py::class_<LevelSummary>(m, "LevelSummary")
      .def_readonly("level", &LevelSummary::level)
      .def_readonly("points", &LevelSummary::points)
      .def_readonly("achieved_error", &LevelSummary::achieved_error)
      .def_readonly("cap_hit", &LevelSummary::cap_hit)
      .def_readonly("support_distance", &LevelSummary::support_distance)
      .def_readonly("touched_nodes", &LevelSummary::touched_nodes)
      .def_readonly("seconds", &LevelSummary::seconds);

  py::class_<QualityReport>(m, "QualityReport")
      .def_readonly("min_orthogonality_deg", &QualityReport::min_orthogonality_deg)
      .def_readonly("mean_orthogonality_deg", &QualityReport::mean_orthogonality_deg)
      .def_readonly("inverted_count", &QualityReport::inverted_count)
      .def_readonly("element_orthogonality_deg",
                    &QualityReport::element_orthogonality_deg)
      .def_readonly("element_signed_measure", &QualityReport::element_signed_measure);

  py::class_<DeformationReport>(m, "DeformationReport")
      .def_readonly("marker", &DeformationReport::marker)
      .def_readonly("levels", &DeformationReport::levels)
      .def_readonly("target_max", &DeformationReport::target_max)
      .def_readonly("surface_max_error", &DeformationReport::surface_max_error)
      .def_readonly("surface_mean_error", &DeformationReport::surface_mean_error)
      .def_readonly("inverted_elements", &DeformationReport::inverted_elements)
      .def_readonly("quality_before", &DeformationReport::quality_before)
      .def_readonly("quality_after", &DeformationReport::quality_after)
      .def_readonly("total_seconds", &DeformationReport::total_seconds)
      .def_property_readonly("total_control_points",
                             &DeformationReport::total_control_points);

  m.def("read_su2",
        static_cast<Mesh (*)(const std::string&)>(&read_su2),
        py::arg("path"));
  m.def("write_su2",
        static_cast<void (*)(const Mesh&, const std::string&)>(&write_su2),
        py::arg("mesh"), py::arg("path"));
  m.def("write_vtk",
        [](const Mesh& mesh, const std::string& path) { write_vtk(mesh, path); },
        py::arg("mesh"), py::arg("path"));
  m.def("read_displacements",
        static_cast<DisplacementField (*)(const std::string&, const Mesh&,
                                          const std::string&)>(&read_displacements),
        py::arg("path"), py::arg("mesh"), py::arg("marker"));
  m.def("write_displacements", &write_displacements, py::arg("field"),
        py::arg("dim"), py::arg("path"));

  m.def("gen_airfoil_mesh", &gen_airfoil_mesh, py::arg("chord"),
        py::arg("circumferential"), py::arg("radial_layers"));
  m.def("gen_sinusoidal_displacement",
        [](const Mesh& mesh, const std::string& marker, const std::string& mode,
           double amplitude, double wavenumber) {
          SinusoidalMode m_;
          if (mode == "airfoil") {
            m_ = SinusoidalMode::Airfoil;
          } else if (mode == "wing") {
            m_ = SinusoidalMode::Wing;
          } else {
            throw std::invalid_argument("mode must be 'airfoil' or 'wing'");
          }
          return gen_sinusoidal_displacement(mesh, marker, m_, amplitude, wavenumber);
        },
        py::arg("mesh"), py::arg("marker"), py::arg("mode") = "airfoil",
        py::arg("amplitude") = kSinAirfoilAmplitude,
        py::arg("wavenumber") = kSinAirfoilWavenumber);
  m.def("gen_ice_bump",
        [](const Mesh& mesh, const std::string& marker, double center,
           double height, double width, std::size_t horns) {
          return gen_ice_bump(mesh, marker, IceBumpParams{center, height, width, horns});
        },
        py::arg("mesh"), py::arg("marker"), py::arg("center") = 0.0,
        py::arg("height") = 0.02, py::arg("width") = 0.05, py::arg("horns") = 2);

  m.def("deform", &deform, py::arg("mesh"), py::arg("displacement"),
        py::arg("config"),
        "Returns (deformed_mesh, report); the input mesh is left unchanged.");
  m.def("orthogonality", &orthogonality, py::arg("mesh"));
  m.def("signed_measures",
        static_cast<std::vector<double> (*)(const Mesh&)>(&signed_measures),
        py::arg("mesh"));

  m.def("eval_basis",
        [](const std::string& kind, double support_radius, double distance) {
          return eval_basis({wendland_kind_from_string(kind), support_radius},
                            distance);
        },
        py::arg("kind"), py::arg("support_radius"), py::arg("distance"));
  m.def("solve_weights",
        [](const std::vector<std::array<double, 3>>& points,
           const std::vector<std::array<double, 3>>& displacements,
           const std::string& kind, double support_radius) {
          const auto pts = to_vecs(points);
          const auto disp = to_vecs(displacements);
          const WeightSet w = solve_weights(
              pts, disp, {wendland_kind_from_string(kind), support_radius});
          std::vector<std::array<double, 3>> alpha;
          alpha.reserve(w.alpha.size());
          for (const auto& a : w.alpha) alpha.push_back(to_array(a));
          return alpha;
        },
        py::arg("points"), py::arg("displacements"), py::arg("kind") = "c2",
        py::arg("support_radius") = 1.0);
  m.def("eval_interpolant",
        [](const std::vector<std::array<double, 3>>& points,
           const std::vector<std::array<double, 3>>& alpha,
           const std::string& kind, double support_radius,
           const std::array<double, 3>& query) {
          WeightSet w;
          w.control_positions = to_vecs(points);
          w.alpha = to_vecs(alpha);
          return to_array(eval_interpolant(
              w, {wendland_kind_from_string(kind), support_radius}, to_vec(query)));
        },
        py::arg("points"), py::arg("alpha"), py::arg("kind"),
        py::arg("support_radius"), py::arg("query"));

  m.def("write_summary",
        static_cast<void (*)(const DeformationReport&, const std::string&)>(
            &write_summary),
        py::arg("report"), py::arg("path"));
  m.def("write_convergence_csv",
        static_cast<void (*)(const DeformationReport&, const std::string&)>(
            &write_convergence_csv),
        py::arg("report"), py::arg("path"));
}
