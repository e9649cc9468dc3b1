#include "icemorph/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <unordered_set>

namespace icemorph {

std::size_t DeformationReport::total_control_points() const {
  std::size_t total = 0;
  for (const auto& l : levels) total += l.points;
  return total;
}

std::pair<Mesh, DeformationReport> deform(const Mesh& mesh,
                                          const DisplacementField& displacement,
                                          const DeformationConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const Marker& marker = mesh.marker(displacement.patch);
  if (marker.nodes.empty()) {
    throw std::invalid_argument("marker '" + displacement.patch + "' has no nodes");
  }

  DeformationReport report;
  report.marker = displacement.patch;

  // Surface system: the deforming patch first (its first node seeds the
  // greedy pass), then any pinned markers as zero-displacement constraints.
  std::vector<std::size_t> surface_nodes = marker.nodes;
  std::unordered_set<std::size_t> used(surface_nodes.begin(), surface_nodes.end());
  std::unordered_set<std::size_t> pinned;
  for (const auto& name : config.fixed_markers) {
    for (std::size_t node : mesh.marker(name).nodes) {
      pinned.insert(node);
      if (used.insert(node).second) surface_nodes.push_back(node);
    }
  }

  std::vector<Vec3> positions;
  std::vector<Vec3> target;
  positions.reserve(surface_nodes.size());
  target.reserve(surface_nodes.size());
  for (std::size_t node : surface_nodes) {
    positions.push_back(mesh.nodes[node]);
    const bool is_pinned = pinned.count(node) > 0;
    target.push_back(is_pinned ? Vec3{} : displacement.at(node));
  }

  if (config.compute_quality) report.quality_before = orthogonality(mesh);

  MultilevelResult ml = run_multilevel(positions, target, config.greedy);
  report.target_max = ml.target_max;

  // Wall distances are measured once, in the undeformed configuration.
  const DistanceIndex index = build_distance_index(mesh, marker.nodes);

  Mesh deformed = mesh;
  for (std::size_t l = 0; l < ml.levels.size(); ++l) {
    const RbfLevel& level = ml.levels[l];
    const WallFunction wf = make_wall_function(config.volume_k, level.target_max);
    const VolumeUpdate update =
        update_volume(mesh, level, index, wf, config.greedy.basis);

    for (const auto& [node, delta] : update.entries) {
      if (pinned.count(node)) continue;  // fixed markers never move
      deformed.nodes[node] += delta;
    }

    LevelSummary summary;
    summary.level = level.level;
    summary.points = level.control_indices.size();
    summary.achieved_error = level.achieved_error;
    summary.cap_hit = level.cap_hit;
    summary.support_distance = wf.support_distance;
    summary.touched_nodes = update.entries.size();
    summary.seconds = level.elapsed_seconds;
    summary.record = std::move(ml.records[l]);
    report.levels.push_back(std::move(summary));
  }

  // Surface accuracy measured on what actually moved.
  double max_err = 0.0, sum_err = 0.0;
  for (std::size_t node : marker.nodes) {
    const Vec3 moved = deformed.nodes[node] - mesh.nodes[node];
    const double err = (displacement.at(node) - moved).norm();
    max_err = std::max(max_err, err);
    sum_err += err;
  }
  if (report.target_max > 0.0) {
    report.surface_max_error = max_err / report.target_max;
    report.surface_mean_error =
        sum_err / (report.target_max * static_cast<double>(marker.nodes.size()));
  }

  report.inverted_elements = count_inverted(deformed);
  if (config.compute_quality) report.quality_after = orthogonality(deformed);
  report.total_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return {std::move(deformed), std::move(report)};
}

void write_summary(const DeformationReport& report, std::ostream& out) {
  out << std::setprecision(17);
  out << "marker: " << report.marker << "\n";
  out << "levels: " << report.levels.size() << "\n";
  out << "total_control_points: " << report.total_control_points() << "\n";
  out << "target_max: " << report.target_max << "\n";
  out << "surface_max_error: " << report.surface_max_error << "\n";
  out << "surface_mean_error: " << report.surface_mean_error << "\n";
  out << "inverted_elements: " << report.inverted_elements << "\n";
  if (report.quality_before) {
    out << "min_orthogonality_before_deg: "
        << report.quality_before->min_orthogonality_deg << "\n";
    out << "mean_orthogonality_before_deg: "
        << report.quality_before->mean_orthogonality_deg << "\n";
  }
  if (report.quality_after) {
    out << "min_orthogonality_after_deg: "
        << report.quality_after->min_orthogonality_deg << "\n";
    out << "mean_orthogonality_after_deg: "
        << report.quality_after->mean_orthogonality_deg << "\n";
  }
  out << "total_seconds: " << std::setprecision(6) << report.total_seconds
      << std::setprecision(17) << "\n";
  for (const auto& l : report.levels) {
    const std::string p = "level_" + std::to_string(l.level) + "_";
    out << p << "points: " << l.points << "\n";
    out << p << "error: " << l.achieved_error << "\n";
    out << p << "cap_hit: " << (l.cap_hit ? 1 : 0) << "\n";
    out << p << "support_distance: " << l.support_distance << "\n";
    out << p << "touched_nodes: " << l.touched_nodes << "\n";
    out << p << "seconds: " << std::setprecision(6) << l.seconds
        << std::setprecision(17) << "\n";
  }
}

void write_summary(const DeformationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary file '" + path + "'");
  write_summary(report, out);
}

void write_convergence_csv(const DeformationReport& report, std::ostream& out) {
  write_convergence_csv_header(out);
  for (const auto& l : report.levels) {
    append_convergence_csv(out, l.level, l.record);
  }
}

void write_convergence_csv(const DeformationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report file '" + path + "'");
  write_convergence_csv(report, out);
}

}  // namespace icemorph
