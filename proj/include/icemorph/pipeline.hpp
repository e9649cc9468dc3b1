#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icemorph/greedy.hpp"
#include "icemorph/mesh.hpp"
#include "icemorph/mesh_io.hpp"
#include "icemorph/quality.hpp"
#include "icemorph/wall_distance.hpp"

namespace icemorph {

struct DeformationConfig {
  GreedyConfig greedy;                     // tolerance, levels, cap, basis
  double volume_k = 5.0;                   // support distance factor
  std::vector<std::string> fixed_markers;  // pinned at exactly zero motion
  bool compute_quality = true;
};

struct LevelSummary {
  std::size_t level = 0;
  std::size_t points = 0;
  double achieved_error = 0.0;
  bool cap_hit = false;
  double support_distance = 0.0;
  std::size_t touched_nodes = 0;
  double seconds = 0.0;
  ConvergenceRecord record;
};

struct DeformationReport {
  std::string marker;
  std::vector<LevelSummary> levels;
  double target_max = 0.0;           // max prescribed surface displacement
  double surface_max_error = 0.0;    // normalized by target_max
  double surface_mean_error = 0.0;
  std::size_t inverted_elements = 0;
  std::optional<QualityReport> quality_before;
  std::optional<QualityReport> quality_after;
  double total_seconds = 0.0;

  std::size_t total_control_points() const;
};

/// Full deformation: greedy residual levels on the surface data, a tapered
/// volume update per level, and accumulation into a new mesh. The input mesh
/// is not modified. Fixed markers are constrained to zero displacement in
/// every level's surface system and never move.
std::pair<Mesh, DeformationReport> deform(const Mesh& mesh,
                                          const DisplacementField& displacement,
                                          const DeformationConfig& config);

void write_summary(const DeformationReport& report, std::ostream& out);
void write_summary(const DeformationReport& report, const std::string& path);

void write_convergence_csv(const DeformationReport& report, std::ostream& out);
void write_convergence_csv(const DeformationReport& report, const std::string& path);

}  // namespace icemorph
