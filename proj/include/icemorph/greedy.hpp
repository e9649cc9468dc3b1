#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "icemorph/rbf.hpp"

namespace icemorph {

struct GreedyConfig {
  double tolerance = 0.1;               // per-level normalized error target, in (0,1)
  std::size_t max_levels = 5;
  std::size_t max_points_per_level = 5000;
  BasisFunction basis;
};

struct ConvergenceSample {
  std::size_t points = 0;  // control points selected so far
  double error = 0.0;      // max normalized residual with those points
  double seconds = 0.0;    // cumulative wall time within the level
};

struct ConvergenceRecord {
  std::vector<ConvergenceSample> samples;
};

// One residual level: the selected control subset and its weights.
struct RbfLevel {
  std::size_t level = 0;
  std::vector<std::size_t> control_indices;  // positions into the surface array
  WeightSet weights;
  double achieved_error = 0.0;  // max normalized residual at exit
  bool cap_hit = false;
  double target_max = 0.0;      // max |target| of this level's data
  double elapsed_seconds = 0.0;
};

struct LevelResult {
  RbfLevel level;
  ConvergenceRecord record;
  std::vector<Vec3> residual;  // target minus interpolant, per surface node
};

/// Error-driven control point selection. Seeds with the first surface node,
/// then repeatedly solves on the current control set, evaluates the residual
/// at every surface node, and inserts the node with the largest residual
/// magnitude (ties broken by lowest index) until the residual normalized by
/// the level's own max target drops below the tolerance or the cap is hit.
LevelResult greedy_level(std::span<const Vec3> surface_positions,
                         std::span<const Vec3> target,
                         const GreedyConfig& config,
                         std::size_t level_index = 0);

struct MultilevelResult {
  std::vector<RbfLevel> levels;
  std::vector<ConvergenceRecord> records;
  std::vector<Vec3> final_residual;
  double target_max = 0.0;  // max |target| of the original data
};

/// Runs up to max_levels greedy passes, each interpolating the previous
/// level's residual. Stops early when a level's entry residual is already
/// below tolerance^max_levels of the original data (or exactly zero).
MultilevelResult run_multilevel(std::span<const Vec3> surface_positions,
                                std::span<const Vec3> target,
                                const GreedyConfig& config);

/// CSV rows `level,points,error,seconds`, one row per insertion.
void write_convergence_csv_header(std::ostream& out);
void append_convergence_csv(std::ostream& out, std::size_t level,
                            const ConvergenceRecord& record);

}  // namespace icemorph
