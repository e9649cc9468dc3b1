#include "icemorph/greedy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace icemorph {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_config(const GreedyConfig& config) {
  if (!(config.tolerance > 0.0 && config.tolerance < 1.0)) {
    throw std::invalid_argument("greedy tolerance must lie in (0,1)");
  }
  if (config.max_levels < 1) {
    throw std::invalid_argument("at least one level is required");
  }
  if (config.max_points_per_level < 1) {
    throw std::invalid_argument("per-level point cap must be positive");
  }
  if (!(config.basis.support_radius > 0.0)) {
    throw std::invalid_argument("basis support radius must be positive");
  }
}

double max_magnitude(std::span<const Vec3> values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, v.norm());
  return m;
}

[[noreturn]] void rethrow_conditioning_nodes(std::span<const Vec3> positions,
                                             const std::vector<std::size_t>& controls,
                                             std::size_t failed_node) {
  std::size_t nearest = failed_node;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c : controls) {
    const double d = distance(positions[c], positions[failed_node]);
    if (d < best) {
      best = d;
      nearest = c;
    }
  }
  throw SolveError("ill-conditioned control set: surface nodes " +
                   std::to_string(nearest) + " and " + std::to_string(failed_node) +
                   " are too close (distance " + std::to_string(best) + ")");
}

}  // namespace

LevelResult greedy_level(std::span<const Vec3> surface_positions,
                         std::span<const Vec3> target,
                         const GreedyConfig& config,
                         std::size_t level_index) {
  check_config(config);
  const std::size_t n_s = surface_positions.size();
  if (n_s == 0) throw std::invalid_argument("surface point set is empty");
  if (target.size() != n_s) {
    throw std::invalid_argument("target size does not match surface size");
  }
  for (const auto& t : target) {
    if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.z)) {
      throw std::invalid_argument("target displacement is not finite");
    }
  }

  const auto start = Clock::now();
  const double target_max = max_magnitude(target);
  const std::size_t cap = std::min(config.max_points_per_level, n_s);

  std::vector<std::size_t> controls;
  std::vector<char> selected(n_s, 0);
  std::vector<Vec3> alpha;
  CholeskyFactor factor;
  std::vector<double> column, rhs, sol;

  auto insert_control = [&](std::size_t node) {
    column.resize(controls.size() + 1);
    for (std::size_t m = 0; m < controls.size(); ++m) {
      column[m] = eval_basis(config.basis,
                             distance(surface_positions[controls[m]],
                                      surface_positions[node]));
    }
    column[controls.size()] = 1.0;
    try {
      factor.append(column);
    } catch (const SolveError&) {
      rethrow_conditioning_nodes(surface_positions, controls, node);
    }
    controls.push_back(node);
    selected[node] = 1;
    // Re-solve every axis against the grown factorization.
    const std::size_t n_c = controls.size();
    rhs.resize(n_c);
    sol.resize(n_c);
    alpha.assign(n_c, Vec3{});
    double Vec3::* axes[3] = {&Vec3::x, &Vec3::y, &Vec3::z};
    for (auto axis : axes) {
      for (std::size_t m = 0; m < n_c; ++m) rhs[m] = target[controls[m]].*axis;
      factor.solve(rhs, sol);
      for (std::size_t m = 0; m < n_c; ++m) alpha[m].*axis = sol[m];
    }
  };

  // The first control point is the first node on the surface list.
  insert_control(0);

  ConvergenceRecord record;
  std::vector<Vec3> residual(n_s);
  double achieved = 0.0;
  bool cap_hit = false;

  for (;;) {
    // Residual over every surface node with the current weights.
    double max_norm = -1.0;
    std::size_t argmax = n_s;
    for (std::size_t i = 0; i < n_s; ++i) {
      Vec3 f;
      for (std::size_t m = 0; m < controls.size(); ++m) {
        const double phi = eval_basis(
            config.basis, distance(surface_positions[i],
                                   surface_positions[controls[m]]));
        if (phi != 0.0) f += alpha[m] * phi;
      }
      residual[i] = target[i] - f;
      const double norm = residual[i].norm();
      if (!selected[i] && norm > max_norm) {
        max_norm = norm;
        argmax = i;
      }
    }
    double overall = 0.0;
    for (const auto& e : residual) overall = std::max(overall, e.norm());
    achieved = target_max > 0.0 ? overall / target_max : 0.0;
    record.samples.push_back({controls.size(), achieved, seconds_since(start)});

    if (achieved < config.tolerance) break;
    if (controls.size() >= cap || argmax == n_s) {
      // Tolerance not met and no way to add points: record that.
      cap_hit = true;
      break;
    }
    insert_control(argmax);
  }

  LevelResult result;
  result.level.level = level_index;
  result.level.control_indices = std::move(controls);
  result.level.weights.control_positions.reserve(result.level.control_indices.size());
  for (std::size_t c : result.level.control_indices) {
    result.level.weights.control_positions.push_back(surface_positions[c]);
  }
  result.level.weights.alpha = std::move(alpha);
  result.level.achieved_error = achieved;
  result.level.cap_hit = cap_hit;
  result.level.target_max = target_max;
  result.level.elapsed_seconds = seconds_since(start);
  result.record = std::move(record);
  result.residual = std::move(residual);
  return result;
}

MultilevelResult run_multilevel(std::span<const Vec3> surface_positions,
                                std::span<const Vec3> target,
                                const GreedyConfig& config) {
  check_config(config);
  MultilevelResult result;
  result.target_max = max_magnitude(target);

  std::vector<Vec3> current(target.begin(), target.end());
  const double entry_threshold =
      std::pow(config.tolerance, static_cast<double>(config.max_levels)) *
      result.target_max;

  for (std::size_t l = 0; l < config.max_levels; ++l) {
    const double current_max = max_magnitude(current);
    // Residual levels stop once the previous pass already met the overall goal.
    if (l > 0 && (current_max == 0.0 || current_max < entry_threshold)) break;
    LevelResult lr = greedy_level(surface_positions, current, config, l);
    current = std::move(lr.residual);
    result.levels.push_back(std::move(lr.level));
    result.records.push_back(std::move(lr.record));
  }
  result.final_residual = std::move(current);
  return result;
}

void write_convergence_csv_header(std::ostream& out) {
  out << "level,points,error,seconds\n";
}

void append_convergence_csv(std::ostream& out, std::size_t level,
                            const ConvergenceRecord& record) {
  for (const auto& s : record.samples) {
    out << level << ',' << s.points << ',' << std::setprecision(17) << s.error
        << ',' << std::setprecision(6) << s.seconds << "\n";
  }
}

}  // namespace icemorph
