#include "icemorph/rbf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icemorph {

WendlandKind wendland_kind_from_string(const std::string& name) {
  if (name == "c0" || name == "C0") return WendlandKind::C0;
  if (name == "c2" || name == "C2") return WendlandKind::C2;
  if (name == "c4" || name == "C4") return WendlandKind::C4;
  if (name == "c6" || name == "C6") return WendlandKind::C6;
  throw std::invalid_argument("unknown basis function '" + name +
                              "' (expected c0, c2, c4 or c6)");
}

std::string_view wendland_kind_name(WendlandKind kind) {
  switch (kind) {
    case WendlandKind::C0: return "c0";
    case WendlandKind::C2: return "c2";
    case WendlandKind::C4: return "c4";
    case WendlandKind::C6: return "c6";
  }
  return "?";
}

double eval_wendland(WendlandKind kind, double eta) {
  if (eta >= 1.0) return 0.0;
  const double u = 1.0 - eta;
  switch (kind) {
    case WendlandKind::C0:
      return u * u;
    case WendlandKind::C2: {
      const double u2 = u * u;
      return u2 * u2 * (4.0 * eta + 1.0);
    }
    case WendlandKind::C4: {
      const double u2 = u * u;
      const double u6 = u2 * u2 * u2;
      return u6 * ((35.0 / 3.0) * eta * eta + 6.0 * eta + 1.0);
    }
    case WendlandKind::C6: {
      const double u2 = u * u;
      const double u8 = u2 * u2 * u2 * u2;
      return u8 * (32.0 * eta * eta * eta + 25.0 * eta * eta + 8.0 * eta + 1.0);
    }
  }
  return 0.0;
}

double eval_basis(const BasisFunction& basis, double distance) {
  return eval_wendland(basis.kind, distance / basis.support_radius);
}

std::vector<double> assemble_surface_matrix(std::span<const Vec3> points,
                                            const BasisFunction& basis) {
  const std::size_t n = points.size();
  std::vector<double> matrix(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    matrix[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = eval_basis(basis, distance(points[i], points[j]));
      matrix[i * n + j] = v;
      matrix[j * n + i] = v;
    }
  }
  return matrix;
}

void CholeskyFactor::append(std::span<const double> column) {
  if (column.size() != n_ + 1) {
    throw std::invalid_argument("column length must be current size + 1");
  }
  const std::size_t k = n_;
  lower_.resize((k + 1) * (k + 2) / 2);
  double* row = lower_.data() + k * (k + 1) / 2;

  // Forward-substitute the off-diagonal entries, then form the pivot.
  double sq = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double* lj = lower_.data() + j * (j + 1) / 2;
    double s = column[j];
    for (std::size_t m = 0; m < j; ++m) s -= lj[m] * row[m];
    row[j] = s / lj[j];
    sq += row[j] * row[j];
  }
  const double diag = column[k];
  max_diag_ = std::max(max_diag_, diag);
  const double pivot_sq = diag - sq;
  const double pivot = pivot_sq > 0.0 ? std::sqrt(pivot_sq) : 0.0;
  if (!(pivot > 1e-14 * max_diag_)) {
    lower_.resize(k * (k + 1) / 2);
    throw SolveError("matrix not numerically positive definite at row " +
                     std::to_string(k) + " (pivot " + std::to_string(pivot) + ")");
  }
  row[k] = pivot;
  if (n_ == 0 || pivot < smallest_pivot_) smallest_pivot_ = pivot;
  ++n_;
}

void CholeskyFactor::solve(std::span<const double> rhs, std::span<double> x) const {
  if (rhs.size() != n_ || x.size() != n_) {
    throw std::invalid_argument("rhs size does not match factorization");
  }
  // L y = rhs
  for (std::size_t i = 0; i < n_; ++i) {
    const double* li = lower_.data() + i * (i + 1) / 2;
    double s = rhs[i];
    for (std::size_t j = 0; j < i; ++j) s -= li[j] * x[j];
    x[i] = s / li[i];
  }
  // L^T x = y
  for (std::size_t i = n_; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) {
      s -= lower_[j * (j + 1) / 2 + i] * x[j];
    }
    x[i] = s / lower_[i * (i + 1) / 2 + i];
  }
}

namespace {

[[noreturn]] void rethrow_conditioning(std::span<const Vec3> points,
                                       std::size_t failed) {
  // The offending pair is the new point and its closest predecessor.
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < failed; ++i) {
    const double d = distance(points[i], points[failed]);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  throw SolveError("ill-conditioned control set: points " +
                   std::to_string(nearest) + " and " + std::to_string(failed) +
                   " are too close (distance " + std::to_string(best) + ")");
}

}  // namespace

WeightSet solve_weights(std::span<const Vec3> points,
                        std::span<const Vec3> displacements,
                        const BasisFunction& basis) {
  if (points.size() != displacements.size()) {
    throw std::invalid_argument("point and displacement counts differ");
  }
  const std::size_t n = points.size();
  WeightSet weights;
  weights.control_positions.assign(points.begin(), points.end());
  weights.alpha.assign(n, Vec3{});
  if (n == 0) return weights;

  bool all_zero = true;
  for (const auto& d : displacements) {
    if (d.x != 0.0 || d.y != 0.0 || d.z != 0.0) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) return weights;

  CholeskyFactor factor;
  std::vector<double> column;
  for (std::size_t k = 0; k < n; ++k) {
    column.resize(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      column[j] = eval_basis(basis, distance(points[j], points[k]));
    }
    column[k] = 1.0;
    try {
      factor.append(column);
    } catch (const SolveError&) {
      rethrow_conditioning(points, k);
    }
  }

  std::vector<double> rhs(n), sol(n);
  const auto solve_axis = [&](auto get, auto set) {
    for (std::size_t i = 0; i < n; ++i) rhs[i] = get(displacements[i]);
    factor.solve(rhs, sol);
    for (std::size_t i = 0; i < n; ++i) set(weights.alpha[i], sol[i]);
  };
  solve_axis([](const Vec3& v) { return v.x; },
             [](Vec3& v, double a) { v.x = a; });
  solve_axis([](const Vec3& v) { return v.y; },
             [](Vec3& v, double a) { v.y = a; });
  solve_axis([](const Vec3& v) { return v.z; },
             [](Vec3& v, double a) { v.z = a; });
  return weights;
}

Vec3 eval_interpolant(const WeightSet& weights, const BasisFunction& basis,
                      const Vec3& query) {
  Vec3 result;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double phi = eval_basis(basis, distance(weights.control_positions[i], query));
    if (phi != 0.0) result += weights.alpha[i] * phi;
  }
  return result;
}

}  // namespace icemorph
