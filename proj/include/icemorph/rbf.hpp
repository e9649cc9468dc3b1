#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icemorph/vec.hpp"

namespace icemorph {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WendlandKind { C0, C2, C4, C6 };

WendlandKind wendland_kind_from_string(const std::string& name);
std::string_view wendland_kind_name(WendlandKind kind);

/// Compactly supported Wendland kernel: phi(eta) with eta = distance / R,
/// identically zero for eta >= 1 and phi(0) = 1.
struct BasisFunction {
  WendlandKind kind = WendlandKind::C2;
  double support_radius = 1.0;
};

double eval_wendland(WendlandKind kind, double eta);
double eval_basis(const BasisFunction& basis, double distance);

/// Dense kernel matrix, entry (i,j) = phi(|r_i - r_j|). Symmetric with unit
/// diagonal; positive definite for pairwise distinct points. Row-major n*n.
std::vector<double> assemble_surface_matrix(std::span<const Vec3> points,
                                            const BasisFunction& basis);

// Cholesky factorization of a symmetric positive definite matrix that grows
// one row/column at a time. Appending costs O(n^2), so re-solving after each
// greedy insertion avoids a full O(n^3) refactorization.
class CholeskyFactor {
 public:
  std::size_t size() const { return n_; }

  // `column` holds the new row's entries against the existing points followed
  // by the diagonal entry, length size()+1. Throws SolveError when the pivot
  // falls below 1e-14 of the largest diagonal seen.
  void append(std::span<const double> column);

  // Solves A x = rhs with the current factorization.
  void solve(std::span<const double> rhs, std::span<double> x) const;

  double smallest_pivot() const { return smallest_pivot_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> lower_;  // packed row-major lower triangle
  double max_diag_ = 0.0;
  double smallest_pivot_ = 0.0;
};

/// Interpolant coefficients tied to their control positions. alpha[i] holds
/// the per-axis weights of control i.
struct WeightSet {
  std::vector<Vec3> control_positions;
  std::vector<Vec3> alpha;

  std::size_t size() const { return control_positions.size(); }
};

/// Solves the kernel system for the weights that reproduce `displacements`
/// at `points`, factorizing once and reusing it for every axis. A zero
/// displacement set short-circuits to zero weights.
WeightSet solve_weights(std::span<const Vec3> points,
                        std::span<const Vec3> displacements,
                        const BasisFunction& basis);

/// Weighted kernel sum at `query`; exactly zero when the query is farther
/// than the support radius from every control point.
Vec3 eval_interpolant(const WeightSet& weights, const BasisFunction& basis,
                      const Vec3& query);

}  // namespace icemorph
