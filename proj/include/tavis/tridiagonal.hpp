#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "tavis/amplitudes.hpp"
#include "tavis/block_spec.hpp"

namespace tavis {

/// Symmetric tridiagonal representation of one (r, c) block in effective
/// eigenvalue units: diag(k) = -beta * n_k with n_k = alpha + k, and
/// offdiag(k) = sqrt(n_k + 1) * C_{r, c - n_k - 1} > 0 for k < dim - 1.
/// Its eigenvalues are exactly the q's of the block.
struct TridiagMatrix {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;  // size dim - 1

  Eigen::Index dim() const { return diag.size(); }

  /// y = T x (for residual checks).
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

TridiagMatrix build_tridiagonal(const BlockSpec& spec);

/// [lo, hi] containing every eigenvalue (union of Gershgorin disks).
std::pair<double, double> gershgorin_interval(const TridiagMatrix& T);

/// Number of eigenvalues strictly below x, by the LDL^T pivot-sign count.
int sturm_count_below(const TridiagMatrix& T, double x);

/// k-th eigenvalue in descending order (k = 0 is the largest) by bisection.
double sturm_eigenvalue_desc(const TridiagMatrix& T, int k);

/// All eigenvalues, descending. Bisection is unconditionally convergent;
/// each value is bracketed to a width far below 1e-12 * (Gershgorin radius).
std::vector<double> sturm_eigenvalues(const TridiagMatrix& T);

struct InverseIterationResult {
  Eigen::VectorXd vector;  // unit norm, largest component positive
  double mu_refined = 0.0;
  double residual = 0.0;  // ||T v - mu_refined v||_inf
};

/// Inverse iteration at shift mu (within ~1e-6 of an eigenvalue).
/// An exactly singular shift is perturbed by 1e-13 * scale and retried.
InverseIterationResult inverse_iteration(const TridiagMatrix& T, double mu);

}  // namespace tavis
