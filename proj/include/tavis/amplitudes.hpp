#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace tavis {

/// Real eigenvector components A_n on the photon ladder of one block,
/// stored in the phi = 0 phase convention; values(k) is A_{n_min + k}.
/// The general-phi amplitudes are restored by the factor e^{-i n phi}.
struct Amplitudes {
  int n_min = 0;
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }
  double norm() const { return values.norm(); }
  void normalize() { values.normalize(); }

  std::vector<std::complex<double>> with_phase(double phi) const;

  /// Inner product aligned on the common photon-number range.
  double dot(const Amplitudes& other) const;
};

}  // namespace tavis
