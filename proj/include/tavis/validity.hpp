#pragma once

#include <map>
#include <string>

#include "tavis/block_spec.hpp"

namespace tavis {

/// Quantitative validity check: satisfied iff margin < 1, where margin is
/// the left side of the criterion divided by its right side.
struct ValidityReport {
  enum class Criterion { cubic_C10, doubling_E5 };
  Criterion criterion = Criterion::cubic_C10;
  bool satisfied = false;
  double margin = 0.0;
  std::map<std::string, double> detail;
};

/// Effective eigenvalue with the second-order cubic-term correction applied
/// (the harmonic value plus the anharmonic shift), with the validity margin
/// (30 j^2 + 30 j + 11) / (4 alpha2^2). The correction denominator must stay
/// positive or a domain error is thrown.
struct CubicPerturbedQ {
  double q = 0.0;
  ValidityReport report;
};

CubicPerturbedQ cubic_perturbed_q(const BlockSpec& spec, int j);

/// Rotating-wave validity: margin = |kappa| q_0 / 2 with the exact ground q_0.
ValidityReport doubling_validity(const BlockSpec& spec);

/// Second-order energy shift of |r,c,j> from the counter-rotating (doubling)
/// terms, assembled from the exact eigensystems of the (r, c) and (r, c+-2)
/// sectors. Near-degenerate denominators (|den| < 1e-9) are refused.
double doubling_W2(const BlockSpec& spec, int j);

}  // namespace tavis
