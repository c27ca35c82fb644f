#pragma once

#include <map>

#include "tavis/half_int.hpp"

namespace tavis {

/// N two-level molecules in thermal equilibrium; beta_t = E / kT.
struct ThermalEnsemble {
  int N = 1;
  double beta_t = 0.0;
};

/// Mean inversion m_bar = -(N/2) tanh(beta_t / 2).
double thermal_inversion(const ThermalEnsemble& e);

/// Variance of m: N/4 - m_bar^2 / N.
double thermal_m_variance(const ThermalEnsemble& e);

/// Mean of r(r+1) at fixed m: m^2 + N/2. Requires |m| <= N/2 and
/// 2m == N (mod 2).
double mean_r_r1_given_m(int N, HalfInt m);

/// Variance of r(r+1) at fixed m: N^2/4 - m^2.
double var_r_r1_given_m(int N, HalfInt m);

struct BruteThermalStats {
  double m_mean = 0.0;
  double m_var = 0.0;
  double partition = 0.0;                  // sum_r P(r) sum_m e^{-m beta}
  std::map<std::int64_t, double> r_r1_mean_by_m;  // key = 2m
  std::map<std::int64_t, double> r_r1_var_by_m;
};

/// Exact enumeration over all (r, m) with weights P(r) e^{-m beta}
/// (big-integer degeneracies, compensated summation). N <= 40.
BruteThermalStats brute_thermal_stats(const ThermalEnsemble& e);

}  // namespace tavis
