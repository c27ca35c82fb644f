#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "tavis/block_spec.hpp"

namespace tavis {

struct FockField {
  int n0 = 0;
};
struct CoherentField {
  double amplitude = 0.0;
  int cutoff = 0;
};
struct ThermalField {
  double nbar = 0.0;
  int cutoff = 0;
};
using FieldInit = std::variant<FockField, CoherentField, ThermalField>;

struct AllExcited {
  int N = 1;
};
struct PureMolecules {
  HalfInt r;
  HalfInt m;
};
struct ThermalMolecules {
  int N = 1;
  double beta_t = 0.0;
};
using MoleculeInit = std::variant<AllExcited, PureMolecules, ThermalMolecules>;

/// Product initial state rho(0) = rho_f x rho_T at resonance (beta = 0).
struct InitialStateSpec {
  FieldInit field;
  MoleculeInit molecules;
  double kappa_abs = 1.0;
};

/// Sampled expectation values; times are raw (1/Omega units with Omega = 1),
/// slow phases enter as e^{i t |kappa| (q - q')}.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
  std::string prefactor_convention;
};

struct DynamicsOptions {
  /// Keep only the stationary (j = j') terms: the local time average.
  bool slowest_only = false;
  /// Evaluate the superradiant sum with the literal P(r)-weighted mixture
  /// over all cooperation numbers instead of collapsing to r = N/2.
  bool mixed_r = false;
};

/// <n| rho_f(t) |n'> assembled from the exact eigensystems of every block
/// the initial ensemble populates; keeps the fast e^{-it(n-n')} phase.
std::complex<double> field_density_element(const InitialStateSpec& init, double t, int n,
                                           int n_prime);

/// <E^-(t)>: the slow envelope of -(gamma/mu) e^{it} sum sqrt(n+1) <n|rho|n+1>;
/// the prefactor and fast phase are factored out (see prefactor_convention).
TimeSeries expectation_Eminus(const InitialStateSpec& init, const std::vector<double>& times);

/// <E^- E^+(t)> with |gamma/mu|^2 factored out; equals the mean photon
/// number of rho_f(t).
TimeSeries expectation_EmEp(const InitialStateSpec& init, const std::vector<double>& times,
                            const DynamicsOptions& options = {});

/// Fast path for all molecules excited + vacuum field: only the c = r
/// blocks contribute and the quadruple-amplitude sum collapses to
/// sum_m (r - m) |sum_j A_{r-m} A_0 e^{i t |kappa| q_j}|^2.
TimeSeries superradiant_vacuum_EmEp(int N, const std::vector<double>& times,
                                    double kappa_abs = 1.0, const DynamicsOptions& options = {});

}  // namespace tavis
