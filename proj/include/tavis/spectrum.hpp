#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tavis/amplitudes.hpp"
#include "tavis/block_spec.hpp"

namespace tavis {

enum class Method {
  exact_poly,
  oracle,
  diffeq,
  avgfield_poly,
  avgfield_closed,
  modtlm,
  modtlm_corrected,
  avgtlm,
  classical_tlm,
  classical_field,
  detuned_high_c,
  detuned_low_c,
};

std::string to_string(Method m);

/// Ordered effective eigenvalues q_j of one block (descending; q_0 is the
/// ground state) with the energy conversion lambda_j = c - |kappa| q_j.
struct Spectrum {
  Eigen::VectorXd q;
  Eigen::VectorXd lambda;
  Method method = Method::exact_poly;

  Eigen::Index size() const { return q.size(); }
};

/// Builds a Spectrum from unsorted q values (sorts descending, derives lambda).
Spectrum make_spectrum(const BlockSpec& spec, std::vector<double> q_values, Method method);

/// Full per-block eigensystem: spectrum, eigenvectors and the observables
/// quoted on the eigenvector figures (<m>, <n>, photon-number dispersion).
struct EigenSystem {
  BlockSpec spec;
  Spectrum spectrum;
  std::vector<Amplitudes> vectors;  // vectors[j] belongs to spectrum.q(j)

  struct Observables {
    double m_mean = 0.0;
    double n_mean = 0.0;
    double n_var = 0.0;
  };
  std::vector<Observables> observables;
};

}  // namespace tavis
