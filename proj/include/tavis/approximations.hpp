#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tavis/amplitudes.hpp"
#include "tavis/block_spec.hpp"
#include "tavis/spectrum.hpp"

namespace tavis {

/// Parameters of the harmonic (differential-equation) approximation:
/// the cubic F(n) = q^2 - 4 n C^2_{c-n} expanded about its minimum n_o.
struct DiffEqParams {
  double x = 0.0;       // c + 1/2
  double y = 0.0;       // r + 1/2
  double n_o = 0.0;     // minimum of F, independent of q
  double alpha1 = 0.0;  // 4 n_o [y^2 - (x - n_o)^2]
  double alpha2 = 0.0;  // 4 sqrt(3 y^2 + x^2)
  bool low_dim_warning = false;  // block too small for the continuum step
};

DiffEqParams diffeq_params(const BlockSpec& spec);

/// q_j from the harmonic quantization condition; valid j range is
/// 0..r-1 (integer r) or 0..r-1/2 (half-integer r), and mirror states
/// dim-1-j in that range return the negated value.
double diffeq_q(const BlockSpec& spec, int j);

/// Same quadratic solved from explicit parameters (lets callers probe the
/// alpha1 -> 0 degeneration directly).
double diffeq_q_from_params(const DiffEqParams& p, int j);

/// Harmonic-oscillator shaped eigenvector sampled on the block's photon
/// ladder; j = 0 reduces to the Gaussian ground-state profile.
Amplitudes diffeq_vector(const BlockSpec& spec, int j);

/// Ground-state photon-number dispersion q_0 / (2 sqrt(alpha2)).
double diffeq_sigma2(const BlockSpec& spec);

/// Method-tagged result of one approximation scheme, comparable to exact.
/// spectrum.q is always in exact-comparable units (lambda = c - |kappa| q);
/// aux carries method-specific per-state values (documented per builder).
struct ApproxResult {
  Method method = Method::diffeq;
  Spectrum spectrum;
  std::optional<std::vector<Amplitudes>> states;
  std::map<std::string, double> meta;
  Eigen::VectorXd aux;
};

/// Average-field spectrum from the G-recursion polynomial (beta = 0 only).
/// spectrum.q = sqrt(n_o) q_f; aux holds the raw q_f roots (descending).
ApproxResult avgfield_spectrum_poly(const BlockSpec& spec);

/// Closed-form lambda_j = c - 2 (r - j) |kappa| sqrt(n_o), with n_o = c
/// unless use_exact_no is set (then n_o from diffeq_params).
double avgfield_lambda_closed(const BlockSpec& spec, int j, bool use_exact_no = false);

/// Differential-equation variant of the average-field spectrum,
/// lambda = c - 2 |kappa| sqrt(n_o) [-(j+1/2) + sqrt((j+1/2)^2 + ((r+1)/2)^2)].
double avgfield_lambda_diff(const BlockSpec& spec, int j);

/// Constructed |r,c,j>_f state on photon numbers c-r .. c+r; requires c >= r.
Amplitudes avgfield_state(const BlockSpec& spec, int j);

/// Modified-TLM lambda_j = c - (c + r - 2j) |kappa| sqrt(2r - alpha_corr).
double modtlm_lambda(const BlockSpec& spec, int j, double alpha_corr = 0.0);

/// Calibration alpha = 0.45 r that matches the r = c scaling of the exact
/// ground energy.
double modtlm_alpha_calibration(HalfInt r);

/// Constructed |r,c,j>_T state on photon numbers 0 .. c+r; requires c <= r.
Amplitudes modtlm_state(const BlockSpec& spec, int j);

/// Average-TLM spectrum (beta = 0): q'_a are the zeros of the physicists'
/// Hermite polynomial of order block_dim; eigenvectors
/// T_n proportional to H_n(q'_a) / sqrt(2^n n!). spectrum.q holds the
/// exact-comparable q_a <sqrt(R^2 - R3^2 + R3)>; aux holds the raw q_a.
ApproxResult avgtlm_spectrum(const BlockSpec& spec);

/// Classical-TLM (displaced oscillator): Poisson ground field distribution
/// with mean kappa_bar^2; spectrum.lambda(m) = omega (m - kappa_bar^2).
ApproxResult classical_tlm(const BlockSpec& spec, double kappa_bar);

/// Classical-field rotation: theta = atan(2|kappa|)/2,
/// lambda_j = -(r - j) sqrt(1 + 4 kappa^2); states over the |r,m> ladder.
ApproxResult classical_field(const BlockSpec& spec);

/// Detuned closed forms: c > r uses the n_o = c branch, c < 0 the sqrt(8r)
/// branch; beta = 0 is signalled (use the resonance closed forms instead).
double detuned_lambda(const BlockSpec& spec, int j);

struct DecouplingThresholds {
  double beta_high_c = 0.0;       // sqrt(4 n_o), n_o ~ c
  double beta_low_c = 0.0;        // sqrt(8 r)
  int uncoupled_state_index = 0;  // block offset of the predicted dominant basis state
};

DecouplingThresholds decoupling_threshold(const BlockSpec& spec);

namespace detail {

/// Shared combinatorial builder for the constructed states (5.42a, 5.51,
/// B.22): amplitudes over L = 0..size with rotation angle theta (pi/4
/// reproduces the 2^{-r} binomial weights). Real phi = 0 convention.
Eigen::VectorXd constructed_state(int size, int j, double theta);

}  // namespace detail

}  // namespace tavis
