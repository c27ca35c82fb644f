#pragma once

#include <optional>
#include <vector>

#include "tavis/block_spec.hpp"
#include "tavis/spectrum.hpp"

namespace tavis {

/// Characteristic polynomial of one block in the scaled variable
/// qhat = q / sqrt(scale); coeffs are ascending powers of qhat and the
/// polynomial is monic of degree block_dim. Roots of the block satisfy
/// q = sqrt(scale) * qhat.
struct CharPoly {
  std::vector<double> coeffs;
  double scale = 1.0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Coefficients in the physical variable q (ascending, monic).
  std::vector<double> unscaled_coeffs() const;
};

/// Builds the characteristic polynomial by the S-recursion
///   S_l^t = (q + (alpha + t) beta) S_l^{t-1} + Ccal_t S_{l-1}^{t-2},
/// with Ccal_m = (m + alpha) C^2_{r, c-(m+alpha)}, scaled by
/// s = max_m Ccal_m so the coefficients stay representable.
/// Dimensions above 120 are refused (use the oracle path instead).
CharPoly char_poly(const BlockSpec& spec);

struct SolveOptions {
  /// Newton seeds in physical q units; filled with defaults when empty
  /// (harmonic-approximation values at beta = 0, oracle eigenvalues for
  /// detuned blocks of dimension > 40, sign-change isolation otherwise).
  std::vector<double> seeds;
  /// When false, the final polish pass on the undeflated polynomial is
  /// skipped (TAVIS_LAB_PRECISION=fast).
  bool strict = true;
};

/// All block_dim roots by Newton iteration with Maehly deflation on the
/// recursion-evaluated polynomial, each polished on the undeflated
/// polynomial to |dq| < 1e-12 max(1, |q|). Falls back to the Sturm oracle
/// (method = oracle) if Newton fails to converge within 200 iterations.
Spectrum solve_spectrum(const BlockSpec& spec, const SolveOptions& options = {});

/// Eigenvector for a known spectrum member q_j by the two-sided recursion:
/// forward from n = alpha, backward from n = c + r, joined at the integer
/// nearest the amplitude peak n_o (clamped inside the block) and rescaled
/// to match there. Normalized, sign fixed positive at the matching index.
/// Throws numerical_error when ||T v - q_j v||_inf > 1e-8.
Amplitudes eigenvector(const BlockSpec& spec, double q_j);

/// Closed-form q = 0 eigenvector for beta = 0, odd-dimension blocks:
/// A_{alpha+t} = 0 for odd t and, for even t,
/// A proportional to (-1)^{t/2} sqrt(Ccal_{t-1} Ccal_{t-3}.../Ccal_t Ccal_{t-2}...).
Amplitudes zero_q_eigenvector(const BlockSpec& spec);

/// Spectrum + all eigenvectors + observables. Eigenvectors use the
/// two-sided recursion with an inverse-iteration fallback when the
/// recursion misses its residual bound (possible deep in the decoupled
/// large-beta regime).
EigenSystem full_eigensystem(const BlockSpec& spec, const SolveOptions& options = {});

namespace detail {

/// Value and derivative of the scaled characteristic polynomial at qhat,
/// evaluated through the three-term recursion (numerically stable near
/// roots, unlike the monomial form).
struct RecursionPoly {
  int dim = 1;
  double alpha = 0.0;
  double beta_hat = 0.0;
  double sqrt_scale = 1.0;
  std::vector<double> c_hat;  // c_hat[t], t = 1..dim-1 (scaled weights)

  std::pair<double, double> eval(double q_hat) const;
  /// Number of roots of the degree-dim polynomial above q_hat, from the
  /// sign changes of the minor sequence (Givens count).
  int count_above(double q_hat) const;
  /// Gershgorin-type bound on |q_hat| for the associated Jacobi matrix.
  double root_bound() const;
};

RecursionPoly exact_recursion(const BlockSpec& spec);

/// Same machinery with Ccal_t replaced by C^2_{r, c-(t+alpha)} and beta = 0
/// (average-field difference equation).
RecursionPoly avgfield_recursion(const BlockSpec& spec);

/// Newton-Maehly roots in physical q units; seeds may be empty (isolation
/// by sign-change bisection) or fewer than dim (topped up the same way).
std::vector<double> newton_roots(const RecursionPoly& poly, std::vector<double> seeds,
                                 bool strict_polish);

}  // namespace detail

}  // namespace tavis
