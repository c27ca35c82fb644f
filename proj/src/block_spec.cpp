#include "tavis/block_spec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tavis {

using boost::multiprecision::cpp_int;

void validate(const BlockSpec& spec) {
  if (spec.r < HalfInt(0))
    throw std::domain_error("BlockSpec: r = " + to_decimal_string(spec.r) + " must be >= 0");
  if (spec.c < -spec.r)
    throw std::domain_error("BlockSpec: c = " + to_decimal_string(spec.c) +
                            " must be >= -r = " + to_decimal_string(-spec.r));
  if (!same_parity(spec.r, spec.c))
    throw std::domain_error("BlockSpec: r = " + to_decimal_string(spec.r) + " and c = " +
                            to_decimal_string(spec.c) + " must both be integer or half-odd");
  if (!(spec.kappa_abs > 0.0) || !std::isfinite(spec.kappa_abs))
    throw std::domain_error("BlockSpec: kappa_abs must be > 0");
  if (!std::isfinite(spec.beta) || !std::isfinite(spec.phi))
    throw std::domain_error("BlockSpec: beta and phi must be finite");
}

int block_dim(const BlockSpec& spec) {
  validate(spec);
  const std::int64_t two_r = spec.r.doubled();
  const std::int64_t r_plus_c = (spec.r + spec.c).doubled() / 2;  // integer by parity
  const std::int64_t dim = std::min(two_r + 1, r_plus_c + 1);
  return static_cast<int>(dim);
}

int photon_min(const BlockSpec& spec) {
  const std::int64_t c_minus_r = (spec.c - spec.r).doubled() / 2;
  return static_cast<int>(std::max<std::int64_t>(0, c_minus_r));
}

int photon_max(const BlockSpec& spec) {
  return static_cast<int>((spec.r + spec.c).doubled() / 2);
}

double coupling_C(HalfInt r, HalfInt M) {
  // 4 [r(r+1) - M(M+1)] = 2r(2r+2) - 2M(2M+2), exact in int64.
  const std::int64_t dr = r.doubled(), dm = M.doubled();
  const std::int64_t radicand4 = dr * (dr + 2) - dm * (dm + 2);
  if (radicand4 < 0)
    throw std::domain_error("coupling_C: negative radicand for r = " + to_decimal_string(r) +
                            ", M = " + to_decimal_string(M));
  return 0.5 * std::sqrt(static_cast<double>(radicand4));
}

namespace {

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  cpp_int result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

}  // namespace

cpp_int degeneracy_P(int N, HalfInt r) {
  if (N < 1) throw std::domain_error("degeneracy_P: N must be >= 1");
  if (r < HalfInt(0) || r.doubled() > N)
    throw std::domain_error("degeneracy_P: need 0 <= r <= N/2, got r = " + to_decimal_string(r) +
                            ", N = " + std::to_string(N));
  if ((r.doubled() - N) % 2 != 0)
    throw std::domain_error("degeneracy_P: parity mismatch, 2r = " + std::to_string(r.doubled()) +
                            " vs N = " + std::to_string(N));
  const int k = static_cast<int>((N - r.doubled()) / 2);  // N/2 - r
  // N!(2r+1)/((N/2+r+1)!(N/2-r)!) = C(N,k) - C(N,k-1)
  return binomial(N, k) - binomial(N, k - 1);
}

double coupling_from_cavity(double dipole_moment, double cavity_volume, double omega) {
  if (!(dipole_moment > 0.0) || !(cavity_volume > 0.0) || !(omega > 0.0))
    throw std::domain_error("coupling_from_cavity: all inputs must be > 0");
  constexpr double kJ1 = 0.5191;           // J_1 at the first zero of J_0
  constexpr double kHbar = 1.054571817e-27;  // erg s, Gaussian units
  constexpr double kTwoPi = 6.283185307179586;
  return (dipole_moment / kJ1) * std::sqrt(kTwoPi * omega / (kHbar * cavity_volume));
}

}  // namespace tavis
