#include "tavis/approximations.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "tavis/errors.hpp"
#include "tavis/exact_solver.hpp"
#include "tavis/tridiagonal.hpp"

namespace tavis {

using boost::multiprecision::cpp_int;

DiffEqParams diffeq_params(const BlockSpec& spec) {
  validate(spec);
  DiffEqParams p;
  p.x = spec.c.value() + 0.5;
  p.y = spec.r.value() + 0.5;
  const double root = std::sqrt(3.0 * p.y * p.y + p.x * p.x);
  p.n_o = (2.0 * p.x + root) / 3.0;
  p.alpha2 = 4.0 * root;
  p.alpha1 = 4.0 * p.n_o * (p.y * p.y - (p.x - p.n_o) * (p.x - p.n_o));
  if (p.alpha1 < 0.0 && p.alpha1 > -1e-9 * p.alpha2) p.alpha1 = 0.0;  // round-off at c = -r
  p.low_dim_warning = block_dim(spec) < 3;
  return p;
}

double diffeq_q_from_params(const DiffEqParams& p, int j) {
  const double a = j + 0.5;
  return -std::sqrt(p.alpha2) * a + std::sqrt(a * a * p.alpha2 + p.alpha1);
}

namespace {

// Largest j covered by the quantization condition: r-1 for integer r,
// r-1/2 for half-integer r.
int diffeq_j_max(HalfInt r) { return static_cast<int>((r.doubled() - 1) / 2); }

}  // namespace

double diffeq_q(const BlockSpec& spec, int j) {
  const auto p = diffeq_params(spec);
  const int dim = block_dim(spec);
  const int jmax = diffeq_j_max(spec.r);
  if (j >= 0 && j <= jmax && j < dim) return diffeq_q_from_params(p, j);
  const int mirror = dim - 1 - j;
  if (mirror >= 0 && mirror <= jmax) return -diffeq_q_from_params(p, mirror);
  throw std::domain_error("diffeq_q: j = " + std::to_string(j) +
                          " outside the harmonic range for r = " + to_decimal_string(spec.r) +
                          ", dim = " + std::to_string(dim));
}

namespace {

// Physicists' Hermite H_j by the three-term recursion.
double hermite(int j, double t) {
  double hm = 0.0, h = 1.0;
  for (int k = 0; k < j; ++k) {
    const double hn = 2.0 * t * h - 2.0 * k * hm;
    hm = h;
    h = hn;
  }
  return h;
}

}  // namespace

Amplitudes diffeq_vector(const BlockSpec& spec, int j) {
  const auto p = diffeq_params(spec);
  const int dim = block_dim(spec);
  const int jmax = diffeq_j_max(spec.r);
  const int mirror = dim - 1 - j;
  const bool direct = (j >= 0 && j <= jmax && j < dim);
  if (!direct && !(mirror >= 0 && mirror <= jmax))
    throw std::domain_error("diffeq_vector: j outside the harmonic range");
  const int jj = direct ? j : mirror;

  const double q = diffeq_q_from_params(p, jj);
  if (!(q > 0.0)) throw std::domain_error("diffeq_vector: q_j <= 0, Gaussian width undefined");

  const int alpha = photon_min(spec);
  const double r = spec.r.value();
  const double width = std::sqrt(p.alpha2) / (2.0 * q);
  const double targ = std::pow(p.alpha2 / (q * q), 0.25);

  Eigen::VectorXd v(dim);
  for (int k = 0; k < dim; ++k) {
    const double dn = (alpha + k) - p.n_o;
    v(k) = std::exp(-jj * dn / r - width * dn * dn) * hermite(jj, targ * dn);
  }
  if (!direct)  // mirror states carry the alternating (-1)^n sign
    for (int k = 0; k < dim; ++k)
      if ((alpha + k) % 2 != 0) v(k) = -v(k);

  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw numerical_error("diffeq_vector: profile underflowed");
  v /= nrm;

  Amplitudes amp;
  amp.n_min = alpha;
  amp.values = std::move(v);
  return amp;
}

double diffeq_sigma2(const BlockSpec& spec) {
  const auto p = diffeq_params(spec);
  return diffeq_q_from_params(p, 0) / (2.0 * std::sqrt(p.alpha2));
}

ApproxResult avgfield_spectrum_poly(const BlockSpec& spec) {
  validate(spec);
  if (spec.beta != 0.0)
    throw std::domain_error("avgfield_spectrum_poly: defined for beta = 0 only");
  const int dim = block_dim(spec);
  const auto p = diffeq_params(spec);
  const double sqrt_no = std::sqrt(p.n_o);

  ApproxResult res;
  res.method = Method::avgfield_poly;
  res.meta["n_o"] = p.n_o;

  std::vector<double> qf;
  if (dim == 1) {
    qf = {0.0};
  } else {
    const auto poly = detail::avgfield_recursion(spec);
    qf = detail::newton_roots(poly, {}, true);
  }
  res.aux.resize(static_cast<Eigen::Index>(qf.size()));
  std::vector<double> q_cmp(qf.size());
  for (std::size_t i = 0; i < qf.size(); ++i) {
    res.aux(static_cast<Eigen::Index>(i)) = qf[i];
    q_cmp[i] = sqrt_no * qf[i];
  }
  res.spectrum = make_spectrum(spec, std::move(q_cmp), Method::avgfield_poly);
  return res;
}

double avgfield_lambda_closed(const BlockSpec& spec, int j, bool use_exact_no) {
  validate(spec);
  if (spec.c <= HalfInt(0)) throw std::domain_error("avgfield_lambda_closed: requires c > 0");
  if (j < 0 || HalfInt(j) > spec.r + spec.r)
    throw std::domain_error("avgfield_lambda_closed: j outside 0..2r");
  const double n_o = use_exact_no ? diffeq_params(spec).n_o : spec.c.value();
  return spec.c.value() - 2.0 * (spec.r.value() - j) * spec.kappa_abs * std::sqrt(n_o);
}

double avgfield_lambda_diff(const BlockSpec& spec, int j) {
  validate(spec);
  if (j < 0 || HalfInt(j) > spec.r + spec.r)
    throw std::domain_error("avgfield_lambda_diff: j outside 0..2r");
  const double n_o = diffeq_params(spec).n_o;
  const double a = j + 0.5;
  const double h = 0.5 * (spec.r.value() + 1.0);
  return spec.c.value() -
         2.0 * spec.kappa_abs * std::sqrt(n_o) * (-a + std::sqrt(a * a + h * h));
}

namespace detail {

namespace {

double binom_double(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= 60) {
    cpp_int b = 1;
    const int kk = std::min(k, n - k);
    for (int i = 1; i <= kk; ++i) {
      b *= (n - kk + i);
      b /= i;
    }
    return b.convert_to<double>();
  }
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

Eigen::VectorXd constructed_state(int size, int j, double theta) {
  if (size < 0 || size > 1000)
    throw std::domain_error("constructed_state: size outside 0..1000");
  if (j < 0 || j > size) throw std::domain_error("constructed_state: j outside 0..size");

  const int n_minus = size - j;
  const double ct = std::cos(theta), st = std::sin(theta);
  Eigen::VectorXd amps(size + 1);
  for (int L = 0; L <= size; ++L) {
    // k = (L + L')/2 runs over the nonnegative-factorial window.
    const int k_lo = std::max(0, L - n_minus);
    const int k_hi = std::min(L, j);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
      const int d2 = L - k;      // (L - L')/2
      const int d3 = j - k;      // excited slots left
      const int d4 = n_minus - d2;
      const double term = binom_double(L, k) * binom_double(size - L, d3) *
                          std::pow(ct, d2 + d3) * std::pow(st, k + d4);
      sum += (k % 2 == 0) ? term : -term;
    }
    amps(L) = std::sqrt(binom_double(size, L) / binom_double(size, j)) * sum;
  }
  return amps;
}

}  // namespace detail

Amplitudes avgfield_state(const BlockSpec& spec, int j) {
  validate(spec);
  const int two_r = static_cast<int>(spec.r.doubled());
  if (j < 0 || j > two_r) throw std::domain_error("avgfield_state: j outside 0..2r");
  if (spec.c < spec.r) {
    // photon index c - m goes negative for m close to r
    throw std::domain_error("avgfield_state: photon index c - m < 0 for m = " +
                            to_decimal_string(spec.r) + " (requires c >= r)");
  }
  Amplitudes amp;
  amp.n_min = static_cast<int>((spec.c - spec.r).doubled() / 2);  // photon number at L = 0
  amp.values = detail::constructed_state(two_r, j, 0.25 * M_PI);
  amp.normalize();
  return amp;
}

double modtlm_lambda(const BlockSpec& spec, int j, double alpha_corr) {
  validate(spec);
  const int cpr = photon_max(spec);  // c + r
  if (j < 0 || j > cpr) throw std::domain_error("modtlm_lambda: j outside 0..c+r");
  const double arg = 2.0 * spec.r.value() - alpha_corr;
  if (arg < 0.0) throw std::domain_error("modtlm_lambda: 2r - alpha_corr < 0");
  return spec.c.value() - (cpr - 2.0 * j) * spec.kappa_abs * std::sqrt(arg);
}

double modtlm_alpha_calibration(HalfInt r) { return 0.45 * r.value(); }

Amplitudes modtlm_state(const BlockSpec& spec, int j) {
  validate(spec);
  const int cpr = photon_max(spec);
  if (j < 0 || j > cpr) throw std::domain_error("modtlm_state: j outside 0..c+r");
  if (spec.c > spec.r)
    throw std::domain_error("modtlm_state: molecular index c - L exceeds r (requires c <= r)");
  Amplitudes amp;
  amp.n_min = 0;
  amp.values = detail::constructed_state(cpr, j, 0.25 * M_PI);
  amp.normalize();
  return amp;
}

ApproxResult avgtlm_spectrum(const BlockSpec& spec) {
  validate(spec);
  if (spec.beta != 0.0)
    throw std::domain_error("avgtlm_spectrum: defined for beta = 0 only");
  const int dim = block_dim(spec);
  if (dim > 200)
    throw std::domain_error("avgtlm_spectrum: Hermite order " + std::to_string(dim) +
                            " > 200 refused (root conditioning)");
  const int alpha = photon_min(spec);

  // Difference equation sqrt(n) T_{n-1} - q_a T_n + sqrt(n+1) T_{n+1} = 0:
  // symmetric tridiagonal with zero diagonal and offdiag sqrt(n+1).
  TridiagMatrix T;
  T.diag = Eigen::VectorXd::Zero(dim);
  T.offdiag.resize(std::max(dim - 1, 0));
  for (int k = 0; k + 1 < dim; ++k) T.offdiag(k) = std::sqrt(static_cast<double>(alpha + k + 1));
  const std::vector<double> qa = (dim == 1) ? std::vector<double>{0.0} : sturm_eigenvalues(T);

  ApproxResult res;
  res.method = Method::avgtlm;
  res.aux.resize(dim);
  std::vector<Amplitudes> states;
  states.reserve(static_cast<std::size_t>(qa.size()));
  std::vector<double> q_cmp(qa.size());
  double ground_avg = 0.0;

  for (int i = 0; i < dim; ++i) {
    res.aux(i) = qa[static_cast<std::size_t>(i)];
    Amplitudes st;
    st.n_min = alpha;
    if (alpha == 0) {
      // c < r path: T_n = H_n(q'_a) / sqrt(2^n n!), q'_a = q_a / sqrt(2),
      // via the normalized Hermite recursion.
      const double qp = qa[static_cast<std::size_t>(i)] / std::sqrt(2.0);
      Eigen::VectorXd v(dim);
      double hm = 0.0, h = 1.0;
      v(0) = h;
      for (int n = 0; n + 1 < dim; ++n) {
        const double hn = qp * std::sqrt(2.0 / (n + 1.0)) * h - std::sqrt(n / (n + 1.0)) * hm;
        hm = h;
        h = hn;
        v(n + 1) = h;
      }
      st.values = v.normalized();
    } else {
      st.values = inverse_iteration(T, qa[static_cast<std::size_t>(i)]).vector;
    }
    // self-consistent <sqrt(R^2 - R3^2 + R3)> over this vector
    double avg = 0.0;
    for (int k = 0; k < dim; ++k) {
      const int n = alpha + k;
      avg += st.values(k) * st.values(k) * coupling_C(spec.r, spec.c - HalfInt(n + 1));
    }
    q_cmp[static_cast<std::size_t>(i)] = qa[static_cast<std::size_t>(i)] * avg;
    if (i == 0) ground_avg = avg;
    states.push_back(std::move(st));
  }
  res.meta["kappa_bar_ground"] = spec.kappa_abs * ground_avg;
  // keep q_a ordering (descending) so states[i] stays aligned with q(i)
  res.spectrum.method = Method::avgtlm;
  res.spectrum.q.resize(dim);
  res.spectrum.lambda.resize(dim);
  for (int i = 0; i < dim; ++i) {
    res.spectrum.q(i) = q_cmp[static_cast<std::size_t>(i)];
    res.spectrum.lambda(i) = spec.c.value() - spec.kappa_abs * res.spectrum.q(i);
  }
  res.states = std::move(states);
  return res;
}

ApproxResult classical_tlm(const BlockSpec& spec, double kappa_bar) {
  validate(spec);
  if (kappa_bar < 0.0) throw std::domain_error("classical_tlm: kappa_bar must be >= 0");
  const double omega = 1.0 + spec.beta * spec.kappa_abs;  // units of Omega
  const double nbar = kappa_bar * kappa_bar;
  const int dim = block_dim(spec);

  ApproxResult res;
  res.method = Method::classical_tlm;
  res.meta["omega"] = omega;
  res.meta["n_mean"] = nbar;
  res.meta["sigma2"] = nbar;
  res.meta["a_mean"] = kappa_bar;

  // Quasi-particle ladder lambda_m = omega (m - kappa_bar^2), offset H_a = 0.
  res.spectrum.method = Method::classical_tlm;
  res.spectrum.q.resize(dim);
  res.spectrum.lambda.resize(dim);
  for (int m = 0; m < dim; ++m) {
    res.spectrum.lambda(m) = omega * (m - nbar);
    res.spectrum.q(m) = (spec.c.value() - res.spectrum.lambda(m)) / spec.kappa_abs;
  }

  // Displaced-oscillator ground state: Poisson amplitudes on the Fock ladder.
  const int cutoff = std::max(20, static_cast<int>(std::ceil(20.0 * nbar)));
  Amplitudes ground;
  ground.n_min = 0;
  ground.values = Eigen::VectorXd::Zero(cutoff + 1);
  if (kappa_bar == 0.0) {
    ground.values(0) = 1.0;
  } else {
    double log_fact = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      ground.values(n) = std::exp(-0.5 * nbar + n * std::log(kappa_bar) - 0.5 * log_fact);
    }
  }
  res.states = std::vector<Amplitudes>{std::move(ground)};
  return res;
}

ApproxResult classical_field(const BlockSpec& spec) {
  validate(spec);
  if (spec.r < HalfInt::from_doubled(1))
    throw std::domain_error("classical_field: requires r >= 1/2");
  const double kappa = spec.kappa_abs;
  const double theta = 0.5 * std::atan(2.0 * kappa);
  const double split = std::sqrt(1.0 + 4.0 * kappa * kappa);  // units of Omega
  const int two_r = static_cast<int>(spec.r.doubled());

  ApproxResult res;
  res.method = Method::classical_field;
  res.meta["theta"] = theta;
  const double s = std::sin(theta), co = std::cos(theta);
  res.meta["m_mean_ground"] = spec.r.value() * (s * s - co * co);

  res.spectrum.method = Method::classical_field;
  res.spectrum.q.resize(two_r + 1);
  res.spectrum.lambda.resize(two_r + 1);
  std::vector<Amplitudes> states;
  states.reserve(static_cast<std::size_t>(two_r + 1));
  for (int j = 0; j <= two_r; ++j) {
    res.spectrum.lambda(j) = -(spec.r.value() - j) * split;
    res.spectrum.q(j) = (spec.c.value() - res.spectrum.lambda(j)) / kappa;
    Amplitudes st;
    st.n_min = 0;  // index L = r - m over the molecular ladder
    st.values = detail::constructed_state(two_r, j, theta);
    st.normalize();
    states.push_back(std::move(st));
  }
  res.states = std::move(states);
  return res;
}

double detuned_lambda(const BlockSpec& spec, int j) {
  validate(spec);
  if (spec.beta == 0.0)
    throw std::domain_error(
        "detuned_lambda: beta = 0; use the resonance closed forms (average-field / modified-TLM)");
  const double kappa = spec.kappa_abs;
  const double abs_det = std::abs(spec.beta) * kappa;  // |Omega - omega| in units of Omega
  const double c = spec.c.value();
  const double r = spec.r.value();
  if (spec.c > spec.r) {
    if (j < 0 || HalfInt(j) > spec.r + spec.r)
      throw std::domain_error("detuned_lambda: j outside 0..2r");
    const double n_o = c;
    return c - abs_det * (r - j) * std::sqrt(1.0 + 4.0 * n_o / (spec.beta * spec.beta));
  }
  if (spec.c < HalfInt(0)) {
    const int cpr = photon_max(spec);
    if (j < 0 || j > cpr) throw std::domain_error("detuned_lambda: j outside 0..c+r");
    const double omega = 1.0 + spec.beta * kappa;
    return omega * c + 0.5 * (r - c) * spec.beta * kappa -
           abs_det * (0.5 * (c + r) - j) * std::sqrt(1.0 + 8.0 * r / (spec.beta * spec.beta));
  }
  throw std::domain_error("detuned_lambda: no closed form for 0 <= c <= r");
}

DecouplingThresholds decoupling_threshold(const BlockSpec& spec) {
  validate(spec);
  DecouplingThresholds th;
  th.beta_high_c = std::sqrt(4.0 * diffeq_params(spec).n_o);  // n_o ~ c for c >> r
  th.beta_low_c = std::sqrt(8.0 * spec.r.value());
  // For beta > 0 (omega > Omega) the ground state pins m = +r, i.e. the
  // lowest photon number in the block; for beta < 0 the highest.
  th.uncoupled_state_index = (spec.beta >= 0.0) ? 0 : block_dim(spec) - 1;
  return th;
}

}  // namespace tavis
