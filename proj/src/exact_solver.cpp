#include "tavis/exact_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tavis/errors.hpp"
#include "tavis/tridiagonal.hpp"

namespace tavis {

namespace {

constexpr int kMaxPolyDim = 120;
constexpr int kMaxOracleDim = 10000;
constexpr double kRescaleThreshold = 1e250;
constexpr double kRescaleFactor = 0x1p-512;

// Ccal_t = (t + alpha) C^2_{r, c - (t + alpha)}; Ccal_0 = 0 identically.
std::vector<double> curly_weights(const BlockSpec& spec, int dim, int alpha) {
  std::vector<double> w(static_cast<std::size_t>(dim), 0.0);
  for (int t = 1; t < dim; ++t) {
    const int n = alpha + t;
    const double C = coupling_C(spec.r, spec.c - HalfInt(n));
    w[static_cast<std::size_t>(t)] = static_cast<double>(n) * C * C;
  }
  return w;
}

detail::RecursionPoly make_recursion(const BlockSpec& spec, std::vector<double> weights,
                                     double beta) {
  detail::RecursionPoly poly;
  poly.dim = static_cast<int>(weights.size());
  poly.alpha = static_cast<double>(photon_min(spec));
  double s = 1.0;
  for (double w : weights) s = std::max(s, w);
  poly.sqrt_scale = std::sqrt(s);
  poly.beta_hat = beta / poly.sqrt_scale;
  for (double& w : weights) w /= s;
  poly.c_hat = std::move(weights);
  return poly;
}

// Seeds from the harmonic (differential-equation) approximation, mirrored
// about zero; only used at beta = 0 where the spectrum is symmetric.
std::vector<double> harmonic_seeds(const BlockSpec& spec, int dim) {
  const double x = spec.c.value() + 0.5;
  const double y = spec.r.value() + 0.5;
  const double root = std::sqrt(3.0 * y * y + x * x);
  const double n_o = (2.0 * x + root) / 3.0;
  const double alpha2 = 4.0 * root;
  const double alpha1 = std::max(0.0, 4.0 * n_o * (y * y - (x - n_o) * (x - n_o)));
  std::vector<double> seeds;
  seeds.reserve(static_cast<std::size_t>(dim));
  const int half = dim / 2;
  for (int j = 0; j < half; ++j) {
    const double a = (j + 0.5);
    seeds.push_back(-std::sqrt(alpha2) * a + std::sqrt(a * a * alpha2 + alpha1));
  }
  if (dim % 2 == 1) seeds.push_back(0.0);
  for (int j = half - 1; j >= 0; --j) seeds.push_back(-seeds[static_cast<std::size_t>(j)]);
  return seeds;
}

}  // namespace

namespace detail {

RecursionPoly exact_recursion(const BlockSpec& spec) {
  const int dim = block_dim(spec);
  const int alpha = photon_min(spec);
  return make_recursion(spec, curly_weights(spec, dim, alpha), spec.beta);
}

RecursionPoly avgfield_recursion(const BlockSpec& spec) {
  const int dim = block_dim(spec);
  const int alpha = photon_min(spec);
  std::vector<double> w(static_cast<std::size_t>(dim), 0.0);
  for (int t = 1; t < dim; ++t) {
    const double C = coupling_C(spec.r, spec.c - HalfInt(alpha + t));
    w[static_cast<std::size_t>(t)] = C * C;
  }
  return make_recursion(spec, std::move(w), 0.0);
}

std::pair<double, double> RecursionPoly::eval(double q_hat) const {
  double prev = 0.0, cur = 1.0;
  double dprev = 0.0, dcur = 0.0;
  for (int t = 0; t < dim; ++t) {
    const double lin = q_hat + (alpha + t) * beta_hat;
    const double w = c_hat[static_cast<std::size_t>(t)];
    double next = lin * cur - w * prev;
    double dnext = lin * dcur + cur - w * dprev;
    if (std::abs(next) > kRescaleThreshold) {
      next *= kRescaleFactor;
      cur *= kRescaleFactor;
      dnext *= kRescaleFactor;
      dcur *= kRescaleFactor;
    }
    prev = cur;
    cur = next;
    dprev = dcur;
    dcur = dnext;
  }
  return {cur, dcur};
}

int RecursionPoly::count_above(double q_hat) const {
  double prev = 1.0;  // B_0
  int sign_prev = 1;
  double cur;
  int changes = 0;
  double back = 0.0;
  for (int t = 0; t < dim; ++t) {
    const double lin = q_hat + (alpha + t) * beta_hat;
    const double w = c_hat[static_cast<std::size_t>(t)];
    cur = lin * prev - w * back;
    if (std::abs(cur) > kRescaleThreshold) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
    }
    int sign_cur = (cur > 0.0) ? 1 : (cur < 0.0 ? -1 : -sign_prev);
    if (sign_cur != sign_prev) ++changes;
    sign_prev = sign_cur;
    back = prev;
    prev = cur;
  }
  return changes;
}

double RecursionPoly::root_bound() const {
  double bound = 0.0;
  for (int t = 0; t < dim; ++t) {
    double row = std::abs((alpha + t) * beta_hat);
    if (t >= 1) row += std::sqrt(c_hat[static_cast<std::size_t>(t)]);
    if (t + 1 < dim) row += std::sqrt(c_hat[static_cast<std::size_t>(t + 1)]);
    bound = std::max(bound, row);
  }
  return bound;
}

namespace {

// Isolates the roots by bisection on the Givens count of the minor sequence
// and returns one interior point per root (scaled units).
std::vector<double> isolate_roots(const RecursionPoly& poly) {
  const int dim = poly.dim;
  const double bound = poly.root_bound() * (1.0 + 1e-12) + 1e-12;
  struct Interval {
    double lo, hi;
    int above_lo, above_hi;  // count_above at each end
  };
  std::vector<double> seeds;
  seeds.reserve(static_cast<std::size_t>(dim));
  std::vector<Interval> stack{{-bound, bound, dim, 0}};
  const double min_width = 2.0 * bound * 1e-6 + 1e-300;
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const int inside = iv.above_lo - iv.above_hi;
    if (inside <= 0) continue;
    if (inside == 1 || (iv.hi - iv.lo) <= min_width) {
      for (int i = 0; i < inside; ++i) seeds.push_back(0.5 * (iv.lo + iv.hi));
      continue;
    }
    const double mid = 0.5 * (iv.lo + iv.hi);
    const int above_mid = poly.count_above(mid);
    stack.push_back({iv.lo, mid, iv.above_lo, above_mid});
    stack.push_back({mid, iv.hi, above_mid, iv.above_hi});
  }
  std::sort(seeds.begin(), seeds.end(), std::greater<double>());
  return seeds;
}

}  // namespace

std::vector<double> newton_roots(const RecursionPoly& poly, std::vector<double> seeds,
                                 bool strict_polish) {
  const int dim = poly.dim;
  const double ss = poly.sqrt_scale;

  std::vector<double> scaled;
  scaled.reserve(static_cast<std::size_t>(dim));
  for (double s : seeds) scaled.push_back(s / ss);
  if (static_cast<int>(scaled.size()) != dim) scaled = isolate_roots(poly);
  std::sort(scaled.begin(), scaled.end(), std::greater<double>());

  const double bound = poly.root_bound() + 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(dim));

  for (int i = 0; i < dim; ++i) {
    double x = scaled[static_cast<std::size_t>(i)];
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      auto [p, dp] = poly.eval(x);
      if (p == 0.0) {
        converged = true;
        break;
      }
      double denom = dp;
      for (double r : roots) {
        const double gap = x - r;
        if (gap == 0.0) {
          denom = std::numeric_limits<double>::infinity();
          break;
        }
        denom -= p / gap;
      }
      if (denom == 0.0 || !std::isfinite(denom)) {
        x += (1e-9 + 1e-9 * std::abs(x)) * ((iter % 2 == 0) ? 1.0 : -1.0);
        continue;
      }
      double dx = p / denom;
      if (std::abs(dx) > bound) dx = (dx > 0 ? bound : -bound);
      x -= dx;
      if (std::abs(x) > 2.0 * bound) x = (x > 0 ? bound : -bound);
      if (std::abs(dx) <= 4.0 * eps * std::max(1.0, std::abs(x))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw numerical_error("newton_roots: no convergence for root " + std::to_string(i) +
                            " after 200 iterations");
    roots.push_back(x);
  }

  if (strict_polish) {
    // Final iterations on the undeflated polynomial.
    for (double& x : roots) {
      double last_dx = 0.0;
      for (int iter = 0; iter < 4; ++iter) {
        auto [p, dp] = poly.eval(x);
        if (p == 0.0 || dp == 0.0) {
          last_dx = 0.0;
          break;
        }
        last_dx = p / dp;
        if (std::abs(last_dx) > 1.0) break;  // drifting off: keep deflated value
        x -= last_dx;
        if (std::abs(last_dx) <= 4.0 * eps * std::max(1.0, std::abs(x))) break;
      }
      if (std::abs(last_dx) > 1e-12 * std::max(1.0, std::abs(x)))
        throw numerical_error("newton_roots: polish stalled, |dq| = " + std::to_string(last_dx),
                              std::abs(last_dx));
    }
  }

  std::sort(roots.begin(), roots.end(), std::greater<double>());
  for (int i = 0; i + 1 < dim; ++i) {
    const double gap = roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(i + 1)];
    if (!(gap > 1e-10 * std::max(1.0, std::abs(roots[static_cast<std::size_t>(i)]))))
      throw numerical_error("newton_roots: two iterates collapsed onto one root (missed root)");
  }

  for (double& r : roots) r *= ss;
  return roots;
}

}  // namespace detail

std::vector<double> CharPoly::unscaled_coeffs() const {
  std::vector<double> out(coeffs.size());
  const int deg = degree();
  for (int k = 0; k <= deg; ++k)
    out[static_cast<std::size_t>(k)] =
        coeffs[static_cast<std::size_t>(k)] * std::pow(scale, 0.5 * (deg - k));
  return out;
}

CharPoly char_poly(const BlockSpec& spec) {
  const int dim = block_dim(spec);
  if (dim > kMaxPolyDim)
    throw std::domain_error("char_poly: dimension " + std::to_string(dim) +
                            " exceeds " + std::to_string(kMaxPolyDim) + "; use the oracle path");
  const auto poly = detail::exact_recursion(spec);

  using Poly = std::vector<double>;  // ascending coefficients; empty = zero
  const auto mul_linear = [](const Poly& p, double k) {
    if (p.empty()) return Poly{};
    Poly out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      out[i + 1] += p[i];
      out[i] += k * p[i];
    }
    return out;
  };
  const auto add_scaled = [](Poly& acc, const Poly& p, double w) {
    if (p.empty() || w == 0.0) return;
    if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += w * p[i];
  };

  const int tprime = dim;
  // S tables indexed by t = -1 .. tprime-1 (offset +1).
  std::vector<Poly> Sprev(static_cast<std::size_t>(tprime + 1)), Scur(Sprev.size());
  Sprev[0] = Poly{1.0};  // S_0^{-1} = 1
  for (int t = 0; t < tprime; ++t)
    Sprev[static_cast<std::size_t>(t + 1)] =
        mul_linear(Sprev[static_cast<std::size_t>(t)], (poly.alpha + t) * poly.beta_hat);

  Poly B = Sprev[static_cast<std::size_t>(tprime)];
  double sign = -1.0;
  const int lmax = tprime / 2;
  for (int l = 1; l <= lmax; ++l) {
    for (std::size_t i = 0; i < Scur.size(); ++i) Scur[i].clear();
    for (int t = 2 * l - 1; t < tprime; ++t) {
      Poly term = mul_linear(Scur[static_cast<std::size_t>(t)], (poly.alpha + t) * poly.beta_hat);
      add_scaled(term, Sprev[static_cast<std::size_t>(t - 1)],
                 poly.c_hat[static_cast<std::size_t>(t)]);
      Scur[static_cast<std::size_t>(t + 1)] = std::move(term);
    }
    add_scaled(B, Scur[static_cast<std::size_t>(tprime)], sign);
    sign = -sign;
    std::swap(Sprev, Scur);
  }

  B.resize(static_cast<std::size_t>(tprime + 1), 0.0);
  for (double v : B)
    if (!std::isfinite(v))
      throw numerical_error("char_poly: non-finite coefficient despite scaling");

  CharPoly out;
  out.coeffs = std::move(B);
  out.scale = poly.sqrt_scale * poly.sqrt_scale;
  return out;
}

Spectrum solve_spectrum(const BlockSpec& spec, const SolveOptions& options) {
  validate(spec);
  const int dim = block_dim(spec);
  if (dim == 1)
    return make_spectrum(spec, {-spec.beta * photon_min(spec)}, Method::exact_poly);
  if (dim > kMaxOracleDim)
    throw std::domain_error("solve_spectrum: dimension " + std::to_string(dim) + " exceeds " +
                            std::to_string(kMaxOracleDim));
  if (dim > kMaxPolyDim)
    return make_spectrum(spec, sturm_eigenvalues(build_tridiagonal(spec)), Method::oracle);

  char_poly(spec);  // coefficient table must be constructible (overflow guard)
  const auto poly = detail::exact_recursion(spec);

  std::vector<double> seeds = options.seeds;
  if (seeds.empty()) {
    if (spec.beta == 0.0)
      seeds = harmonic_seeds(spec, dim);
    else if (dim > 40)
      seeds = sturm_eigenvalues(build_tridiagonal(spec));
    // otherwise newton_roots isolates the roots itself
  }

  try {
    return make_spectrum(spec, detail::newton_roots(poly, std::move(seeds), options.strict),
                         Method::exact_poly);
  } catch (const numerical_error&) {
    return make_spectrum(spec, sturm_eigenvalues(build_tridiagonal(spec)), Method::oracle);
  }
}

namespace {

void rescale_if_needed(Eigen::VectorXd& v, int upto, double& current) {
  if (std::abs(current) > kRescaleThreshold) {
    for (int i = 0; i <= upto; ++i) v(i) *= kRescaleFactor;
    current *= kRescaleFactor;
  }
}

double peak_position(const BlockSpec& spec) {
  const double x = spec.c.value() + 0.5;
  const double y = spec.r.value() + 0.5;
  return (2.0 * x + std::sqrt(3.0 * y * y + x * x)) / 3.0;
}

}  // namespace

Amplitudes eigenvector(const BlockSpec& spec, double q_j) {
  validate(spec);
  const int dim = block_dim(spec);
  const int alpha = photon_min(spec);
  Amplitudes amp;
  amp.n_min = alpha;
  if (dim == 1) {
    amp.values = Eigen::VectorXd::Ones(1);
    return amp;
  }

  // Couplings: up[k] = sqrt(n+1) C_{r,c-n-1}, down[k] = sqrt(n) C_{r,c-n}, n = alpha + k.
  Eigen::VectorXd up(dim), down(dim);
  for (int k = 0; k < dim; ++k) {
    const int n = alpha + k;
    up(k) = (k + 1 < dim) ? std::sqrt(double(n + 1)) * coupling_C(spec.r, spec.c - HalfInt(n + 1))
                          : 0.0;
    down(k) = (k > 0) ? std::sqrt(double(n)) * coupling_C(spec.r, spec.c - HalfInt(n)) : 0.0;
  }

  Eigen::VectorXd fwd(dim);
  fwd(0) = 1.0;
  for (int k = 0; k + 1 < dim; ++k) {
    const int n = alpha + k;
    const double prev = (k > 0) ? fwd(k - 1) : 0.0;
    fwd(k + 1) = ((q_j + spec.beta * n) * fwd(k) - down(k) * prev) / up(k);
    double cur = fwd(k + 1);
    rescale_if_needed(fwd, k + 1, cur);
    fwd(k + 1) = cur;
  }

  Eigen::VectorXd vec(dim);
  if (dim == 2) {
    vec = fwd;
  } else {
    Eigen::VectorXd bwd(dim);
    bwd(dim - 1) = 1.0;
    for (int k = dim - 1; k > 0; --k) {
      const int n = alpha + k;
      const double next = (k + 1 < dim) ? bwd(k + 1) : 0.0;
      bwd(k - 1) = ((q_j + spec.beta * n) * bwd(k) - up(k) * next) / down(k);
      // rescale suffix
      if (std::abs(bwd(k - 1)) > kRescaleThreshold)
        for (int i = dim - 1; i >= k - 1; --i) bwd(i) *= kRescaleFactor;
    }

    const double fmax = fwd.cwiseAbs().maxCoeff();
    const double bmax = bwd.cwiseAbs().maxCoeff();
    int k_match =
        std::clamp(static_cast<int>(std::lround(peak_position(spec))) - alpha, 1, dim - 2);
    // Both branches must be alive at the junction; a vanishing component
    // there (q = 0 states have exact zeros) forces a better interior index.
    auto score = [&](int k) {
      return (std::abs(fwd(k)) / fmax) * (std::abs(bwd(k)) / bmax);
    };
    if (score(k_match) < 1e-12) {
      int best = -1;
      double best_score = 0.0;
      for (int k = 1; k <= dim - 2; ++k)
        if (score(k) > best_score) {
          best_score = score(k);
          best = k;
        }
      k_match = best;
    }
    if (k_match < 0) {
      vec = fwd;  // forward recursion terminated finite; residual check decides
    } else {
      const double ratio = fwd(k_match) / bwd(k_match);
      for (int k = 0; k < dim; ++k) vec(k) = (k <= k_match) ? fwd(k) : bwd(k) * ratio;
    }
  }

  const double nrm = vec.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw numerical_error("eigenvector: recursion produced a non-normalizable vector");
  vec /= nrm;

  int k_sign = std::clamp(static_cast<int>(std::lround(peak_position(spec))) - alpha, 1,
                          std::max(dim - 2, 1));
  if (dim == 2 || std::abs(vec(k_sign)) < 1e-12 * vec.cwiseAbs().maxCoeff()) {
    Eigen::Index imax = 0;
    vec.cwiseAbs().maxCoeff(&imax);
    k_sign = static_cast<int>(imax);
  }
  if (vec(k_sign) < 0.0) vec = -vec;

  const TridiagMatrix T = build_tridiagonal(spec);
  const double residual = (T.apply(vec) - q_j * vec).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-8))
    throw numerical_error("eigenvector: residual " + std::to_string(residual) +
                          " exceeds 1e-8 at q = " + std::to_string(q_j),
                          residual);

  amp.values = std::move(vec);
  return amp;
}

Amplitudes zero_q_eigenvector(const BlockSpec& spec) {
  validate(spec);
  const int dim = block_dim(spec);
  if (spec.beta != 0.0)
    throw std::domain_error("zero_q_eigenvector: requires beta = 0");
  if (dim % 2 == 0)
    throw std::domain_error(
        "zero_q_eigenvector: q = 0 is not in the spectrum of an even-dimension block");
  const int alpha = photon_min(spec);
  const auto curly = curly_weights(spec, dim, alpha);

  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v(0) = 1.0;
  for (int t = 0; t + 2 < dim; t += 2)
    v(t + 2) = -v(t) * std::sqrt(curly[static_cast<std::size_t>(t + 1)] /
                                 curly[static_cast<std::size_t>(t + 2)]);
  v.normalize();

  Amplitudes amp;
  amp.n_min = alpha;
  amp.values = std::move(v);
  return amp;
}

EigenSystem full_eigensystem(const BlockSpec& spec, const SolveOptions& options) {
  EigenSystem sys;
  sys.spec = spec;
  sys.spectrum = solve_spectrum(spec, options);
  const int dim = static_cast<int>(sys.spectrum.size());
  const int alpha = photon_min(spec);
  const double c = spec.c.value();

  sys.vectors.reserve(static_cast<std::size_t>(dim));
  sys.observables.reserve(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    Amplitudes amp;
    try {
      amp = eigenvector(spec, sys.spectrum.q(j));
    } catch (const numerical_error&) {
      const auto inv = inverse_iteration(build_tridiagonal(spec), sys.spectrum.q(j));
      amp.n_min = alpha;
      amp.values = inv.vector;
    }
    EigenSystem::Observables obs;
    for (int k = 0; k < dim; ++k) {
      const double w = amp.values(k) * amp.values(k);
      const double n = alpha + k;
      obs.n_mean += w * n;
      obs.m_mean += w * (c - n);
      obs.n_var += w * n * n;
    }
    obs.n_var -= obs.n_mean * obs.n_mean;
    sys.vectors.push_back(std::move(amp));
    sys.observables.push_back(obs);
  }
  return sys;
}

}  // namespace tavis
