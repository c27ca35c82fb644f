#include "tavis/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tavis/errors.hpp"

namespace tavis {

Eigen::VectorXd TridiagMatrix::apply(const Eigen::VectorXd& x) const {
  const Eigen::Index n = dim();
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = diag(i) * x(i);
    if (i > 0) v += offdiag(i - 1) * x(i - 1);
    if (i + 1 < n) v += offdiag(i) * x(i + 1);
    y(i) = v;
  }
  return y;
}

TridiagMatrix build_tridiagonal(const BlockSpec& spec) {
  const int dim = block_dim(spec);
  const int alpha = photon_min(spec);
  TridiagMatrix T;
  T.diag.resize(dim);
  T.offdiag.resize(std::max(dim - 1, 0));
  for (int k = 0; k < dim; ++k) {
    const int n = alpha + k;
    T.diag(k) = -spec.beta * n;
    if (k < dim - 1) {
      const HalfInt m_next = spec.c - HalfInt(n + 1);  // c - n - 1
      T.offdiag(k) = std::sqrt(static_cast<double>(n + 1)) * coupling_C(spec.r, m_next);
    }
  }
  return T;
}

std::pair<double, double> gershgorin_interval(const TridiagMatrix& T) {
  const Eigen::Index n = T.dim();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(T.offdiag(i - 1));
    if (i + 1 < n) radius += std::abs(T.offdiag(i));
    lo = std::min(lo, T.diag(i) - radius);
    hi = std::max(hi, T.diag(i) + radius);
  }
  return {lo, hi};
}

int sturm_count_below(const TridiagMatrix& T, double x) {
  const Eigen::Index n = T.dim();
  double bmax2 = 1.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) bmax2 = std::max(bmax2, T.offdiag(i) * T.offdiag(i));
  const double pivmin = std::numeric_limits<double>::min() * bmax2;

  int count = 0;
  double d = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b2 = (i > 0) ? T.offdiag(i - 1) * T.offdiag(i - 1) : 0.0;
    d = T.diag(i) - x - b2 / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

double bisect_index(const TridiagMatrix& T, int ascending_index, double lo, double hi) {
  // Invariant: count(lo) <= k < count(hi), k = ascending_index.
  const int k = ascending_index;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval exhausted at this precision
    if (sturm_count_below(T, mid) <= k)
      lo = mid;
    else
      hi = mid;
    const double tol =
        4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= tol) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double sturm_eigenvalue_desc(const TridiagMatrix& T, int k) {
  const int n = static_cast<int>(T.dim());
  if (k < 0 || k >= n) throw std::domain_error("sturm_eigenvalue_desc: index out of range");
  if (n == 1) return T.diag(0);
  auto [lo, hi] = gershgorin_interval(T);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return bisect_index(T, n - 1 - k, lo - pad, hi + pad);
}

std::vector<double> sturm_eigenvalues(const TridiagMatrix& T) {
  const int n = static_cast<int>(T.dim());
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = T.diag(0);
    return out;
  }
  auto [lo, hi] = gershgorin_interval(T);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = bisect_index(T, n - 1 - k, lo - pad, hi + pad);
  return out;
}

namespace {

// One solve of (T - mu I) x = rhs by Gaussian elimination with partial
// pivoting on the three-band form. Returns false on an exactly zero pivot.
bool shifted_solve(const TridiagMatrix& T, double mu, Eigen::VectorXd& x) {
  const Eigen::Index n = T.dim();
  Eigen::VectorXd a(n), b(std::max<Eigen::Index>(n - 1, 0)), c2(std::max<Eigen::Index>(n - 2, 0));
  Eigen::VectorXd lower(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i < n; ++i) a(i) = T.diag(i) - mu;
  for (Eigen::Index i = 0; i + 1 < n; ++i) b(i) = T.offdiag(i);
  for (Eigen::Index i = 0; i + 2 < n; ++i) c2(i) = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) lower(i) = T.offdiag(i);

  std::vector<bool> swapped(static_cast<std::size_t>(std::max<Eigen::Index>(n - 1, 0)), false);
  Eigen::VectorXd mult(std::max<Eigen::Index>(n - 1, 0));

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(lower(i)) > std::abs(a(i))) {
      swapped[static_cast<std::size_t>(i)] = true;
      std::swap(a(i), lower(i));
      // After the row swap the former diagonal row supplies the upper bands.
      std::swap(b(i), a(i + 1));
      if (i + 2 < n) std::swap(c2(i), b(i + 1));
      // rhs swap is applied during substitution
    }
    if (a(i) == 0.0) return false;
    const double m = lower(i) / a(i);
    mult(i) = m;
    a(i + 1) -= m * b(i);
    if (i + 2 < n) b(i + 1) -= m * c2(i);
  }
  if (a(n - 1) == 0.0) return false;

  // forward pass on rhs
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (swapped[static_cast<std::size_t>(i)]) std::swap(x(i), x(i + 1));
    x(i + 1) -= mult(i) * x(i);
  }
  // back substitution
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    double v = x(i);
    if (i + 1 < n) v -= b(i) * x(i + 1);
    if (i + 2 < n) v -= c2(i) * x(i + 2);
    x(i) = v / a(i);
    if (i == 0) break;
  }
  return true;
}

}  // namespace

InverseIterationResult inverse_iteration(const TridiagMatrix& T, double mu) {
  const Eigen::Index n = T.dim();
  InverseIterationResult res;
  if (n == 1) {
    res.vector = Eigen::VectorXd::Ones(1);
    res.mu_refined = T.diag(0);
    res.residual = 0.0;
    return res;
  }
  auto [glo, ghi] = gershgorin_interval(T);
  const double scale = std::max({std::abs(glo), std::abs(ghi), 1.0});

  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double mu_work = mu;
  double residual = std::numeric_limits<double>::infinity();
  double mu_ref = mu;

  for (int attempt = 0; attempt < 8; ++attempt) {
    bool ok = true;
    for (int iter = 0; iter < 6; ++iter) {
      Eigen::VectorXd x = v;
      if (!shifted_solve(T, mu_work, x)) {
        ok = false;
        break;
      }
      const double nrm = x.norm();
      if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        ok = false;
        break;
      }
      v = x / nrm;
      mu_ref = v.dot(T.apply(v));
      residual = (T.apply(v) - mu_ref * v).lpNorm<Eigen::Infinity>();
      if (residual <= 1e-13 * scale) break;
    }
    if (ok && std::isfinite(residual)) break;
    mu_work += 1e-13 * scale * (attempt + 1);  // singular shift: perturb and retry
    v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  }

  if (!std::isfinite(residual))
    throw numerical_error("inverse_iteration: failed to converge at shift " + std::to_string(mu));

  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;

  res.vector = v;
  res.mu_refined = mu_ref;
  res.residual = residual;
  return res;
}

}  // namespace tavis
