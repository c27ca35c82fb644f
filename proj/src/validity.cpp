#include "tavis/validity.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "tavis/approximations.hpp"
#include "tavis/errors.hpp"
#include "tavis/exact_solver.hpp"

namespace tavis {

CubicPerturbedQ cubic_perturbed_q(const BlockSpec& spec, int j) {
  if (j < 0) throw std::domain_error("cubic_perturbed_q: j must be >= 0");
  const auto p = diffeq_params(spec);
  const double poly_j = 30.0 * j * j + 30.0 * j + 11.0;
  const double margin = poly_j / (4.0 * p.alpha2 * p.alpha2);

  CubicPerturbedQ out;
  out.report.criterion = ValidityReport::Criterion::cubic_C10;
  out.report.margin = margin;
  out.report.satisfied = margin < 1.0;
  out.report.detail["alpha1"] = p.alpha1;
  out.report.detail["alpha2"] = p.alpha2;
  out.report.detail["j"] = j;

  const double denom = 1.0 - margin;
  if (!(denom > 0.0))
    throw std::domain_error("cubic_perturbed_q: correction denominator 1 - margin <= 0 (margin = " +
                            std::to_string(margin) + ")");
  const double a = j + 0.5;
  out.q = (-std::sqrt(p.alpha2) * a + std::sqrt(p.alpha2 * a * a + p.alpha1 * denom)) / denom;
  return out;
}

ValidityReport doubling_validity(const BlockSpec& spec) {
  const Spectrum s = solve_spectrum(spec);
  ValidityReport rep;
  rep.criterion = ValidityReport::Criterion::doubling_E5;
  rep.margin = spec.kappa_abs * s.q(0) / 2.0;
  rep.satisfied = rep.margin < 1.0;
  rep.detail["q0"] = s.q(0);
  rep.detail["kappa"] = spec.kappa_abs;
  return rep;
}

namespace {

std::optional<EigenSystem> sector(const BlockSpec& spec, int dc) {
  BlockSpec shifted = spec;
  shifted.c = spec.c + HalfInt(dc);
  if (shifted.c < -shifted.r) return std::nullopt;
  return full_eigensystem(shifted);
}

}  // namespace

double doubling_W2(const BlockSpec& spec, int j) {
  validate(spec);
  if (spec.beta != 0.0) throw std::domain_error("doubling_W2: derived for beta = 0");
  const EigenSystem base = full_eigensystem(spec);
  const int dim = static_cast<int>(base.spectrum.size());
  if (j < 0 || j >= dim) throw std::domain_error("doubling_W2: j out of range");
  const double kappa = spec.kappa_abs;

  double total = 0.0;

  // a^dag R_+ couples to the (r, c-2) sector: element
  //   sum_n' A^{(c)}_{n'+1} A^{(c-2)}_{n'} sqrt(n'+1) C_{r, c-2-n'}.
  if (auto low = sector(spec, -2)) {
    for (int jp = 0; jp < static_cast<int>(low->spectrum.size()); ++jp) {
      double M = 0.0;
      const auto& vl = low->vectors[static_cast<std::size_t>(jp)];
      const auto& vc = base.vectors[static_cast<std::size_t>(j)];
      for (int i = 0; i < vl.size(); ++i) {
        const int np = vl.n_min + i;  // photon index in the c-2 block
        const int k = np + 1 - vc.n_min;
        if (k < 0 || k >= vc.size()) continue;
        M += vc.values(k) * vl.values(i) * std::sqrt(static_cast<double>(np + 1)) *
             coupling_C(spec.r, spec.c - HalfInt(2) - HalfInt(np));
      }
      const double den = 2.0 - kappa * (base.spectrum.q(j) - low->spectrum.q(jp));
      if (std::abs(den) < 1e-9)
        throw numerical_error("doubling_W2: degenerate denominator at (j' = " +
                              std::to_string(jp) + ", c' = c-2)");
      total += M * M / den;
    }
  }

  // a R_- couples to the (r, c+2) sector: element
  //   sum_n A^{(c)}_n A^{(c+2)}_{n+1} sqrt(n+1) C_{r, c-n}.
  if (auto high = sector(spec, +2)) {
    for (int jp = 0; jp < static_cast<int>(high->spectrum.size()); ++jp) {
      double M = 0.0;
      const auto& vh = high->vectors[static_cast<std::size_t>(jp)];
      const auto& vc = base.vectors[static_cast<std::size_t>(j)];
      for (int i = 0; i < vc.size(); ++i) {
        const int n = vc.n_min + i;
        const int k = n + 1 - vh.n_min;
        if (k < 0 || k >= vh.size()) continue;
        M += vc.values(i) * vh.values(k) * std::sqrt(static_cast<double>(n + 1)) *
             coupling_C(spec.r, spec.c - HalfInt(n));
      }
      const double den = 2.0 - kappa * (high->spectrum.q(jp) - base.spectrum.q(j));
      if (std::abs(den) < 1e-9)
        throw numerical_error("doubling_W2: degenerate denominator at (j'' = " +
                              std::to_string(jp) + ", c' = c+2)");
      total -= M * M / den;
    }
  }

  return kappa * kappa * total;
}

}  // namespace tavis
