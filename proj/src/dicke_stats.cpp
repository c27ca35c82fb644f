#include "tavis/dicke_stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tavis/block_spec.hpp"

namespace tavis {

namespace {

void check(const ThermalEnsemble& e) {
  if (e.N < 1) throw std::domain_error("ThermalEnsemble: N must be >= 1");
  if (!std::isfinite(e.beta_t)) throw std::domain_error("ThermalEnsemble: beta_t must be finite");
}

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double thermal_inversion(const ThermalEnsemble& e) {
  check(e);
  return -(e.N / 2.0) * std::tanh(e.beta_t / 2.0);
}

double thermal_m_variance(const ThermalEnsemble& e) {
  check(e);
  const double m = thermal_inversion(e);
  return e.N / 4.0 - m * m / e.N;
}

namespace {

void check_m(int N, HalfInt m) {
  if (N < 1) throw std::domain_error("N must be >= 1");
  if (std::abs(m.doubled()) > N)
    throw std::domain_error("need |m| <= N/2, got m = " + to_decimal_string(m));
  if ((m.doubled() - N) % 2 != 0)
    throw std::domain_error("parity violation: 2m = " + std::to_string(m.doubled()) +
                            " vs N = " + std::to_string(N));
}

}  // namespace

double mean_r_r1_given_m(int N, HalfInt m) {
  check_m(N, m);
  const double mv = m.value();
  return mv * mv + N / 2.0;
}

double var_r_r1_given_m(int N, HalfInt m) {
  check_m(N, m);
  const double mv = m.value();
  return N * N / 4.0 - mv * mv;
}

BruteThermalStats brute_thermal_stats(const ThermalEnsemble& e) {
  check(e);
  if (e.N > 40) throw std::domain_error("brute_thermal_stats: N > 40 refused (enumeration cost)");
  const int N = e.N;

  // r runs N/2, N/2 - 1, ... down to 0 or 1/2; all values share N's parity.
  std::vector<HalfInt> rs;
  for (std::int64_t d = N; d >= N % 2; d -= 2) rs.push_back(HalfInt::from_doubled(d));

  Kahan z, zm, zm2;
  for (HalfInt r : rs) {
    const double P = degeneracy_P(N, r).convert_to<double>();
    for (std::int64_t dm = -r.doubled(); dm <= r.doubled(); dm += 2) {
      const double m = 0.5 * static_cast<double>(dm);
      const double w = P * std::exp(-m * e.beta_t);
      z.add(w);
      zm.add(w * m);
      zm2.add(w * m * m);
    }
  }

  BruteThermalStats out;
  out.partition = z.sum;
  out.m_mean = zm.sum / z.sum;
  out.m_var = zm2.sum / z.sum - out.m_mean * out.m_mean;

  // Conditional r(r+1) statistics at fixed m use the bare P(r) weights.
  for (std::int64_t dm = -N; dm <= N; dm += 2) {
    Kahan w, wr, wr2;
    for (HalfInt r : rs) {
      if (r.doubled() < std::abs(dm)) continue;
      const double P = degeneracy_P(N, r).convert_to<double>();
      const double rr1 = r.value() * (r.value() + 1.0);
      w.add(P);
      wr.add(P * rr1);
      wr2.add(P * rr1 * rr1);
    }
    const double mean = wr.sum / w.sum;
    out.r_r1_mean_by_m[dm] = mean;
    out.r_r1_var_by_m[dm] = wr2.sum / w.sum - mean * mean;
  }
  return out;
}

}  // namespace tavis
