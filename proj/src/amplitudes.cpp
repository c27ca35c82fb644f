#include "tavis/amplitudes.hpp"

#include <algorithm>
#include <cmath>

namespace tavis {

std::vector<std::complex<double>> Amplitudes::with_phase(double phi) const {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(values.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double angle = -phi * static_cast<double>(n_min + k);
    out[static_cast<std::size_t>(k)] = std::polar(values(k), angle);
  }
  return out;
}

double Amplitudes::dot(const Amplitudes& other) const {
  const int lo = std::max(n_min, other.n_min);
  const int hi = std::min(n_min + static_cast<int>(values.size()),
                          other.n_min + static_cast<int>(other.values.size()));
  double acc = 0.0;
  for (int n = lo; n < hi; ++n) acc += values(n - n_min) * other.values(n - other.n_min);
  return acc;
}

}  // namespace tavis
