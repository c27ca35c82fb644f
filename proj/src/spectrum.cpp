#include "tavis/spectrum.hpp"

#include <algorithm>

namespace tavis {

std::string to_string(Method m) {
  switch (m) {
    case Method::exact_poly: return "exact-poly";
    case Method::oracle: return "oracle";
    case Method::diffeq: return "diffeq";
    case Method::avgfield_poly: return "avgfield-poly";
    case Method::avgfield_closed: return "avgfield-closed";
    case Method::modtlm: return "modtlm";
    case Method::modtlm_corrected: return "modtlm-corrected";
    case Method::avgtlm: return "avgtlm";
    case Method::classical_tlm: return "classical-tlm";
    case Method::classical_field: return "classical-field";
    case Method::detuned_high_c: return "detuned-high-c";
    case Method::detuned_low_c: return "detuned-low-c";
  }
  return "unknown";
}

Spectrum make_spectrum(const BlockSpec& spec, std::vector<double> q_values, Method method) {
  std::sort(q_values.begin(), q_values.end(), std::greater<double>());
  Spectrum s;
  s.method = method;
  s.q.resize(static_cast<Eigen::Index>(q_values.size()));
  s.lambda.resize(s.q.size());
  const double c = spec.c.value();
  for (Eigen::Index i = 0; i < s.q.size(); ++i) {
    s.q(i) = q_values[static_cast<std::size_t>(i)];
    s.lambda(i) = c - spec.kappa_abs * s.q(i);
  }
  return s;
}

}  // namespace tavis
