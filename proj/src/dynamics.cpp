#include "tavis/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tavis/block_spec.hpp"
#include "tavis/exact_solver.hpp"

namespace tavis {

namespace {

constexpr int kMaxMolecules = 8;
constexpr int kMaxCutoff = 40;

struct FieldMatrix {
  // <n| rho_f(0) |n'> = diag(n) delta_{nn'} + amp(n) amp(n') for pure states.
  Eigen::VectorXd diag;  // diagonal weights (thermal / fock)
  Eigen::VectorXd amp;   // pure-state amplitudes (coherent); empty if diagonal
  int cutoff = 0;

  double element(int n, int np) const {
    if (n < 0 || np < 0 || n > cutoff || np > cutoff) return 0.0;
    if (amp.size() > 0) return amp(n) * amp(np);
    return (n == np) ? diag(n) : 0.0;
  }
};

FieldMatrix make_field(const FieldInit& init) {
  FieldMatrix f;
  if (const auto* fock = std::get_if<FockField>(&init)) {
    if (fock->n0 < 0 || fock->n0 > kMaxCutoff)
      throw std::domain_error("dynamics: Fock n0 outside 0..40 (cost guard)");
    f.cutoff = fock->n0;
    f.diag = Eigen::VectorXd::Zero(f.cutoff + 1);
    f.diag(fock->n0) = 1.0;
  } else if (const auto* coh = std::get_if<CoherentField>(&init)) {
    const double mean = coh->amplitude * coh->amplitude;
    if (coh->cutoff > kMaxCutoff)
      throw std::domain_error("dynamics: coherent cutoff exceeds 40 (cost guard)");
    if (coh->cutoff < 5.0 * mean)
      throw std::domain_error("dynamics: coherent cutoff must be >= 5 x mean photon number");
    f.cutoff = coh->cutoff;
    f.amp.resize(f.cutoff + 1);
    double log_fact = 0.0;
    for (int n = 0; n <= f.cutoff; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      f.amp(n) = (coh->amplitude == 0.0)
                     ? (n == 0 ? 1.0 : 0.0)
                     : std::exp(n * std::log(std::abs(coh->amplitude)) - 0.5 * log_fact) *
                           (coh->amplitude < 0.0 && n % 2 == 1 ? -1.0 : 1.0);
    }
    f.amp.normalize();  // truncated state renormalized so trace is exactly 1
  } else {
    const auto& th = std::get<ThermalField>(init);
    if (th.nbar < 0.0) throw std::domain_error("dynamics: thermal nbar must be >= 0");
    if (th.cutoff > kMaxCutoff)
      throw std::domain_error("dynamics: thermal cutoff exceeds 40 (cost guard)");
    if (th.cutoff < 5.0 * th.nbar)
      throw std::domain_error("dynamics: thermal cutoff must be >= 5 x mean photon number");
    f.cutoff = th.cutoff;
    f.diag.resize(f.cutoff + 1);
    const double ratio = th.nbar / (1.0 + th.nbar);
    double w = 1.0, total = 0.0;
    for (int n = 0; n <= f.cutoff; ++n, w *= ratio) {
      f.diag(n) = w;
      total += w;
    }
    f.diag /= total;
  }
  return f;
}

struct MoleculeWeight {
  HalfInt r;
  HalfInt m;
  double w = 0.0;  // includes the P(r) multiplicity
};

std::vector<MoleculeWeight> make_molecules(const MoleculeInit& init) {
  std::vector<MoleculeWeight> out;
  if (const auto* all = std::get_if<AllExcited>(&init)) {
    if (all->N < 1 || all->N > kMaxMolecules)
      throw std::domain_error("dynamics: all-excited N outside 1..8 (cost guard)");
    const HalfInt r = HalfInt::from_doubled(all->N);
    out.push_back({r, r, 1.0});
  } else if (const auto* pure = std::get_if<PureMolecules>(&init)) {
    if (pure->r.doubled() > 2 * kMaxMolecules)
      throw std::domain_error("dynamics: pure r outside cost guard");
    if (pure->m > pure->r || pure->m < -pure->r || !same_parity(pure->r, pure->m))
      throw std::domain_error("dynamics: pure |r,m> needs -r <= m <= r with matching parity");
    out.push_back({pure->r, pure->m, 1.0});
  } else {
    const auto& th = std::get<ThermalMolecules>(init);
    if (th.N < 1 || th.N > kMaxMolecules)
      throw std::domain_error("dynamics: thermal N outside 1..8 (cost guard)");
    double z = 0.0;
    for (std::int64_t dr = th.N; dr >= th.N % 2; dr -= 2) {
      const HalfInt r = HalfInt::from_doubled(dr);
      const double P = degeneracy_P(th.N, r).convert_to<double>();
      for (std::int64_t dm = -dr; dm <= dr; dm += 2) {
        const double w = P * std::exp(-0.5 * dm * th.beta_t);
        out.push_back({r, HalfInt::from_doubled(dm), w});
        z += w;
      }
    }
    for (auto& e : out) e.w /= z;
  }
  return out;
}

struct BlockEigen {
  int n_min = 0;
  Eigen::VectorXd q;
  Eigen::MatrixXd A;  // A(i, j) = amplitude at photon n_min + i of state j
};

class BlockCache {
 public:
  const BlockEigen& get(HalfInt r, HalfInt c, double kappa) {
    const auto key = std::make_pair(r.doubled(), c.doubled());
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    BlockSpec spec{r, c, 0.0, kappa, 0.0};
    const EigenSystem sys = full_eigensystem(spec);
    BlockEigen be;
    be.n_min = photon_min(spec);
    const int dim = static_cast<int>(sys.spectrum.size());
    be.q = sys.spectrum.q;
    be.A.resize(dim, dim);
    for (int j = 0; j < dim; ++j) be.A.col(j) = sys.vectors[static_cast<std::size_t>(j)].values;
    return cache_.emplace(key, std::move(be)).first->second;
  }

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, BlockEigen> cache_;
};

bool block_exists(HalfInt r, HalfInt c) { return c >= -r; }

}  // namespace

std::complex<double> field_density_element(const InitialStateSpec& init, double t, int n,
                                           int n_prime) {
  if (n < 0 || n_prime < 0) return 0.0;
  const FieldMatrix fld = make_field(init.field);
  const auto mols = make_molecules(init.molecules);
  const double kappa = init.kappa_abs;
  BlockCache cache;
  const std::complex<double> iu(0.0, 1.0);

  std::map<std::pair<std::int64_t, std::int64_t>, double> wT;
  std::map<std::int64_t, bool> rs;
  for (const auto& mol : mols) {
    wT[{mol.r.doubled(), mol.m.doubled()}] += mol.w;
    rs[mol.r.doubled()] = true;
  }

  std::complex<double> total = 0.0;
  const int dn = n_prime - n;
  for (const auto& [dr, unused] : rs) {
    const HalfInt r = HalfInt::from_doubled(dr);
    // trace over every |r, m>; the P(r) multiplicity rides on the initial weights
    for (std::int64_t dm = -dr; dm <= dr; dm += 2) {
      const HalfInt m = HalfInt::from_doubled(dm);
      const HalfInt c = m + HalfInt(n);
      const HalfInt cp = m + HalfInt(n_prime);
      if (!block_exists(r, c) || !block_exists(r, cp)) continue;
      const BlockEigen& B = cache.get(r, c, kappa);
      const BlockEigen& Bp = cache.get(r, cp, kappa);
      const int i_n = n - B.n_min;
      const int i_np = n_prime - Bp.n_min;
      if (i_n < 0 || i_n >= B.A.rows() || i_np < 0 || i_np >= Bp.A.rows()) continue;

      // rho~_{jj'} = sum_{n''} A_{n''} A_{n''+dn} fld(n'', n''+dn) w_T(r, c-n''),
      // the molecular index matching forcing n''' = n'' + dn.
      Eigen::MatrixXd rho0 = Eigen::MatrixXd::Zero(B.A.cols(), Bp.A.cols());
      bool populated = false;
      for (int i = 0; i < B.A.rows(); ++i) {
        const int n2 = B.n_min + i;
        const int k = n2 + dn - Bp.n_min;
        if (k < 0 || k >= Bp.A.rows()) continue;
        const auto itw = wT.find({dr, c.doubled() - 2LL * n2});
        if (itw == wT.end() || itw->second == 0.0) continue;
        const double f = fld.element(n2, n2 + dn);
        if (f == 0.0) continue;
        rho0 += (itw->second * f) * (B.A.row(i).transpose() * Bp.A.row(k));
        populated = true;
      }
      if (!populated) continue;

      std::complex<double> acc = 0.0;
      for (int j = 0; j < B.A.cols(); ++j)
        for (int jp = 0; jp < Bp.A.cols(); ++jp) {
          if (rho0(j, jp) == 0.0) continue;
          const double phase = kappa * (B.q(j) - Bp.q(jp)) * t;
          acc += B.A(i_n, j) * Bp.A(i_np, jp) * rho0(j, jp) * std::exp(iu * phase);
        }
      total += acc;
    }
  }
  // fast phase e^{-it(n - n')} kept as printed (no rotating frame)
  return total * std::exp(iu * static_cast<double>(dn) * t);
}

namespace {

// Common driver: accumulates sum_{j,j'} weight_{jj'} e^{i t kappa (q_j - q_{j'})}
// per populated block for all requested times.
struct PairTerm {
  double dq = 0.0;
  double w = 0.0;
};

void accumulate(const std::vector<PairTerm>& terms, double kappa,
                const std::vector<double>& times, std::vector<std::complex<double>>& out) {
  const std::complex<double> iu(0.0, 1.0);
  for (std::size_t it = 0; it < times.size(); ++it) {
    std::complex<double> acc = 0.0;
    for (const auto& term : terms) acc += term.w * std::exp(iu * (kappa * term.dq * times[it]));
    out[it] += acc;
  }
}

}  // namespace

TimeSeries expectation_EmEp(const InitialStateSpec& init, const std::vector<double>& times,
                            const DynamicsOptions& options) {
  const FieldMatrix fld = make_field(init.field);
  const auto mols = make_molecules(init.molecules);
  const double kappa = init.kappa_abs;
  BlockCache cache;

  // unique (r, m) -> weight
  std::map<std::pair<std::int64_t, std::int64_t>, double> wT;
  std::int64_t dr_max = 0;
  for (const auto& mol : mols) {
    wT[{mol.r.doubled(), mol.m.doubled()}] += mol.w;
    dr_max = std::max(dr_max, mol.r.doubled());
  }

  TimeSeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.prefactor_convention = "|gamma/mu|^2 factored out";

  // distinct r values
  std::map<std::int64_t, bool> rs;
  for (const auto& mol : mols) rs[mol.r.doubled()] = true;

  for (const auto& [dr, unused] : rs) {
    const HalfInt r = HalfInt::from_doubled(dr);
    // populated blocks: c = n'' + m with fld(n'') > 0 and wT(r, m) > 0
    const std::int64_t dc_lo = -dr;
    const std::int64_t dc_hi = 2LL * fld.cutoff + dr;
    for (std::int64_t dc = dc_lo; dc <= dc_hi; dc += 2) {
      const HalfInt c = HalfInt::from_doubled(dc);
      if (!block_exists(r, c)) continue;
      const BlockEigen& B = cache.get(r, c, kappa);
      const int dim = static_cast<int>(B.q.size());

      Eigen::MatrixXd rho0 = Eigen::MatrixXd::Zero(dim, dim);
      bool populated = false;
      for (int i = 0; i < dim; ++i) {
        const int n2 = B.n_min + i;
        if (n2 > fld.cutoff) break;
        const double f = fld.element(n2, n2);
        if (f == 0.0) continue;
        const auto itw = wT.find({dr, dc - 2LL * n2});
        if (itw == wT.end() || itw->second == 0.0) continue;
        rho0 += (itw->second * f) * (B.A.row(i).transpose() * B.A.row(i));
        populated = true;
      }
      if (!populated) continue;

      Eigen::MatrixXd photon = Eigen::MatrixXd::Zero(dim, dim);
      for (int i = 0; i < dim; ++i)
        photon += static_cast<double>(B.n_min + i) * (B.A.row(i).transpose() * B.A.row(i));

      std::vector<PairTerm> terms;
      terms.reserve(static_cast<std::size_t>(dim) * dim);
      for (int j = 0; j < dim; ++j)
        for (int jp = 0; jp < dim; ++jp) {
          const double w = photon(j, jp) * rho0(j, jp);
          if (w == 0.0) continue;
          if (options.slowest_only && j != jp) continue;
          terms.push_back({B.q(j) - B.q(jp), w});
        }
      accumulate(terms, kappa, times, out.values);
    }
  }
  return out;
}

TimeSeries expectation_Eminus(const InitialStateSpec& init, const std::vector<double>& times) {
  const FieldMatrix fld = make_field(init.field);
  const auto mols = make_molecules(init.molecules);
  const double kappa = init.kappa_abs;
  BlockCache cache;

  std::map<std::pair<std::int64_t, std::int64_t>, double> wT;
  for (const auto& mol : mols) wT[{mol.r.doubled(), mol.m.doubled()}] += mol.w;
  std::map<std::int64_t, bool> rs;
  for (const auto& mol : mols) rs[mol.r.doubled()] = true;

  TimeSeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.prefactor_convention = "-(gamma/mu) e^{it} prefactor and fast phase factored out";

  const std::complex<double> iu(0.0, 1.0);
  for (const auto& [dr, unused] : rs) {
    const HalfInt r = HalfInt::from_doubled(dr);
    const std::int64_t dc_hi = 2LL * fld.cutoff + dr;
    for (std::int64_t dc = -dr; dc <= dc_hi; dc += 2) {
      const HalfInt c = HalfInt::from_doubled(dc);
      const HalfInt cp = c + HalfInt(1);
      if (!block_exists(r, c) || !block_exists(r, cp)) continue;
      const BlockEigen& B = cache.get(r, c, kappa);
      const BlockEigen& Bp = cache.get(r, cp, kappa);
      const int dim = static_cast<int>(B.q.size());
      const int dimp = static_cast<int>(Bp.q.size());

      Eigen::MatrixXd rho0 = Eigen::MatrixXd::Zero(dim, dimp);
      bool populated = false;
      for (int i = 0; i < dim; ++i) {
        const int n2 = B.n_min + i;
        const int k = n2 + 1 - Bp.n_min;
        if (k < 0 || k >= dimp) continue;
        const double f = fld.element(n2, n2 + 1);
        if (f == 0.0) continue;
        const auto itw = wT.find({dr, dc - 2LL * n2});
        if (itw == wT.end() || itw->second == 0.0) continue;
        rho0 += (itw->second * f) * (B.A.row(i).transpose() * Bp.A.row(k));
        populated = true;
      }
      if (!populated) continue;

      Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(dim, dimp);
      for (int i = 0; i < dim; ++i) {
        const int n = B.n_min + i;
        const int k = n + 1 - Bp.n_min;
        if (k < 0 || k >= dimp) continue;
        lower += std::sqrt(n + 1.0) * (B.A.row(i).transpose() * Bp.A.row(k));
      }

      for (std::size_t it = 0; it < times.size(); ++it) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < dim; ++j)
          for (int jp = 0; jp < dimp; ++jp) {
            const double w = lower(j, jp) * rho0(j, jp);
            if (w == 0.0) continue;
            acc += w * std::exp(iu * (kappa * (B.q(j) - Bp.q(jp)) * times[it]));
          }
        out.values[it] += acc;
      }
    }
  }
  return out;
}

TimeSeries superradiant_vacuum_EmEp(int N, const std::vector<double>& times, double kappa_abs,
                                    const DynamicsOptions& options) {
  if (N < 1 || N > 20) throw std::domain_error("superradiant_vacuum_EmEp: N outside 1..20");
  BlockCache cache;
  TimeSeries out;
  out.times = times;
  out.values.assign(times.size(), 0.0);
  out.prefactor_convention = "|gamma/mu|^2 factored out";

  std::vector<std::pair<HalfInt, double>> rs;
  if (options.mixed_r) {
    for (std::int64_t dr = N; dr >= N % 2; dr -= 2)
      rs.emplace_back(HalfInt::from_doubled(dr),
                      degeneracy_P(N, HalfInt::from_doubled(dr)).convert_to<double>());
  } else {
    rs.emplace_back(HalfInt::from_doubled(N), 1.0);  // all-excited lives in r = N/2 alone
  }

  const std::complex<double> iu(0.0, 1.0);
  for (const auto& [r, weight] : rs) {
    const BlockEigen& B = cache.get(r, r, kappa_abs);  // c = r block
    const int dim = static_cast<int>(B.q.size());
    // photon number n = r - m; initial state |0>|r, r> has amplitude A_0.
    if (options.slowest_only) {
      double val = 0.0;  // stationary (j = j') part: the local time average
      for (int i = 0; i < dim; ++i) {
        const int n = B.n_min + i;
        for (int j = 0; j < dim; ++j) {
          const double a = B.A(i, j) * B.A(0, j);
          val += n * a * a;
        }
      }
      for (std::size_t it = 0; it < times.size(); ++it) out.values[it] += weight * val;
      continue;
    }
    for (std::size_t it = 0; it < times.size(); ++it) {
      double val = 0.0;
      for (int i = 0; i < dim; ++i) {
        const int n = B.n_min + i;
        if (n == 0) continue;
        std::complex<double> amp = 0.0;
        for (int j = 0; j < dim; ++j)
          amp += B.A(i, j) * B.A(0, j) * std::exp(iu * (kappa_abs * B.q(j) * times[it]));
        val += n * std::norm(amp);
      }
      out.values[it] += weight * val;
    }
  }
  return out;
}

}  // namespace tavis
