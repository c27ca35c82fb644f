// tavis-lab: exact and approximate block spectra of the N-molecule +
// single-mode Hamiltonian, Dicke statistics, field dynamics and validity
// reports, emitted as deterministic JSON/CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tavis/approximations.hpp"
#include "tavis/dicke_stats.hpp"
#include "tavis/dynamics.hpp"
#include "tavis/errors.hpp"
#include "tavis/exact_solver.hpp"
#include "tavis/tridiagonal.hpp"
#include "tavis/validity.hpp"

using json = nlohmann::ordered_json;
using namespace tavis;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  os << text;
}

SolveOptions solve_options_from_env() {
  SolveOptions opt;
  const char* env = std::getenv("TAVIS_LAB_PRECISION");
  if (env != nullptr && std::string(env) == "fast") opt.strict = false;
  return opt;
}

struct BlockFlags {
  std::string r_text = "0.5";
  std::string c_text = "0.5";
  double beta = 0.0;
  double kappa = 1.0;
  double phi = 0.0;

  BlockSpec parse() const {
    BlockSpec spec{parse_half_int(r_text), parse_half_int(c_text), beta, kappa, phi};
    validate(spec);
    return spec;
  }
};

void add_block_flags(CLI::App* cmd, BlockFlags& f) {
  cmd->add_option("--r", f.r_text, "cooperation number r (decimal '12.5' or fraction '25/2')");
  cmd->add_option("--c", f.c_text, "excitation number c (same formats)");
  cmd->add_option("--beta", f.beta, "relative tuning (omega - Omega)/(|kappa| Omega)");
  cmd->add_option("--kappa", f.kappa, "|kappa| = |gamma|/Omega");
  cmd->add_option("--phi", f.phi, "interaction phase (radians)");
}

void echo_block(json& doc, const BlockSpec& spec) {
  doc["r2"] = spec.r.doubled();
  doc["c2"] = spec.c.doubled();
  doc["r"] = to_fraction_string(spec.r);
  doc["c"] = to_fraction_string(spec.c);
  doc["r_decimal"] = spec.r.value();
  doc["c_decimal"] = spec.c.value();
  doc["beta"] = spec.beta;
  doc["kappa"] = spec.kappa_abs;
  doc["phi"] = spec.phi;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  BlockFlags flags;
  std::string method = "exact";
  std::string format = "json";
  std::string out;
};

Spectrum spectrum_by_method(const BlockSpec& spec, const std::string& method) {
  if (method == "exact") return solve_spectrum(spec, solve_options_from_env());
  if (method == "oracle")  // force the Sturm route for cross-checks
    return make_spectrum(spec, sturm_eigenvalues(build_tridiagonal(spec)), Method::oracle);
  if (method == "avgfield") {
    const int dim = block_dim(spec);
    std::vector<double> q;
    for (int j = 0; j < dim; ++j)
      q.push_back((spec.c.value() - avgfield_lambda_closed(spec, j)) / spec.kappa_abs);
    return make_spectrum(spec, q, Method::avgfield_closed);
  }
  if (method == "avgfield-poly") return avgfield_spectrum_poly(spec).spectrum;
  if (method == "modtlm") {
    const int dim = block_dim(spec);
    std::vector<double> q;
    for (int j = 0; j < dim; ++j)
      q.push_back((spec.c.value() - modtlm_lambda(spec, j)) / spec.kappa_abs);
    return make_spectrum(spec, q, Method::modtlm);
  }
  if (method == "diffeq") {
    const int dim = block_dim(spec);
    std::vector<double> q;
    for (int j = 0; j < dim; ++j) {
      try {
        q.push_back(diffeq_q(spec, j));
      } catch (const std::domain_error&) {
        // states outside the harmonic range are skipped
      }
    }
    return make_spectrum(spec, q, Method::diffeq);
  }
  if (method == "avgtlm") return avgtlm_spectrum(spec).spectrum;
  throw std::domain_error("unknown --method '" + method + "'");
}

int cmd_spectrum(const SpectrumArgs& args) {
  const BlockSpec spec = args.flags.parse();
  const Spectrum s = spectrum_by_method(spec, args.method);

  if (args.format == "csv") {
    std::string csv = "j,q,lambda\n";
    for (Eigen::Index j = 0; j < s.size(); ++j)
      csv += std::to_string(j) + "," + fmt17(s.q(j)) + "," + fmt17(s.lambda(j)) + "\n";
    write_output(csv, args.out);
    return 0;
  }
  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "spectrum";
  echo_block(doc, spec);
  doc["dim"] = block_dim(spec);
  doc["method"] = to_string(s.method);
  doc["q"] = std::vector<double>(s.q.data(), s.q.data() + s.size());
  doc["lambda"] = std::vector<double>(s.lambda.data(), s.lambda.data() + s.size());
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

// ------------------------------------------------------------------ eigvec

struct EigvecArgs {
  BlockFlags flags;
  int j = 0;
  std::string format = "csv";
  std::string out;
};

int cmd_eigvec(const EigvecArgs& args) {
  const BlockSpec spec = args.flags.parse();
  const auto sys = full_eigensystem(spec, solve_options_from_env());
  if (args.j < 0 || args.j >= static_cast<int>(sys.spectrum.size()))
    throw std::domain_error("--j out of range for this block");
  const auto& v = sys.vectors[static_cast<std::size_t>(args.j)];
  const auto& obs = sys.observables[static_cast<std::size_t>(args.j)];
  const double qj = sys.spectrum.q(args.j);

  if (args.format == "csv") {
    std::string csv = "# q_j=" + fmt17(qj) + " m_mean=" + fmt17(obs.m_mean) +
                      " n_mean=" + fmt17(obs.n_mean) + " sigma2=" + fmt17(obs.n_var) + "\n";
    csv += "n,A_n,abs_sq\n";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      const double a = v.values(k);
      csv += std::to_string(v.n_min + k) + "," + fmt17(a) + "," + fmt17(a * a) + "\n";
    }
    write_output(csv, args.out);
    return 0;
  }
  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "eigvec";
  echo_block(doc, spec);
  doc["j"] = args.j;
  doc["q_j"] = qj;
  doc["m_mean"] = obs.m_mean;
  doc["n_mean"] = obs.n_mean;
  doc["sigma2"] = obs.n_var;
  doc["n_min"] = v.n_min;
  doc["amplitudes"] = std::vector<double>(v.values.data(), v.values.data() + v.size());
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  BlockFlags flags;
  std::string sweep_c;     // "lo:hi:count" over half-integer c
  std::string sweep_beta;  // "lo:hi:count"
  std::string j_list = "0";
  int parallelism = 1;
  std::string format = "csv";
  std::string out;
};

std::vector<int> parse_j_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::domain_error("--j list is empty");
  return out;
}

struct SweepRow {
  double value;
  int j;
  std::optional<double> q_exact, q_diffeq, q_avgfield, q_modtlm;
};

int cmd_sweep(const SweepArgs& args) {
  const BlockSpec base = args.flags.parse();
  const auto js = parse_j_list(args.j_list);
  const bool over_c = !args.sweep_c.empty();
  if (over_c == !args.sweep_beta.empty())
    throw std::domain_error("exactly one of --sweep-c / --sweep-beta is required");

  const std::string range = over_c ? args.sweep_c : args.sweep_beta;
  double lo, hi;
  int count;
  {
    std::stringstream ss(range);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n, ':'))
      throw std::domain_error("range must be lo:hi:count");
    lo = std::stod(a);
    hi = std::stod(b);
    count = std::stoi(n);
    if (count < 2 || hi <= lo) throw std::domain_error("range must satisfy lo < hi, count >= 2");
  }

  // grid points: half-integers snapped to the r parity for c, plain doubles for beta
  std::vector<BlockSpec> specs;
  std::vector<double> values;
  if (over_c) {
    const std::int64_t dlo = static_cast<std::int64_t>(std::ceil(2.0 * lo));
    const std::int64_t dhi = static_cast<std::int64_t>(std::floor(2.0 * hi));
    std::int64_t step = std::max<std::int64_t>(2, 2 * ((dhi - dlo) / (2 * (count - 1))));
    for (std::int64_t d = dlo + ((base.r.doubled() - dlo) % 2 + 2) % 2; d <= dhi; d += step) {
      if (d < -base.r.doubled()) continue;
      BlockSpec s = base;
      s.c = HalfInt::from_doubled(d);
      specs.push_back(s);
      values.push_back(s.c.value());
    }
  } else {
    for (int i = 0; i < count; ++i) {
      BlockSpec s = base;
      s.beta = lo + (hi - lo) * i / (count - 1);
      specs.push_back(s);
      values.push_back(s.beta);
    }
  }

  // fan out across blocks, buffered and emitted in input order
  std::vector<std::vector<SweepRow>> rows(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    const auto opts = solve_options_from_env();
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const auto& spec = specs[i];
      const auto s = solve_spectrum(spec, opts);
      for (int j : js) {
        SweepRow row{values[i], j, {}, {}, {}, {}};
        if (j >= 0 && j < static_cast<int>(s.size())) row.q_exact = s.q(j);
        try {
          row.q_diffeq = diffeq_q(spec, j);
        } catch (const std::exception&) {
        }
        if (spec.c > HalfInt(0) && j >= 0 && HalfInt(j) <= spec.r + spec.r)
          row.q_avgfield = (spec.c.value() - avgfield_lambda_closed(spec, j)) / spec.kappa_abs;
        if (j >= 0 && j <= photon_max(spec) && spec.c <= spec.r)
          row.q_modtlm = (spec.c.value() - modtlm_lambda(spec, j)) / spec.kappa_abs;
        rows[i].push_back(row);
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(args.parallelism, 64));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::string var = over_c ? "c" : "beta";
  if (args.format == "csv") {
    std::string csv = var + ",j,q_exact,q_diffeq,q_avgfield,q_modtlm\n";
    auto cell = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
    for (const auto& block : rows)
      for (const auto& row : block)
        csv += fmt17(row.value) + "," + std::to_string(row.j) + "," + cell(row.q_exact) + "," +
               cell(row.q_diffeq) + "," + cell(row.q_avgfield) + "," + cell(row.q_modtlm) + "\n";
    write_output(csv, args.out);
    return 0;
  }
  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "sweep";
  doc["variable"] = var;
  doc["rows"] = json::array();
  for (const auto& block : rows)
    for (const auto& row : block) {
      json r;
      r["value"] = row.value;
      r["j"] = row.j;
      if (row.q_exact) r["q_exact"] = *row.q_exact;
      if (row.q_diffeq) r["q_diffeq"] = *row.q_diffeq;
      if (row.q_avgfield) r["q_avgfield"] = *row.q_avgfield;
      if (row.q_modtlm) r["q_modtlm"] = *row.q_modtlm;
      doc["rows"].push_back(r);
    }
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

// ------------------------------------------------------------------- dicke

struct DickeArgs {
  int N = 2;
  double beta_t = 0.0;
  std::string m_text;  // optional fixed m for the conditional statistics
  std::string format = "json";
  std::string out;
};

int cmd_dicke(const DickeArgs& args) {
  const ThermalEnsemble e{args.N, args.beta_t};
  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "dicke";
  doc["N"] = args.N;
  doc["beta_t"] = args.beta_t;
  doc["m_mean"] = thermal_inversion(e);
  doc["m_var"] = thermal_m_variance(e);

  if (!args.m_text.empty()) {
    const HalfInt m = parse_half_int(args.m_text);
    doc["m2"] = m.doubled();
    doc["r_r1_mean"] = mean_r_r1_given_m(args.N, m);
    doc["r_r1_var"] = var_r_r1_given_m(args.N, m);
  }

  if (args.N <= 40) {
    const auto brute = brute_thermal_stats(e);
    double dev = std::abs(brute.m_mean - thermal_inversion(e));
    dev = std::max(dev, std::abs(brute.m_var - thermal_m_variance(e)));
    for (std::int64_t dm = -args.N; dm <= args.N; dm += 2) {
      dev = std::max(dev, std::abs(brute.r_r1_mean_by_m.at(dm) -
                                   mean_r_r1_given_m(args.N, HalfInt::from_doubled(dm))));
      dev = std::max(dev, std::abs(brute.r_r1_var_by_m.at(dm) -
                                   var_r_r1_given_m(args.N, HalfInt::from_doubled(dm))));
    }
    doc["brute_checked"] = true;
    doc["brute_max_abs_dev"] = dev;
  } else {
    doc["brute_checked"] = false;
  }

  if (args.format == "csv") {
    std::string csv = "key,value\n";
    for (auto& [key, value] : doc.items()) {
      if (value.is_number_float())
        csv += key + "," + fmt17(value.get<double>()) + "\n";
      else
        csv += key + "," + value.dump() + "\n";
    }
    write_output(csv, args.out);
    return 0;
  }
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

// ---------------------------------------------------------------- dynamics

struct DynamicsArgs {
  std::string field = "fock:0";
  std::string molecules = "all-excited:1";
  std::string observable = "emep";
  double kappa = 1.0;
  double tmax = 10.0;
  int steps = 101;
  bool slowest_only = false;
  bool mixed_r = false;
  std::string format = "csv";
  std::string out;
};

FieldInit parse_field(const std::string& text) {
  std::stringstream ss(text);
  std::string kind;
  std::getline(ss, kind, ':');
  std::vector<std::string> parts;
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (kind == "vacuum") return FockField{0};
  if (kind == "fock" && parts.size() == 1) return FockField{std::stoi(parts[0])};
  if (kind == "coherent" && parts.size() == 2)
    return CoherentField{std::stod(parts[0]), std::stoi(parts[1])};
  if (kind == "thermal" && parts.size() == 2)
    return ThermalField{std::stod(parts[0]), std::stoi(parts[1])};
  throw std::domain_error("--field must be vacuum|fock:N0|coherent:AMP:CUT|thermal:NBAR:CUT");
}

MoleculeInit parse_molecules(const std::string& text) {
  std::stringstream ss(text);
  std::string kind;
  std::getline(ss, kind, ':');
  std::vector<std::string> parts;
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (kind == "all-excited" && parts.size() == 1) return AllExcited{std::stoi(parts[0])};
  if (kind == "pure" && parts.size() == 2)
    return PureMolecules{parse_half_int(parts[0]), parse_half_int(parts[1])};
  if (kind == "thermal" && parts.size() == 2)
    return ThermalMolecules{std::stoi(parts[0]), std::stod(parts[1])};
  throw std::domain_error("--molecules must be all-excited:N|pure:R:M|thermal:N:BETA");
}

int cmd_dynamics(const DynamicsArgs& args) {
  if (args.steps < 2) throw std::domain_error("--steps must be >= 2");
  std::vector<double> times(static_cast<std::size_t>(args.steps));
  for (int i = 0; i < args.steps; ++i)
    times[static_cast<std::size_t>(i)] = args.tmax * i / (args.steps - 1.0);

  DynamicsOptions opts;
  opts.slowest_only = args.slowest_only;
  opts.mixed_r = args.mixed_r;

  TimeSeries series;
  if (args.observable == "superradiant") {
    const auto mol = parse_molecules(args.molecules);
    const auto* all = std::get_if<AllExcited>(&mol);
    if (all == nullptr)
      throw std::domain_error("--observable superradiant requires --molecules all-excited:N");
    series = superradiant_vacuum_EmEp(all->N, times, args.kappa, opts);
  } else {
    const InitialStateSpec init{parse_field(args.field), parse_molecules(args.molecules),
                                args.kappa};
    if (args.observable == "emep")
      series = expectation_EmEp(init, times, opts);
    else if (args.observable == "eminus")
      series = expectation_Eminus(init, times);
    else
      throw std::domain_error("--observable must be emep|eminus|superradiant");
  }

  if (args.format == "csv") {
    const bool complex_out = args.observable == "eminus";
    std::string csv = complex_out ? "t,re,im\n" : "t,value\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
      if (complex_out)
        csv += fmt17(series.times[i]) + "," + fmt17(series.values[i].real()) + "," +
               fmt17(series.values[i].imag()) + "\n";
      else
        csv += fmt17(series.times[i]) + "," + fmt17(series.values[i].real()) + "\n";
    }
    write_output(csv, args.out);
    return 0;
  }
  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "dynamics";
  doc["observable"] = args.observable;
  doc["kappa"] = args.kappa;
  doc["times"] = series.times;
  std::vector<double> re, im;
  for (const auto& v : series.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  doc["re"] = re;
  doc["im"] = im;
  doc["prefactor_convention"] = series.prefactor_convention;
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

// ---------------------------------------------------------------- validity

struct ValidityArgs {
  BlockFlags flags;
  int j = 0;
  std::string format = "json";
  std::string out;
};

int cmd_validity(const ValidityArgs& args) {
  const BlockSpec spec = args.flags.parse();
  const auto e5 = doubling_validity(spec);
  const auto c9 = cubic_perturbed_q(spec, args.j);
  const auto th = decoupling_threshold(spec);

  json doc;
  doc["schema_version"] = "result.v1";
  doc["command"] = "validity";
  doc["r2"] = spec.r.doubled();
  doc["c2"] = spec.c.doubled();
  doc["kappa"] = spec.kappa_abs;
  doc["j"] = args.j;
  doc["e5_margin"] = e5.margin;
  doc["e5_satisfied"] = e5.satisfied;
  doc["c10_margin"] = c9.report.margin;
  doc["c10_satisfied"] = c9.report.satisfied;
  doc["q_cubic"] = c9.q;
  doc["q_diffeq"] = diffeq_q(spec, args.j);
  doc["q0_exact"] = e5.detail.at("q0");
  doc["beta_high_c"] = th.beta_high_c;
  doc["beta_low_c"] = th.beta_low_c;
  doc["uncoupled_state_index"] = th.uncoupled_state_index;

  if (args.format == "csv") {
    std::string csv = "key,value\n";
    for (auto& [key, value] : doc.items()) {
      if (value.is_number_float())
        csv += key + "," + fmt17(value.get<double>()) + "\n";
      else
        csv += key + "," + value.dump() + "\n";
    }
    write_output(csv, args.out);
    return 0;
  }
  write_output(doc.dump(2) + "\n", args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tavis-lab: block-by-block spectra of N two-level molecules + one field mode"};
  app.require_subcommand(1);

  SpectrumArgs spectrum_args;
  auto* sp = app.add_subcommand("spectrum", "effective eigenvalues q (and lambda) of one block");
  add_block_flags(sp, spectrum_args.flags);
  sp->add_option("--method", spectrum_args.method,
                 "exact|oracle|avgfield|avgfield-poly|modtlm|diffeq|avgtlm");
  sp->add_option("--format", spectrum_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sp->add_option("--out", spectrum_args.out, "output path (default stdout)");

  EigvecArgs eigvec_args;
  auto* ev = app.add_subcommand("eigvec", "eigenvector A_n of state j with observables");
  add_block_flags(ev, eigvec_args.flags);
  ev->add_option("--j", eigvec_args.j, "state index (0 = ground)");
  ev->add_option("--format", eigvec_args.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));
  ev->add_option("--out", eigvec_args.out, "output path (default stdout)");

  SweepArgs sweep_args;
  auto* sw = app.add_subcommand("sweep", "q vs c or beta for a list of states");
  add_block_flags(sw, sweep_args.flags);
  sw->add_option("--sweep-c", sweep_args.sweep_c, "c range lo:hi:count (half-integer grid)");
  sw->add_option("--sweep-beta", sweep_args.sweep_beta, "beta range lo:hi:count");
  sw->add_option("--j", sweep_args.j_list, "comma-separated state indices");
  sw->add_option("--parallelism", sweep_args.parallelism, "worker threads (default 1)");
  sw->add_option("--format", sweep_args.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));
  sw->add_option("--out", sweep_args.out, "output path (default stdout)");

  DickeArgs dicke_args;
  auto* dk = app.add_subcommand("dicke", "cooperation-number statistics");
  dk->add_option("--N", dicke_args.N, "molecule count")->required();
  dk->add_option("--beta-t", dicke_args.beta_t, "E/kT");
  dk->add_option("--m", dicke_args.m_text, "fixed m for the conditional r(r+1) statistics");
  dk->add_option("--format", dicke_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  dk->add_option("--out", dicke_args.out, "output path (default stdout)");

  DynamicsArgs dynamics_args;
  auto* dy = app.add_subcommand("dynamics", "ensemble field observables vs time");
  dy->add_option("--field", dynamics_args.field, "vacuum|fock:N0|coherent:AMP:CUT|thermal:NBAR:CUT");
  dy->add_option("--molecules", dynamics_args.molecules, "all-excited:N|pure:R:M|thermal:N:BETA");
  dy->add_option("--observable", dynamics_args.observable, "emep|eminus|superradiant");
  dy->add_option("--kappa", dynamics_args.kappa, "|kappa|");
  dy->add_option("--tmax", dynamics_args.tmax, "final time");
  dy->add_option("--steps", dynamics_args.steps, "number of samples");
  dy->add_flag("--slowest-only", dynamics_args.slowest_only, "keep stationary terms only");
  dy->add_flag("--mixed-r", dynamics_args.mixed_r, "literal P(r)-weighted superradiant sum");
  dy->add_option("--format", dynamics_args.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));
  dy->add_option("--out", dynamics_args.out, "output path (default stdout)");

  ValidityArgs validity_args;
  auto* va = app.add_subcommand("validity", "E.5/C.10 margins and decoupling thresholds");
  add_block_flags(va, validity_args.flags);
  va->add_option("--j", validity_args.j, "state index for the cubic correction");
  va->add_option("--format", validity_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  va->add_option("--out", validity_args.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(spectrum_args);
    if (ev->parsed()) return cmd_eigvec(eigvec_args);
    if (sw->parsed()) return cmd_sweep(sweep_args);
    if (dk->parsed()) return cmd_dicke(dicke_args);
    if (dy->parsed()) return cmd_dynamics(dynamics_args);
    if (va->parsed()) return cmd_validity(validity_args);
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
