#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "glab/cli.hpp"
#include "glab/csv.hpp"
#include "glab/fit.hpp"
#include "glab/greedy.hpp"

namespace glab::cli {

std::string Options::get(const std::string& k, const std::string& def) const {
  auto it = kv.find(k);
  return it == kv.end() ? def : it->second;
}

double Options::get_d(const std::string& k, double def) const {
  auto it = kv.find(k);
  return it == kv.end() ? def : std::strtod(it->second.c_str(), nullptr);
}

Index Options::get_i(const std::string& k, Index def) const {
  auto it = kv.find(k);
  return it == kv.end() ? def : static_cast<Index>(std::strtoll(it->second.c_str(), nullptr, 10));
}

std::uint64_t Options::get_u(const std::string& k, std::uint64_t def) const {
  auto it = kv.find(k);
  return it == kv.end() ? def : static_cast<std::uint64_t>(std::strtoull(it->second.c_str(), nullptr, 10));
}

Options load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open config '" + path + "'");
  Options opt;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw input_error("config line without '=': '" + line + "'");
    opt.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return opt;
}

namespace {

// Witness cell: the coefficients when small, a regeneratable label otherwise.
std::string witness_cell(const ParamEstimate& est) {
  if (!est.witness) return "";
  const WitnessRecord& wr = *est.witness;
  if (wr.coeffs.size() <= 64) return to_cell(wr.coeffs);
  return "label:" + wr.label;
}

void emit_config(CsvWriter& out, const std::string& experiment, const Options& opt) {
  out.comment("experiment", experiment);
  for (const auto& [k, v] : opt.kv) out.comment(k, v);
}

std::vector<Index> geometric_grid(Index lo, Index hi) {
  std::vector<Index> g;
  for (Index m = lo; m <= hi; m = std::max(m + 1, (m * 5) / 4))
    g.push_back(m);
  if (g.empty() || g.back() != hi) g.push_back(hi);
  return g;
}

}  // namespace

std::string sweep_csv(const std::string& experiment, const Options& opt) {
  Index m_max = opt.get_i("m-max", 60);
  std::uint64_t seed = opt.get_u("seed", 20260826);
  double p = opt.get_d("p", 2.0);
  double q = opt.get_d("q", p);
  CsvWriter out;
  emit_config(out, experiment, opt);
  out.header({"basis", "quantity", "m", "x", "value", "exactness", "witness",
              "seed"});
  auto emit = [&](const std::string& basis, const std::string& quantity,
                  Index m, double x, double value, const std::string& exact,
                  const std::string& witness) {
    out.row({basis, quantity, std::to_string(m), fmt_double(x),
             fmt_double(value), exact, witness, std::to_string(seed)});
  };

  if (experiment == "kt-growth") {
    KtSystem sys = build_kt(p, m_max);
    Weight harmonic = Weight::constant();
    for (Index m = 2; m <= m_max; ++m) {
      WitnessRecord wr = kt_witness(sys, m);
      double H = harmonic.hw(m);
      // Certified ratio: the projected seminorm H_m/p over the exact norm of
      // the witness.  The full projected norm can only be larger.
      double cert = (H / p) / sys.space.norm(wr.coeffs);
      emit(sys.basis.label, "g_lower", m, H, cert, "certified-lower-bound",
           "label:" + wr.label);
    }
  } else if (experiment == "perturbed-growth") {
    Weight w = Weight::power(p);
    // The cancelling tail of the witness at m reaches indices ~ e^{2 H_m},
    // so the ambient window must grow accordingly.
    Index grid_max = m_max;
    Index window = opt.get_i("window", 0);
    if (window == 0)
      window = static_cast<Index>(
          60.0 * static_cast<double>(grid_max) * static_cast<double>(grid_max)) + 64;
    PerturbedSystem sys = build_perturbed(p, q, w, window);
    for (Index m : geometric_grid(2, grid_max)) {
      auto [fm, um] = perturbed_witness(sys, m);
      double H = w.hw(m);
      double ratio = sys.basis.space.norm(sys.basis.synth(project(um.coeffs, um.marked)).x) /
                     sys.basis.space.norm(sys.basis.synth(um.coeffs).x);
      emit(sys.basis.label, "g_lower", m, H, ratio, "certified-lower-bound",
           "label:" + um.label);
    }
  } else if (experiment == "blockwise-growth") {
    Index K = opt.get_i("k-max", 12);
    Weight w = Weight::power(p);
    BlockwiseSystem sys = build_blockwise(p, q, w, blockwise_levels(K));
    for (Index k = 1; k <= K; ++k) {
      BlockwiseWitness bw = blockwise_witness(sys, k);
      double ratio = sys.basis.space.norm(sys.basis.synth(bw.g.coeffs).x) /
                     sys.basis.space.norm(sys.basis.synth(bw.f.coeffs).x);
      emit(sys.basis.label, "g_lower", k, bw.Lambda, ratio,
           "certified-lower-bound", "label:" + bw.f.label);
    }
  } else if (experiment == "diamond-conditionality") {
    Weight w = Weight::power(2.0);
    Space X = lorentz_space(w, 1.0);
    Space Y = marcinkiewicz0_space(Weight::dual_primitive(w));
    Index window = std::max<Index>(m_max, 4);
    DiamondSystem sys = build_diamond(unit_basis(X, window, "d11"),
                                      unit_basis(Y, window, "m0dual"));
    for (Index m : geometric_grid(2, m_max)) {
      std::vector<SparseVec::Entry> prof;
      for (Index n = 1; n <= m; ++n) prof.push_back({n, 1.0 / w.s(n)});
      SparseVec a(std::move(prof));
      auto [fo, fe] = diamond_conditionality_witness(sys, a);
      SparseVec f = axpy(-1.0, fe.coeffs, fo.coeffs);  // f_o - f_e
      double ratio = sys.basis.norm(sys.basis.synth(fo.coeffs)) /
                     sys.basis.norm(sys.basis.synth(f));
      emit(sys.basis.label, "k_lower", m, w.hw(m), ratio,
           "certified-lower-bound", witness_cell(ParamEstimate{
                                        "k_lower", m, ratio,
                                        Exactness::certified_lower_bound,
                                        fo, seed}));
    }
  } else if (experiment == "bidem-quotient") {
    std::string basis = opt.get("basis", "kt");
    SearchBudget budget;
    budget.seed = seed;
    budget.trials = static_cast<int>(opt.get_i("trials", 50));
    budget.sign_cap = static_cast<int>(opt.get_i("sign-cap", 10));
    if (basis == "kt") {
      KtSystem sys = build_kt(p, std::min<Index>(m_max, 64));
      for (Index m = 1; m <= std::min<Index>(m_max, 64); ++m) {
        ParamEstimate est = bidem_quotient(sys.basis, m, budget);
        emit(sys.basis.label, "bidem_quotient", m, static_cast<double>(m),
             est.value, exactness_name(est.exactness), "");
      }
    } else if (basis == "lp") {
      Basis bs = unit_basis(lp_space(p), m_max, "l_p unit");
      for (Index m = 1; m <= m_max; ++m) {
        ParamEstimate est = bidem_quotient(bs, m, budget);
        emit(bs.label, "bidem_quotient", m, static_cast<double>(m), est.value,
             exactness_name(est.exactness), "");
      }
    } else if (basis == "diamond") {
      Weight w = Weight::power(2.0);
      Space X = lorentz_space(w, 1.0);
      Space Y = marcinkiewicz0_space(Weight::dual_primitive(w));
      DiamondSystem sys = build_diamond(unit_basis(X, 2 * m_max, "d11"),
                                        unit_basis(Y, 2 * m_max, "m0dual"));
      for (Index m : geometric_grid(1, m_max)) {
        ParamEstimate est = bidem_quotient(sys.basis, m, budget);
        emit(sys.basis.label, "bidem_quotient", m, static_cast<double>(m),
             est.value, exactness_name(est.exactness), "");
      }
    } else {
      throw input_error("bidem-quotient: unknown basis '" + basis + "'");
    }
  } else if (experiment == "lambda-u") {
    std::string basis = opt.get("basis", "kt");
    SearchBudget budget;
    budget.seed = seed;
    budget.trials = static_cast<int>(opt.get_i("trials", 300));
    if (basis == "kt") {
      KtSystem sys = build_kt(p, std::min<Index>(m_max, 64));
      for (Index m = 2; m <= std::min<Index>(m_max, 64); m += 2) {
        WitnessRecord wr = kt_witness(sys, m);
        Basis probe = sys.basis;
        probe.witnesses.push_back(wr);
        SearchBudget b2 = budget;
        b2.seed = derive_seed(seed, 0x1A, static_cast<std::uint64_t>(m));
        ParamEstimate est = lambda_u_lower(probe, b2);
        emit(sys.basis.label, "lambda_u_lower", m, static_cast<double>(m),
             est.value, exactness_name(est.exactness), witness_cell(est));
      }
    } else if (basis == "lp") {
      Basis bs = unit_basis(lp_space(p), 256, "l_p unit");
      ParamEstimate est = lambda_u_lower(bs, budget);
      emit(bs.label, "lambda_u_lower", est.m, static_cast<double>(est.m),
           est.value, exactness_name(est.exactness), witness_cell(est));
    } else {
      throw input_error("lambda-u: unknown basis '" + basis + "'");
    }
  } else {
    throw input_error("unknown experiment '" + experiment + "'");
  }
  return out.str();
}

int run_sweep(const std::string& experiment, const Options& opt, std::ostream& os) {
  std::string body = sweep_csv(experiment, opt);
  std::string path = opt.get("out", "");
  if (path.empty()) {
    os << body;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw input_error("cannot open '" + path + "' for writing");
    f << body;
    os << "wrote " << path << "\n";
  }
  return 0;
}

int run_fit(const Options& opt, std::ostream& os) {
  std::string in = opt.get("in", "");
  if (in.empty()) throw input_error("fit needs --in FILE");
  CsvTable t = read_csv(in);
  FitResult fr = fit_loglog(t.numeric(opt.get("x", "x")),
                            t.numeric(opt.get("y", "value")));
  os << "slope=" << fmt_double(fr.slope) << " intercept="
     << fmt_double(fr.intercept) << " r2=" << fmt_double(fr.r_squared)
     << " n=" << fr.n << "\n";
  return 0;
}

}  // namespace glab::cli
