#include <fstream>
#include <ostream>

#include "glab/cli.hpp"
#include "glab/csv.hpp"
#include "glab/greedy.hpp"

namespace glab::cli {

namespace {

void witness_rows(CsvWriter& out, const std::vector<WitnessRecord>& ws) {
  out.header({"label", "coefficients", "set", "expected", "note"});
  for (const WitnessRecord& wr : ws)
    out.row({wr.label, to_cell(wr.coeffs), to_cell(wr.marked),
             fmt_double(wr.expected), wr.note});
}

}  // namespace

std::string construct_csv(const std::string& what, const Options& opt) {
  double p = opt.get_d("p", 2.0);
  double q = opt.get_d("q", p);
  Index M = opt.get_i("m-max", 12);
  CsvWriter out;
  out.comment("construct", what);
  for (const auto& [k, v] : opt.kv) out.comment(k, v);

  if (what == "kt") {
    KtSystem sys = build_kt(p, M);
    out.header({"m", "k", "r", "s", "T", "i"});
    for (Index m = 1; m <= M; ++m)
      for (Index k = 1; k <= m; ++k) {
        std::size_t idx = KtTables::pair_index(m, k);
        out.row({std::to_string(m), std::to_string(k),
                 std::to_string(sys.t->r[idx]), std::to_string(sys.t->s[idx]),
                 fmt_double(sys.t->T[idx]), std::to_string(sys.t->i_mk[idx])});
      }
  } else if (what == "kt-witnesses") {
    KtSystem sys = build_kt(p, M);
    std::vector<WitnessRecord> ws;
    for (Index m = 2; m <= M; ++m) ws.push_back(kt_witness(sys, m));
    witness_rows(out, ws);
  } else if (what == "perturbed") {
    Weight w = Weight::power(p);
    Index window = opt.get_i("window", 60 * M * M + 64);
    PerturbedSystem sys = build_perturbed(p, q, w, window);
    std::vector<WitnessRecord> ws;
    for (Index m = 2; m <= M; ++m) {
      auto [fm, um] = perturbed_witness(sys, m);
      ws.push_back(fm);
      ws.push_back(um);
    }
    witness_rows(out, ws);
  } else if (what == "blockwise") {
    Weight w = Weight::power(p);
    BlockwiseSystem sys = build_blockwise(p, q, w, blockwise_levels(M));
    std::vector<WitnessRecord> ws;
    for (Index k = 1; k <= sys.blocks(); ++k) {
      BlockwiseWitness bw = blockwise_witness(sys, k);
      ws.push_back(bw.g);
      ws.push_back(bw.f);
    }
    witness_rows(out, ws);
  } else if (what == "diamond") {
    Weight w = Weight::power(2.0);
    Space X = lorentz_space(w, 1.0);
    Space Y = marcinkiewicz0_space(Weight::dual_primitive(w));
    DiamondSystem sys = build_diamond(unit_basis(X, M, "d11"),
                                      unit_basis(Y, M, "m0dual"));
    std::vector<WitnessRecord> ws;
    std::vector<SparseVec::Entry> prof;
    for (Index n = 1; n <= M; ++n) prof.push_back({n, 1.0 / w.s(n)});
    auto [fo, fe] = diamond_conditionality_witness(sys, SparseVec(std::move(prof)));
    ws.push_back(fo);
    ws.push_back(fe);
    witness_rows(out, ws);
  } else {
    throw input_error("unknown construction '" + what + "'");
  }
  return out.str();
}

int run_construct(const std::string& what, const Options& opt, std::ostream& os) {
  std::string body = construct_csv(what, opt);
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

}  // namespace glab::cli
