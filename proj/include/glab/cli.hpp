#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "glab/seqcore.hpp"

namespace glab::cli {

// Flat key=value configuration; command-line flags overlay file entries.
struct Options {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }
  void set(const std::string& k, const std::string& v) { kv[k] = v; }
  std::string get(const std::string& k, const std::string& def) const;
  double get_d(const std::string& k, double def) const;
  Index get_i(const std::string& k, Index def) const;
  std::uint64_t get_u(const std::string& k, std::uint64_t def) const;
};

Options load_config(const std::string& path);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: seqcore, weights, spaces, kt, perturbed, blockwise, diamond,
// embeddings, greedy.  Unknown suite -> input_error.
std::vector<CheckResult> verify_suite(const std::string& suite, const Options& opt);

// Experiments: kt-growth, perturbed-growth, blockwise-growth,
// diamond-conditionality, bidem-quotient, lambda-u.  Returns the full CSV
// text (comments + header + rows).
std::string sweep_csv(const std::string& experiment, const Options& opt);

// Constructions: kt (tables), kt-witnesses, perturbed, blockwise, diamond.
std::string construct_csv(const std::string& what, const Options& opt);

int run_verify(const std::string& suite, const Options& opt, std::ostream& os);
int run_sweep(const std::string& experiment, const Options& opt, std::ostream& os);
int run_construct(const std::string& what, const Options& opt, std::ostream& os);
int run_fit(const Options& opt, std::ostream& os);

}  // namespace glab::cli
