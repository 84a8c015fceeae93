#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glab/bases.hpp"
#include "glab/seqcore.hpp"

namespace glab {

// Seeded search configuration.  Each (m, trial) cell derives its own
// generator from the global seed, so results are order-independent.
struct SearchBudget {
  std::uint64_t seed = 20260826;
  int trials = 1000;
  int sign_cap = 20;        // exhaustive sign search up to this set size
  int random_signs = 64;    // random sign draws past the cap
  Index support_cap = 48;   // support size cap for random vectors
};

std::uint64_t derive_seed(std::uint64_t global, std::uint64_t a, std::uint64_t b);

// Greedy sets of cardinality m.  Canonical mode breaks modulus ties by
// "smaller index wins"; all mode enumerates every tie resolution (at most
// 2^20 sets, else resource error).  m > |support| is refused.
std::vector<IndexSet> greedy_sets(const SparseVec& f, Index m, bool all_mode);
IndexSet canonical_greedy_set(const SparseVec& f, Index m);

// Restricted truncation: (min_{n in B} |f_n|) * sum_{n in B} sgn(f_n) e_n.
SparseVec truncation(const SparseVec& f, const IndexSet& B);

enum class Exactness { exact, certified_lower_bound, bracketed };
const char* exactness_name(Exactness e);

struct ParamEstimate {
  std::string quantity;
  Index m = 0;
  double value = 0.0;
  Exactness exactness = Exactness::certified_lower_bound;
  std::optional<WitnessRecord> witness;
  std::uint64_t seed = 0;
};

ParamEstimate phi_u(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate phi_l(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate dual_phi_u(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate bidem_quotient(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate g_lower(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate k_lower(const Basis& bs, Index m, const SearchBudget& budget);
ParamEstimate lambda_u_lower(const Basis& bs, const SearchBudget& budget);
ParamEstimate E_lower(const Basis& bx, const Basis& by, Index m,
                      const SearchBudget& budget,
                      const std::vector<SparseVec>& extra_profiles = {});

// Re-evaluates the stored witness of an estimate; true when it reproduces
// the recorded value to relative 1e-9.
bool recheck(const Basis& bs, const ParamEstimate& est);

}  // namespace glab
