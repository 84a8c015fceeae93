#include "glab/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace glab {

std::uint64_t derive_seed(std::uint64_t global, std::uint64_t a, std::uint64_t b) {
  // splitmix64 over the packed inputs
  std::uint64_t z = global + 0x9e3779b97f4a7c15ULL * (a + 1) +
                    0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const char* exactness_name(Exactness e) {
  switch (e) {
    case Exactness::exact: return "exact";
    case Exactness::certified_lower_bound: return "certified-lower-bound";
    case Exactness::bracketed: return "bracketed";
  }
  return "?";
}

namespace {

struct RankedEntry {
  double mod;
  Index idx;
};

// Support sorted by (|coef| desc, index asc).
std::vector<RankedEntry> ranked(const SparseVec& f) {
  std::vector<RankedEntry> v;
  v.reserve(f.size());
  for (const auto& [n, c] : f.entries()) v.push_back({std::fabs(c), n});
  std::stable_sort(v.begin(), v.end(), [](const RankedEntry& a, const RankedEntry& b) {
    if (a.mod != b.mod) return a.mod > b.mod;
    return a.idx < b.idx;
  });
  return v;
}

}  // namespace

IndexSet canonical_greedy_set(const SparseVec& f, Index m) {
  if (m < 0 || m > static_cast<Index>(f.size()))
    throw input_error("greedy set cardinality must be within the support size");
  auto v = ranked(f);
  IndexSet a;
  for (Index i = 0; i < m; ++i) a.push_back(v[static_cast<std::size_t>(i)].idx);
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<IndexSet> greedy_sets(const SparseVec& f, Index m, bool all_mode) {
  if (!all_mode) return {canonical_greedy_set(f, m)};
  if (m < 0 || m > static_cast<Index>(f.size()))
    throw input_error("greedy set cardinality must be within the support size");
  if (m == 0) return {IndexSet{}};
  auto v = ranked(f);
  double pivot = v[static_cast<std::size_t>(m - 1)].mod;
  // Indices strictly above the pivot modulus are forced; the remainder is
  // chosen freely from the pivot tie class.
  IndexSet forced, ties;
  for (const auto& e : v) {
    if (e.mod > pivot)
      forced.push_back(e.idx);
    else if (e.mod == pivot)
      ties.push_back(e.idx);
  }
  std::size_t need = static_cast<std::size_t>(m) - forced.size();
  std::size_t t = ties.size();
  // Count C(t, need) against the enumeration cap.
  double count = 1.0;
  for (std::size_t i = 0; i < need; ++i)
    count *= static_cast<double>(t - i) / static_cast<double>(i + 1);
  if (count > static_cast<double>(1 << 20))
    throw resource_error("greedy tie class too large to enumerate (" +
                         fmt_double(count) + " sets)");
  std::sort(ties.begin(), ties.end());
  std::vector<IndexSet> out;
  std::vector<std::size_t> pick(need);
  for (std::size_t i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    IndexSet a = forced;
    for (std::size_t i : pick) a.push_back(ties[i]);
    std::sort(a.begin(), a.end());
    out.push_back(std::move(a));
    if (need == 0) break;
    // next combination
    std::size_t i = need;
    while (i > 0 && pick[i - 1] == t - (need - i) - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparseVec truncation(const SparseVec& f, const IndexSet& B) {
  if (B.empty()) throw input_error("truncation needs a nonempty set");
  double minmod = kInfinity;
  for (Index n : B) {
    double v = f.at(n);
    if (v == 0.0)
      throw input_error("truncation set must lie inside the support");
    minmod = std::min(minmod, std::fabs(v));
  }
  std::vector<SparseVec::Entry> ents;
  for (Index n : B) ents.push_back({n, f.at(n) > 0 ? minmod : -minmod});
  return SparseVec(std::move(ents));
}

namespace {

double eval_norm(const Basis& bs, const SparseVec& coeffs) {
  return bs.norm(bs.synth(coeffs));
}

// Candidate index sets of size m: the coefficient prefix, witness marked sets
// and supports (top-m pieces), and seeded random sets biased toward small
// indices.
std::vector<IndexSet> candidate_sets(const Basis& bs, Index m,
                                     const SearchBudget& budget) {
  std::vector<IndexSet> out;
  if (m > bs.window) return out;
  IndexSet prefix;
  for (Index n = 1; n <= m; ++n) prefix.push_back(n);
  out.push_back(prefix);
  if (bs.pair_ambient && 2 * m <= bs.window) {
    IndexSet odd, even;
    for (Index n = 1; n <= m; ++n) {
      odd.push_back(2 * n - 1);
      even.push_back(2 * n);
    }
    out.push_back(odd);
    out.push_back(even);
  }
  for (const WitnessRecord& wr : bs.witnesses) {
    if (static_cast<Index>(wr.marked.size()) == m) out.push_back(wr.marked);
    IndexSet supp = wr.coeffs.support();
    if (static_cast<Index>(supp.size()) >= m)
      out.push_back(IndexSet(supp.begin(), supp.begin() + m));
  }
  std::mt19937_64 rng(derive_seed(budget.seed, 0xA5, static_cast<std::uint64_t>(m)));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int nsets = std::min(budget.trials, 64);
  for (int t = 0; t < nsets; ++t) {
    IndexSet a;
    std::set<Index> used;
    while (static_cast<Index>(a.size()) < m) {
      double x = u(rng);
      Index n = 1 + static_cast<Index>(x * x * static_cast<double>(bs.window));
      n = std::min(n, bs.window);
      if (used.insert(n).second) a.push_back(n);
    }
    std::sort(a.begin(), a.end());
    out.push_back(std::move(a));
  }
  return out;
}

// Best signed-indicator norm over a set (exhaustive signs up to the cap,
// random draws beyond); maximize or minimize.
std::pair<double, SparseVec> best_signed(const Basis& bs, const IndexSet& a,
                                         const SearchBudget& budget,
                                         bool maximize) {
  std::size_t m = a.size();
  double best = maximize ? -kInfinity : kInfinity;
  SparseVec best_vec;
  auto consider = [&](const SparseVec& v) {
    double val = eval_norm(bs, v);
    if (maximize ? (val > best) : (val < best)) {
      best = val;
      best_vec = v;
    }
  };
  if (static_cast<int>(m) <= budget.sign_cap) {
    // Fix the first sign to +1: norms are sign-symmetric under global flip.
    std::uint64_t lim = m > 0 ? (1ULL << (m - 1)) : 1;
    for (std::uint64_t mask = 0; mask < lim; ++mask) {
      std::vector<SparseVec::Entry> ents;
      for (std::size_t i = 0; i < m; ++i) {
        double sg = (i == 0 || !((mask >> (i - 1)) & 1)) ? 1.0 : -1.0;
        ents.push_back({a[i], sg});
      }
      consider(SparseVec(std::move(ents)));
    }
  } else {
    std::mt19937_64 rng(derive_seed(budget.seed, 0x51, m));
    consider(indicator(a));
    for (int t = 0; t < budget.random_signs; ++t) {
      std::vector<SparseVec::Entry> ents;
      for (std::size_t i = 0; i < m; ++i)
        ents.push_back({a[i], (rng() & 1) ? 1.0 : -1.0});
      consider(SparseVec(std::move(ents)));
    }
  }
  return {best, best_vec};
}

SparseVec random_vector(const Basis& bs, std::mt19937_64& rng,
                        const SearchBudget& budget, Index min_support) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Index target = std::min<Index>(
      bs.window, min_support + static_cast<Index>(u(rng) * static_cast<double>(
                                   budget.support_cap - min_support + 1)));
  std::set<Index> used;
  while (static_cast<Index>(used.size()) < target) {
    double x = u(rng);
    Index n = 1 + static_cast<Index>(x * x * static_cast<double>(bs.window));
    used.insert(std::min(n, bs.window));
  }
  std::vector<SparseVec::Entry> ents;
  for (Index n : used) {
    double mag = std::pow(10.0, -2.0 * u(rng));  // heavy-tailed moduli
    ents.push_back({n, (rng() & 1) ? mag : -mag});
  }
  return SparseVec(std::move(ents));
}

WitnessRecord make_witness(const std::string& label, const SparseVec& coeffs,
                           const IndexSet& marked, double value,
                           const std::string& note) {
  WitnessRecord wr;
  wr.label = label;
  wr.coeffs = coeffs;
  wr.marked = marked;
  wr.expected = value;
  wr.note = note;
  return wr;
}

}  // namespace

ParamEstimate phi_u(const Basis& bs, Index m, const SearchBudget& budget) {
  bs.check_window(m);
  ParamEstimate est;
  est.quantity = "phi_u";
  est.m = m;
  est.seed = budget.seed;
  IndexSet prefix;
  for (Index n = 1; n <= m; ++n) prefix.push_back(n);
  if (bs.phi_exact) {
    est.value = bs.phi_exact(m);
    est.exactness = Exactness::exact;
    est.witness = make_witness("phi_u_indicator", indicator(prefix), prefix,
                               est.value, "flat indicator attains the norm");
    return est;
  }
  est.exactness = Exactness::certified_lower_bound;
  est.value = -kInfinity;
  for (const IndexSet& a : candidate_sets(bs, m, budget)) {
    auto [val, vec] = best_signed(bs, a, budget, true);
    if (val > est.value) {
      est.value = val;
      est.witness = make_witness("phi_u_witness", vec, a, val,
                                 "best signed indicator found");
    }
  }
  return est;
}

ParamEstimate phi_l(const Basis& bs, Index m, const SearchBudget& budget) {
  bs.check_window(m);
  ParamEstimate est;
  est.quantity = "phi_l";
  est.m = m;
  est.seed = budget.seed;
  IndexSet prefix;
  for (Index n = 1; n <= m; ++n) prefix.push_back(n);
  if (bs.phi_exact) {
    est.value = bs.phi_exact(m);
    est.exactness = Exactness::exact;
    est.witness = make_witness("phi_l_indicator", indicator(prefix), prefix,
                               est.value, "flat indicator attains the norm");
    return est;
  }
  // Upper bound on the inf over |A| >= m, restricted to the window.
  est.exactness = Exactness::bracketed;
  est.value = kInfinity;
  for (const IndexSet& a : candidate_sets(bs, m, budget)) {
    auto [val, vec] = best_signed(bs, a, budget, false);
    if (val < est.value) {
      est.value = val;
      est.witness = make_witness("phi_l_witness", vec, a, val,
                                 "smallest signed indicator found");
    }
  }
  return est;
}

ParamEstimate dual_phi_u(const Basis& bs, Index m, const SearchBudget& budget) {
  bs.check_window(m);
  ParamEstimate est;
  est.quantity = "dual_phi_u";
  est.m = m;
  est.seed = budget.seed;
  if (bs.dual_phi_exact) {
    est.value = bs.dual_phi_exact(m);
    est.exactness = Exactness::exact;
    return est;
  }
  if (!bs.pair_ambient && bs.unit_vectors && bs.space.dual) {
    // Dual functionals of a unit-vector system are unit vectors of the dual
    // space; evaluate candidates there.
    const Space& dual = *bs.space.dual;
    est.exactness = dual.symmetric ? Exactness::exact
                                   : Exactness::certified_lower_bound;
    est.value = -kInfinity;
    for (const IndexSet& a : candidate_sets(bs, m, budget)) {
      double val = dual.norm(indicator(a));
      if (val > est.value) {
        est.value = val;
        est.witness = make_witness("dual_phi_u_witness", indicator(a), a, val,
                                   "dual-space indicator norm");
      }
      if (dual.symmetric) break;  // all size-m sets agree
    }
    return est;
  }
  if (bs.pair_ambient && bs.pspace.left.dual && bs.pspace.right.dual) {
    // (X (+max) Y)* carries the sum norm; rotated dual indicators split into
    // component dual vectors through the same coefficient rotation.
    const Space& dx = *bs.pspace.left.dual;
    const Space& dy = *bs.pspace.right.dual;
    est.exactness = Exactness::certified_lower_bound;
    est.value = -kInfinity;
    for (const IndexSet& a : candidate_sets(bs, m, budget)) {
      std::size_t sz = a.size();
      auto eval_signs = [&](const SparseVec& sv) {
        auto [xf, yf] = diamond_rotate(sv);
        return dx.norm(xf) + dy.norm(yf);
      };
      double bestv = -kInfinity;
      SparseVec bestvec;
      if (static_cast<int>(sz) <= budget.sign_cap) {
        std::uint64_t lim = sz > 0 ? (1ULL << (sz - 1)) : 1;
        for (std::uint64_t mask = 0; mask < lim; ++mask) {
          std::vector<SparseVec::Entry> ents;
          for (std::size_t i = 0; i < sz; ++i) {
            double sg = (i == 0 || !((mask >> (i - 1)) & 1)) ? 1.0 : -1.0;
            ents.push_back({a[i], sg});
          }
          SparseVec sv(std::move(ents));
          double v = eval_signs(sv);
          if (v > bestv) { bestv = v; bestvec = sv; }
        }
      } else {
        std::mt19937_64 rng(derive_seed(budget.seed, 0xD7, sz));
        for (int t = 0; t <= budget.random_signs; ++t) {
          std::vector<SparseVec::Entry> ents;
          for (std::size_t i = 0; i < sz; ++i)
            ents.push_back({a[i], (t > 0 && (rng() & 1)) ? -1.0 : 1.0});
          SparseVec sv(std::move(ents));
          double v = eval_signs(sv);
          if (v > bestv) { bestv = v; bestvec = sv; }
        }
      }
      if (bestv > est.value) {
        est.value = bestv;
        est.witness = make_witness("dual_phi_u_witness", bestvec, a, bestv,
                                   "sum of component dual norms");
      }
    }
    return est;
  }
  // Generic fallback: ||1*_{eps,A}|| >= (sum_{n in A} |a_n(f)|) / ||f|| for
  // any f, taking signs from f itself.
  est.exactness = Exactness::certified_lower_bound;
  est.value = -kInfinity;
  std::mt19937_64 rng(derive_seed(budget.seed, 0xDF, static_cast<std::uint64_t>(m)));
  std::vector<SparseVec> pool;
  for (const WitnessRecord& wr : bs.witnesses) pool.push_back(wr.coeffs);
  for (int t = 0; t < std::min(budget.trials, 200); ++t)
    pool.push_back(random_vector(bs, rng, budget, m));
  for (const SparseVec& f : pool) {
    if (static_cast<Index>(f.size()) < m) continue;
    double nf = eval_norm(bs, f);
    if (nf == 0.0) continue;
    IndexSet top = canonical_greedy_set(f, m);
    double num = 0.0;
    for (Index n : top) num += std::fabs(f.at(n));
    double val = num / nf;
    if (val > est.value) {
      est.value = val;
      est.witness = make_witness("dual_phi_u_witness", f, top, val,
                                 "pairing lower bound against this vector");
    }
  }
  return est;
}

ParamEstimate bidem_quotient(const Basis& bs, Index m, const SearchBudget& budget) {
  ParamEstimate pu = phi_u(bs, m, budget);
  ParamEstimate du = dual_phi_u(bs, m, budget);
  ParamEstimate est;
  est.quantity = "bidem_quotient";
  est.m = m;
  est.seed = budget.seed;
  est.value = std::max(1.0, pu.value * du.value / static_cast<double>(m));
  est.exactness = (pu.exactness == Exactness::exact &&
                   du.exactness == Exactness::exact)
                      ? Exactness::exact
                      : Exactness::certified_lower_bound;
  return est;
}

namespace {

// Shared search loop for the projection-type parameters.
ParamEstimate projection_sup(const Basis& bs, Index m, const SearchBudget& budget,
                             const std::string& quantity, bool greedy_only) {
  ParamEstimate est;
  est.quantity = quantity;
  est.m = m;
  est.seed = budget.seed;
  est.exactness = Exactness::certified_lower_bound;
  est.value = -kInfinity;
  auto consider = [&](const SparseVec& f, const IndexSet& a, const char* how) {
    double nf = eval_norm(bs, f);
    if (nf == 0.0) return;
    double val = eval_norm(bs, project(f, a)) / nf;
    if (val > est.value) {
      est.value = val;
      est.witness = make_witness(quantity + "_witness", f, a, val, how);
    }
  };
  for (const WitnessRecord& wr : bs.witnesses) {
    if (static_cast<Index>(wr.marked.size()) != m) continue;
    if (greedy_only) {
      // only usable when the marked set is a greedy set of the coefficients
      IndexSet g = canonical_greedy_set(wr.coeffs, m);
      double thr = kInfinity;
      for (Index n : wr.marked) thr = std::min(thr, std::fabs(wr.coeffs.at(n)));
      bool ok = true;
      for (const auto& [n, v] : wr.coeffs.entries())
        if (!set_contains(wr.marked, n) && std::fabs(v) > thr) ok = false;
      (void)g;
      if (!ok) continue;
    }
    consider(wr.coeffs, wr.marked, "registered witness");
  }
  std::mt19937_64 rng(derive_seed(budget.seed, greedy_only ? 0x61 : 0x6B,
                                  static_cast<std::uint64_t>(m)));
  for (int t = 0; t < budget.trials; ++t) {
    SparseVec f = random_vector(bs, rng, budget, m);
    if (static_cast<Index>(f.size()) < m) continue;
    if (greedy_only) {
      consider(f, canonical_greedy_set(f, m), "random vector, greedy set");
    } else {
      consider(f, canonical_greedy_set(f, m), "random vector, greedy set");
      IndexSet supp = f.support();
      std::shuffle(supp.begin(), supp.end(), rng);
      IndexSet a(supp.begin(), supp.begin() + m);
      std::sort(a.begin(), a.end());
      consider(f, a, "random vector, random set");
    }
  }
  return est;
}

}  // namespace

ParamEstimate g_lower(const Basis& bs, Index m, const SearchBudget& budget) {
  return projection_sup(bs, m, budget, "g_lower", true);
}

ParamEstimate k_lower(const Basis& bs, Index m, const SearchBudget& budget) {
  return projection_sup(bs, m, budget, "k_lower", false);
}

ParamEstimate lambda_u_lower(const Basis& bs, const SearchBudget& budget) {
  ParamEstimate est;
  est.quantity = "lambda_u_lower";
  est.m = 0;
  est.seed = budget.seed;
  est.exactness = Exactness::certified_lower_bound;
  est.value = -kInfinity;
  auto consider = [&](const SparseVec& f, Index m) {
    if (m < 1 || m > static_cast<Index>(f.size())) return;
    double nf = eval_norm(bs, f);
    if (nf == 0.0) return;
    IndexSet a = canonical_greedy_set(f, m);
    double val = eval_norm(bs, truncation(f, a)) / nf;
    if (val > est.value) {
      est.value = val;
      est.m = m;
      est.witness = make_witness("lambda_u_witness", f, a, val,
                                 "restricted truncation on a greedy set");
    }
  };
  for (const WitnessRecord& wr : bs.witnesses)
    for (Index m : {static_cast<Index>(wr.marked.size()),
                    static_cast<Index>(wr.coeffs.size())})
      consider(wr.coeffs, m);
  std::mt19937_64 rng(derive_seed(budget.seed, 0x7C, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < budget.trials; ++t) {
    SparseVec f = random_vector(bs, rng, budget, 1);
    Index m = 1 + static_cast<Index>(u(rng) * static_cast<double>(f.size()));
    consider(f, std::min<Index>(m, static_cast<Index>(f.size())));
  }
  return est;
}

ParamEstimate E_lower(const Basis& bx, const Basis& by, Index m,
                      const SearchBudget& budget,
                      const std::vector<SparseVec>& extra_profiles) {
  bx.check_window(m);
  by.check_window(m);
  ParamEstimate est;
  est.quantity = "E_lower";
  est.m = m;
  est.seed = budget.seed;
  est.exactness = Exactness::certified_lower_bound;
  est.value = -kInfinity;
  auto consider = [&](const SparseVec& a) {
    if (a.empty() || static_cast<Index>(a.size()) > m) return;
    double den = by.norm(by.synth(a));
    if (den == 0.0) return;
    double val = bx.norm(bx.synth(a)) / den;
    if (val > est.value) {
      est.value = val;
      est.witness = make_witness("E_lower_witness", a, a.support(), val,
                                 "cross-norm ratio profile");
    }
  };
  std::vector<SparseVec> profiles = extra_profiles;
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    std::vector<SparseVec::Entry> ents;
    for (Index n = 1; n <= m; ++n)
      ents.push_back({n, std::pow(static_cast<double>(n), -alpha)});
    profiles.push_back(SparseVec(std::move(ents)));
  }
  {
    std::vector<SparseVec::Entry> ents;
    double v = 1.0;
    for (Index n = 1; n <= m; ++n, v *= 0.5) ents.push_back({n, v});
    profiles.push_back(SparseVec(std::move(ents)));
  }
  for (const SparseVec& a : profiles) consider(a);
  std::mt19937_64 rng(derive_seed(budget.seed, 0xE1, static_cast<std::uint64_t>(m)));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < budget.trials; ++t) {
    std::vector<SparseVec::Entry> ents;
    for (Index n = 1; n <= m; ++n) {
      double mag = std::pow(10.0, -2.0 * u(rng));
      ents.push_back({n, (rng() & 1) ? mag : -mag});
    }
    consider(SparseVec(std::move(ents)));
  }
  return est;
}

bool recheck(const Basis& bs, const ParamEstimate& est) {
  if (!est.witness) return est.exactness == Exactness::exact;
  const WitnessRecord& wr = *est.witness;
  double again;
  if (est.quantity == "phi_u" || est.quantity == "phi_l") {
    again = eval_norm(bs, wr.coeffs);
  } else if (est.quantity == "g_lower" || est.quantity == "k_lower") {
    again = eval_norm(bs, project(wr.coeffs, wr.marked)) / eval_norm(bs, wr.coeffs);
  } else if (est.quantity == "lambda_u_lower") {
    again = eval_norm(bs, truncation(wr.coeffs, wr.marked)) / eval_norm(bs, wr.coeffs);
  } else {
    return true;  // quantities whose witnesses are re-checked by their callers
  }
  return std::fabs(again - est.value) <= 1e-9 * std::max(1.0, std::fabs(est.value));
}

}  // namespace glab
