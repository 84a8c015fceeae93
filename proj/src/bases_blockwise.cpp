#include <algorithm>
#include <cmath>

#include "glab/bases.hpp"

namespace glab {

Index BlockwiseSystem::block_of_j(Index j) const {
  for (std::size_t k = 1; k < t.size(); ++k)
    if (j <= t[k]) return static_cast<Index>(k);
  throw input_error("coefficient index " + std::to_string(j) +
                    " is past the last block boundary");
}

std::vector<Index> blockwise_levels(Index K) {
  if (K < 1) throw input_error("blockwise_levels needs K >= 1");
  Weight harmonic = Weight::constant();
  std::vector<Index> t{0};
  for (Index k = 1; k <= K; ++k) {
    double target = 0.5 * std::log1p(static_cast<double>(k));
    double base = harmonic.hw(t.back());
    Index tk = t.back();
    do {
      ++tk;
    } while (harmonic.hw(tk) - base < target);
    t.push_back(tk);
  }
  return t;
}

// Coefficients j = 1..t_K; y_j = e_{2j} + (s_j/j) e_{2k-1} for j in block k.
BlockwiseSystem build_blockwise(double p, double q, const Weight& w,
                                std::vector<Index> t) {
  if (!(p > 1.0) || !(q > 1.0)) throw input_error("build_blockwise needs p, q > 1");
  if (t.size() < 2 || t[0] != 0)
    throw input_error("build_blockwise needs boundaries 0 = t_0 < t_1 < ...");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (t[k] <= t[k - 1]) throw input_error("block boundaries must increase");
  Index J = t.back();
  w.extend(J);
  {
    RegularityReport rep = regularity(w, std::max<Index>(J, 4));
    if (!rep.lrp_b)
      throw input_error("build_blockwise: primitive of '" + w.label() +
                        "' lacks the lower regularity property on the window");
    for (Index n = 2; n <= J; ++n)
      if (w.s(n) / n > w.s(n - 1) / (n - 1) + 1e-12)
        throw input_error("build_blockwise: s_m/m must be non-increasing");
  }

  BlockwiseSystem sys;
  sys.p = p;
  sys.q = q;
  sys.w = w;
  sys.t = t;

  // Per-coefficient data frozen up front so synthesis closures stay cheap.
  auto ratio = std::make_shared<std::vector<double>>();  // s_j/j, 1-based
  auto kof = std::make_shared<std::vector<Index>>();     // block of j
  ratio->assign(static_cast<std::size_t>(J) + 1, 0.0);
  kof->assign(static_cast<std::size_t>(J) + 1, 0);
  for (Index j = 1; j <= J; ++j) {
    (*ratio)[static_cast<std::size_t>(j)] = w.s(j) / static_cast<double>(j);
    (*kof)[static_cast<std::size_t>(j)] = sys.block_of_j(j);
  }

  Basis& bs = sys.basis;
  bs.label = "blockwise(p=" + fmt_double(p) + ",q=" + fmt_double(q) + "," +
             w.label() + ",K=" + std::to_string(sys.blocks()) + ")";
  bs.window = J;
  bs.space = lp_space(p);
  bs.synth = [ratio, kof, J](const SparseVec& a) {
    if (a.max_index() > J)
      throw resource_error("blockwise basis materialized up to coefficient " +
                           std::to_string(J));
    std::vector<SparseVec::Entry> ents;
    std::vector<std::pair<Index, double>> odd;  // (k, accumulated coupling)
    for (const auto& [j, v] : a.entries()) {
      ents.push_back({2 * j, v});
      Index k = (*kof)[static_cast<std::size_t>(j)];
      double c = v * (*ratio)[static_cast<std::size_t>(j)];
      if (!odd.empty() && odd.back().first == k)
        odd.back().second += c;
      else
        odd.push_back({k, c});
    }
    for (const auto& [k, c] : odd) ents.push_back({2 * k - 1, c});
    return Vec2{SparseVec(std::move(ents)), SparseVec()};
  };
  bs.dual_eval = [](const Vec2& g) {
    std::vector<SparseVec::Entry> ents;
    for (const auto& [n, v] : g.x.entries())
      if (n % 2 == 0) ents.push_back({n / 2, v});
    return SparseVec(std::move(ents));
  };

  for (Index k = 1; k <= sys.blocks(); ++k) {
    std::vector<SparseVec::Entry> ents;
    ents.push_back({2 * k - 1, 1.0});
    for (Index j = t[static_cast<std::size_t>(k - 1)] + 1;
         j <= t[static_cast<std::size_t>(k)]; ++j)
      ents.push_back({2 * j, -(*ratio)[static_cast<std::size_t>(j)]});
    sys.annihilators.push_back(SparseVec(std::move(ents)));
  }
  return sys;
}

BlockwiseWitness blockwise_witness(const BlockwiseSystem& sys, Index k,
                                   const std::vector<Index>* pi) {
  if (k < 1 || k > sys.blocks())
    throw input_error("blockwise_witness: block " + std::to_string(k) +
                      " not materialized");
  Index lo = sys.t[static_cast<std::size_t>(k - 1)] + 1;
  Index hi = sys.t[static_cast<std::size_t>(k)];
  std::vector<Index> order;
  if (pi) {
    order = *pi;
    std::vector<Index> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Index> expect;
    for (Index j = lo; j <= hi; ++j) expect.push_back(j);
    if (sorted != expect)
      throw input_error("blockwise_witness: pi must permute the block " +
                        std::to_string(lo) + ".." + std::to_string(hi));
  } else {
    for (Index j = lo; j <= hi; ++j) order.push_back(j);
  }

  Weight harmonic = Weight::constant();
  double Lambda = harmonic.hw(hi) - harmonic.hw(lo - 1);
  // A_k: minimal prefix of the block in pi-order with Gamma > Lambda/2.
  double Gamma = 0.0;
  IndexSet A;
  std::size_t i = 0;
  while (Gamma <= Lambda / 2.0) {
    if (i >= order.size())
      throw input_error("blockwise_witness: block sums cannot exceed Lambda/2");
    A.push_back(order[i]);
    Gamma += 1.0 / static_cast<double>(order[i]);
    ++i;
  }
  std::sort(A.begin(), A.end());
  // Recompute Gamma in ascending order with the exact products synthesis
  // uses, so the odd-coordinate functional reproduces it bitwise.
  Gamma = 0.0;
  for (Index j : A) Gamma += (1.0 / sys.w.s(j)) * (sys.w.s(j) / static_cast<double>(j));
  double Theta = Lambda - Gamma;

  std::vector<SparseVec::Entry> gents, fents;
  for (Index j = lo; j <= hi; ++j) {
    double c = 1.0 / sys.w.s(j);
    if (set_contains(A, j)) {
      gents.push_back({j, c});
      fents.push_back({j, c});
    } else {
      fents.push_back({j, -c});
    }
  }

  BlockwiseWitness bw;
  bw.Lambda = Lambda;
  bw.Gamma = Gamma;
  bw.Theta = Theta;
  bw.g.label = "blockwise_g_" + std::to_string(k);
  bw.g.coeffs = SparseVec(std::move(gents));
  bw.g.marked = A;
  bw.g.expected = Gamma;
  bw.g.note = "odd-coordinate functional of the block evaluates to Gamma";
  bw.f.label = "blockwise_f_" + std::to_string(k);
  bw.f.coeffs = SparseVec(std::move(fents));
  bw.f.marked = A;
  bw.f.expected = std::pow(Lambda, 1.0 - 1.0 / sys.q);
  bw.f.note = "projection onto the marked set is g_k; ratio grows with Lambda";
  return bw;
}

}  // namespace glab
