#include <cmath>

#include "glab/bases.hpp"

namespace glab {

// eta(k) = k + 1 throughout: basis vector y_{eta(k)} = e_{eta(k)} + w_k e_1,
// all other y_n = e_n.  Coefficients live on indices 2..N of the l_p ambient.
PerturbedSystem build_perturbed(double p, double q, const Weight& w, Index N) {
  if (!(p > 1.0) || !(q > 1.0)) throw input_error("build_perturbed needs p, q > 1");
  if (N < 2) throw input_error("build_perturbed needs N >= 2");
  w.extend(N);
  PerturbedSystem sys;
  sys.p = p;
  sys.q = q;
  sys.w = w;
  sys.N = N;
  Basis& bs = sys.basis;
  bs.label = "perturbed(p=" + fmt_double(p) + ",q=" + fmt_double(q) + "," +
             w.label() + ")";
  bs.window = N;
  bs.space = lp_space(p);
  Weight wc = w;
  bs.synth = [wc, N](const SparseVec& a) {
    if (!a.empty() && a.entries().front().first < 2)
      throw input_error("perturbed basis coefficients start at index 2");
    if (a.max_index() > N)
      throw resource_error("perturbed basis materialized up to index " +
                           std::to_string(N));
    double e1 = 0.0;
    for (const auto& [n, v] : a.entries()) e1 += v * wc.w(n - 1);
    SparseVec out = a;
    if (e1 != 0.0) out.set(1, e1);
    return Vec2{out, SparseVec()};
  };
  bs.dual_eval = [](const Vec2& g) {
    SparseVec out = g.x;
    out.set(1, 0.0);  // the coordinate functionals never see e_1
    return out;
  };
  return sys;
}

std::pair<WitnessRecord, WitnessRecord> perturbed_witness(
    const PerturbedSystem& sys, Index m) {
  if (m < 1) throw input_error("perturbed_witness needs m >= 1");
  const Weight& w = sys.w;
  double H = w.hw(m);
  double width = std::min(1.0, std::pow(H, 1.0 / sys.q));
  // Tail interval (r, s] with H_s - H_r in [H_m, H_m + width), starting at or
  // past m so the head keeps the largest coefficients.
  auto c = [&w](Index k) { return w.w(k) / w.s(k); };
  Interval iv = select_interval(c, m, H, H + width, sys.N - 1);

  std::vector<SparseVec::Entry> head;
  for (Index k = 1; k <= m; ++k) head.push_back({k + 1, 1.0 / (H * w.s(k))});
  WitnessRecord fm;
  fm.label = "perturbed_f_" + std::to_string(m);
  fm.coeffs = SparseVec(std::move(head));
  for (Index k = 1; k <= m; ++k) fm.marked.push_back(k + 1);
  fm.expected = std::pow(H, -(1.0 - 1.0 / sys.q));
  fm.note = "synthesis approaches e_1 at rate H_m^{-1/q'}";

  std::vector<SparseVec::Entry> ents(fm.coeffs.entries());
  for (Index k = iv.r + 1; k <= iv.s; ++k)
    ents.push_back({k + 1, -1.0 / (H * w.s(k))});
  WitnessRecord um;
  um.label = "perturbed_u_" + std::to_string(m);
  um.coeffs = SparseVec(std::move(ents));
  um.marked = fm.marked;  // greedy set: head moduli dominate the tail
  um.expected = std::pow(H, 1.0 - 1.0 / sys.q);
  um.note = "greedy projection recovers f_m while u_m itself is small";
  return {std::move(fm), std::move(um)};
}

}  // namespace glab
