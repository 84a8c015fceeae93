#include <cmath>

#include "glab/bases.hpp"

namespace glab {

Basis unit_basis(const Space& sp, Index window, const std::string& label) {
  Basis bs;
  bs.label = label;
  bs.window = window;
  bs.space = sp;
  bs.unit_vectors = true;
  bs.synth = [](const SparseVec& a) { return Vec2{a, SparseVec()}; };
  bs.dual_eval = [](const Vec2& g) { return g.x; };
  if (sp.symmetric) {
    Space spc = sp;
    bs.phi_exact = [spc](Index m) {
      IndexSet a;
      for (Index n = 1; n <= m; ++n) a.push_back(n);
      return spc.norm(indicator(a));
    };
    if (sp.dual) {
      auto dual = sp.dual;
      bs.dual_phi_exact = [dual](Index m) {
        IndexSet a;
        for (Index n = 1; n <= m; ++n) a.push_back(n);
        return dual->norm(indicator(a));
      };
    }
  }
  return bs;
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

std::pair<SparseVec, SparseVec> diamond_rotate(const SparseVec& c) {
  std::vector<SparseVec::Entry> xs, ys;
  const auto& ents = c.entries();
  for (std::size_t i = 0; i < ents.size(); ++i) {
    Index idx = ents[i].first;
    Index n = (idx + 1) / 2;
    double odd = 0.0, even = 0.0;
    if (idx % 2 == 1) {
      odd = ents[i].second;
      if (i + 1 < ents.size() && ents[i + 1].first == idx + 1) {
        even = ents[i + 1].second;
        ++i;
      }
    } else {
      even = ents[i].second;
    }
    double xv = (odd + even) * kInvSqrt2;
    double yv = (odd - even) * kInvSqrt2;
    if (xv != 0.0) xs.push_back({n, xv});
    if (yv != 0.0) ys.push_back({n, yv});
  }
  return {SparseVec(std::move(xs)), SparseVec(std::move(ys))};
}

DiamondSystem build_diamond(const Basis& bx, const Basis& by) {
  if (bx.pair_ambient || by.pair_ambient)
    throw input_error("build_diamond needs scalar-ambient components");
  if (bx.window != by.window)
    throw input_error("build_diamond needs equal component windows");
  DiamondSystem sys;
  sys.bx = bx;
  sys.by = by;
  Basis& bs = sys.basis;
  bs.label = "diamond(" + bx.label + "," + by.label + ")";
  bs.window = 2 * bx.window;
  bs.pair_ambient = true;
  bs.pspace = pair_space(bx.space, by.space);
  Basis cx = bx, cy = by;
  bs.synth = [cx, cy](const SparseVec& c) {
    auto [ax, ay] = diamond_rotate(c);
    return Vec2{cx.synth(ax).x, cy.synth(ay).x};
  };
  bs.dual_eval = [cx, cy](const Vec2& g) {
    SparseVec xc = cx.dual_eval(Vec2{g.x, SparseVec()});
    SparseVec yc = cy.dual_eval(Vec2{g.y, SparseVec()});
    std::vector<SparseVec::Entry> ents;
    auto ix = xc.entries().begin(), ex = xc.entries().end();
    auto iy = yc.entries().begin(), ey = yc.entries().end();
    while (ix != ex || iy != ey) {
      Index n;
      double xv = 0.0, yv = 0.0;
      if (iy == ey || (ix != ex && ix->first <= iy->first)) n = ix->first;
      else n = iy->first;
      if (ix != ex && ix->first == n) { xv = ix->second; ++ix; }
      if (iy != ey && iy->first == n) { yv = iy->second; ++iy; }
      double odd = (xv + yv) * kInvSqrt2;
      double even = (xv - yv) * kInvSqrt2;
      if (odd != 0.0) ents.push_back({2 * n - 1, odd});
      if (even != 0.0) ents.push_back({2 * n, even});
    }
    return SparseVec(std::move(ents));
  };
  return sys;
}

std::pair<WitnessRecord, WitnessRecord> diamond_conditionality_witness(
    const DiamondSystem& sys, const SparseVec& a) {
  std::vector<SparseVec::Entry> odd, even;
  for (const auto& [n, v] : a.entries()) {
    odd.push_back({2 * n - 1, v});
    even.push_back({2 * n, v});
  }
  double xnorm = sys.bx.space.norm(sys.bx.synth(a).x);
  double ynorm = sys.by.space.norm(sys.by.synth(a).x);
  double expected =
      0.5 * std::max(xnorm / ynorm, ynorm / xnorm);

  WitnessRecord fo, fe;
  fo.label = "diamond_f_odd";
  fo.coeffs = SparseVec(std::move(odd));
  fo.marked = fo.coeffs.support();
  fo.expected = expected;
  fo.note = "odd rotated copy of the profile";
  fe.label = "diamond_f_even";
  fe.coeffs = SparseVec(std::move(even));
  fe.marked = fe.coeffs.support();
  fe.expected = expected;
  fe.note = "even rotated copy of the profile";
  return {std::move(fo), std::move(fe)};
}

}  // namespace glab
