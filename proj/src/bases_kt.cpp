#include <algorithm>
#include <cmath>

#include "glab/bases.hpp"

namespace glab {

namespace {

double clover_of(const KtTables& tb, const SparseVec& f) {
  double sup = 0.0;
  double partial = 0.0;
  Index cur_block = 0;
  // Support entries come in ascending index order, so entries of each block
  // arrive contiguously; the bracketed partial sums only change at support
  // points.
  for (const auto& [n, v] : f.entries()) {
    if (n > static_cast<Index>(tb.block_of.size()) - 1)
      throw input_error("coefficient index " + std::to_string(n) +
                        " is outside the materialized blocks");
    Index m = tb.block_of[static_cast<std::size_t>(n)];
    if (m != cur_block) {
      cur_block = m;
      partial = 0.0;
    }
    partial += v * tb.b[static_cast<std::size_t>(n)];
    sup = std::max(sup, std::fabs(partial));
  }
  return sup / tb.p;
}

}  // namespace

double KtSystem::clover(const SparseVec& f) const { return clover_of(*t, f); }

KtSystem build_kt(double p, Index M) {
  if (!(p > 1.0)) throw input_error("build_kt needs p > 1");
  if (M < 2) throw input_error("build_kt needs M >= 2");
  auto tb = std::make_shared<KtTables>();
  tb->p = p;
  tb->M = M;
  std::size_t pairs = static_cast<std::size_t>(M * (M + 1) / 2);
  tb->r.resize(pairs);
  tb->s.resize(pairs);
  tb->T.resize(pairs);
  tb->i_mk.resize(pairs);

  auto inv = [](Index j) { return 1.0 / static_cast<double>(j); };
  const Index scan_window = 1 << 28;

  Index next_lo = 1;
  for (Index m = 1; m <= M; ++m) {
    Index prev_s = 0;
    Index size = 2 * m;
    for (Index k = 1; k <= m; ++k) {
      // T_{m,k} = sum_{j=r}^{s} 1/j must land in [1/k - 1/m, 1/k), with
      // r > m + 1 and r past the previous interval.  select_interval sums
      // from its returned r + 1, so shift the start by one; min_terms = 2
      // keeps r < s.
      Index start = std::max(m + 1, prev_s);
      double a = 1.0 / k - 1.0 / m;
      Interval iv = select_interval(inv, start, a, 1.0 / k, scan_window, 2);
      std::size_t idx = KtTables::pair_index(m, k);
      tb->r[idx] = iv.r + 1;
      tb->s[idx] = iv.s;
      tb->T[idx] = iv.sum;
      prev_s = iv.s;
      size += iv.s - (iv.r + 1);
    }
    tb->block_lo.push_back(next_lo);
    tb->block_hi.push_back(next_lo + size - 1);
    Index pos = next_lo;
    for (Index k = 1; k <= m; ++k) {
      std::size_t idx = KtTables::pair_index(m, k);
      tb->i_mk[idx] = pos;
      pos += tb->s[idx] - tb->r[idx] + 2;
    }
    next_lo += size;
  }

  Index top = tb->block_hi.back();
  tb->d.assign(static_cast<std::size_t>(top) + 1, 0);
  tb->eps.assign(static_cast<std::size_t>(top) + 1, 0);
  tb->b.assign(static_cast<std::size_t>(top) + 1, 0.0);
  tb->block_of.assign(static_cast<std::size_t>(top) + 1, 0);
  double dual_exp = 1.0 - 1.0 / p;  // 1/p'
  for (Index m = 1; m <= M; ++m) {
    for (Index k = 1; k <= m; ++k) {
      std::size_t idx = KtTables::pair_index(m, k);
      Index i0 = tb->i_mk[idx];
      Index len = tb->s[idx] - tb->r[idx];  // t runs over -1..len
      for (Index t = -1; t <= len; ++t) {
        std::size_t n = static_cast<std::size_t>(i0 + 1 + t);
        if (t == -1) {
          tb->d[n] = k;
          tb->eps[n] = 1;
        } else {
          tb->d[n] = tb->r[idx] + t;
          tb->eps[n] = -1;
        }
        tb->b[n] = std::pow(static_cast<double>(tb->d[n]), -dual_exp);
        tb->block_of[n] = m;
      }
    }
  }

  KtSystem sys;
  sys.t = tb;
  sys.space.label = "kt(p=" + fmt_double(p) + ",M=" + std::to_string(M) + ")";
  auto tables = tb;
  double pp = p;
  sys.space.norm = [tables, pp](const SparseVec& f) {
    return std::max(lp_norm(f, pp), clover_of(*tables, f));
  };
  sys.space.symmetric = false;

  sys.basis.label = sys.space.label;
  sys.basis.window = top;
  sys.basis.space = sys.space;
  sys.basis.unit_vectors = true;
  sys.basis.synth = [](const SparseVec& a) { return Vec2{a, SparseVec()}; };
  sys.basis.dual_eval = [](const Vec2& g) { return g.x; };
  // Signed indicator norms are exactly |A|^{1/p} and the dual ones |A|^{1/p'}.
  sys.basis.phi_exact = [pp](Index m) {
    return std::pow(static_cast<double>(m), 1.0 / pp);
  };
  sys.basis.dual_phi_exact = [pp](Index m) {
    return std::pow(static_cast<double>(m), 1.0 - 1.0 / pp);
  };
  return sys;
}

WitnessRecord kt_witness(const KtSystem& sys, Index m) {
  const KtTables& tb = *sys.t;
  if (m < 1 || m > tb.M)
    throw input_error("kt_witness: block " + std::to_string(m) +
                      " is outside the built range 1.." + std::to_string(tb.M));
  std::vector<SparseVec::Entry> ents;
  for (Index n = tb.block_lo[static_cast<std::size_t>(m - 1)];
       n <= tb.block_hi[static_cast<std::size_t>(m - 1)]; ++n) {
    std::size_t u = static_cast<std::size_t>(n);
    ents.push_back({n, tb.eps[u] * std::pow(static_cast<double>(tb.d[u]),
                                            -1.0 / tb.p)});
  }
  WitnessRecord wr;
  wr.label = "kt_f_" + std::to_string(m);
  wr.coeffs = SparseVec(std::move(ents));
  for (Index k = 1; k <= m; ++k)
    wr.marked.push_back(tb.i_mk[KtTables::pair_index(m, k)]);
  double H = Weight::constant().hw(m);
  wr.expected = std::pow(H, 1.0 - 1.0 / tb.p) /
                (tb.p * std::pow(2.0, 1.0 / tb.p));
  wr.note = "projection onto the marked set has seminorm H_m/p exactly";
  return wr;
}

std::vector<WitnessRecord> kt_c0_blocks(const KtSystem& sys,
                                        const std::vector<double>& eps) {
  const KtTables& tb = *sys.t;
  Weight harmonic = Weight::constant();
  std::vector<WitnessRecord> out;
  Index m = 0;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    // The projected witness g_m has l_p norm H_m^{1/p} and seminorm H_m/p, so
    // the slack condition ||g_m||_p <= eps_k ||g_m|| needs
    // H_m >= (p/eps_k)^{p'}.
    double needed =
        std::pow(tb.p / eps[k], tb.p / (tb.p - 1.0));
    bool found = false;
    for (++m; m <= tb.M; ++m) {
      if (harmonic.hw(m) >= needed) {
        found = true;
        break;
      }
    }
    if (!found) {
      // Report how deep the tables would have to go: H_m >= needed means
      // m of order e^needed, far beyond any materialized window for small eps.
      throw resource_error(
          "kt_c0_blocks: block " + std::to_string(k + 1) + " needs H_m >= " +
          fmt_double(needed) + " (m of order e^" + fmt_double(needed) +
          "), but tables stop at M=" + std::to_string(tb.M) + " with H_M=" +
          fmt_double(harmonic.hw(tb.M)));
    }
    WitnessRecord fm = kt_witness(sys, m);
    SparseVec g = project(fm.coeffs, fm.marked);
    double gnorm = sys.basis.space.norm(g);
    WitnessRecord h;
    h.label = "kt_c0_h_" + std::to_string(m);
    h.coeffs = scale(g, 1.0 / gnorm);
    h.marked = fm.marked;
    h.expected = 1.0;
    h.note = "normalized projected witness; block " + std::to_string(k + 1);
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace glab
