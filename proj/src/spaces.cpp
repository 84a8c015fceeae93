#include "glab/spaces.hpp"

#include <algorithm>
#include <cmath>

namespace glab {

double lp_norm(const SparseVec& f, double p) {
  if (!(p > 0.0)) throw input_error("lp_norm needs p > 0");
  if (f.empty()) return 0.0;
  if (p == kInfinity) {
    double m = 0.0;
    for (const auto& [n, v] : f.entries()) m = std::max(m, std::fabs(v));
    return m;
  }
  if (p == 1.0) {
    double acc = 0.0;
    for (const auto& [n, v] : f.entries()) acc += std::fabs(v);
    return acc;
  }
  if (p == 2.0) {
    double acc = 0.0;
    for (const auto& [n, v] : f.entries()) acc += v * v;
    return std::sqrt(acc);
  }
  double acc = 0.0;
  for (const auto& [n, v] : f.entries()) acc += std::pow(std::fabs(v), p);
  return std::pow(acc, 1.0 / p);
}

double lorentz_norm(const SparseVec& f, const Weight& w, double q) {
  if (!(q > 0.0)) throw input_error("lorentz_norm needs q > 0");
  std::vector<double> a = rearrange(f);
  Index m = static_cast<Index>(a.size());
  if (m == 0) return 0.0;
  w.extend(m);
  if (q == kInfinity) {
    double sup = 0.0;
    for (Index n = 1; n <= m; ++n)
      sup = std::max(sup, a[static_cast<std::size_t>(n - 1)] * w.s(n));
    return sup;
  }
  double acc = 0.0;
  for (Index n = 1; n <= m; ++n) {
    double an = a[static_cast<std::size_t>(n - 1)];
    double term = (q == 1.0) ? an * w.w(n)
                             : std::pow(an, q) * std::pow(w.s(n), q - 1.0) * w.w(n);
    acc += term;
  }
  return (q == 1.0) ? acc : std::pow(acc, 1.0 / q);
}

double marcinkiewicz_norm(const SparseVec& f, const Weight& w) {
  std::vector<double> a = rearrange(f);
  Index m = static_cast<Index>(a.size());
  if (m == 0) return 0.0;
  w.extend(m);
  // The sup over all m is attained within the support size: a_n vanishes
  // beyond it and s_m is non-decreasing.
  double sup = 0.0, partial = 0.0;
  for (Index n = 1; n <= m; ++n) {
    partial += a[static_cast<std::size_t>(n - 1)];
    sup = std::max(sup, partial / w.s(n));
  }
  return sup;
}

double summax_norm(const SparseVec& f, const SparseVec& g, const PairSpace& xy) {
  return std::max(xy.left.norm(f), xy.right.norm(g));
}

namespace {

void refuse_non_doubling(const Weight& w, const std::string& where) {
  // Windowed sanity check at construction: primitives used by these spaces
  // must be doubling.
  RegularityReport rep = regularity(w, 1024);
  if (rep.doubling_ratio > 1e6)
    throw input_error(where + ": weight '" + w.label() +
                      "' fails the doubling check (windowed ratio " +
                      fmt_double(rep.doubling_ratio) + " > 1e6)");
}

}  // namespace

Space lp_space(double p) {
  if (!(p > 0.0)) throw input_error("lp_space needs p > 0");
  Space sp;
  sp.label = (p == kInfinity) ? "l_inf" : "l_" + fmt_double(p);
  sp.norm = [p](const SparseVec& f) { return lp_norm(f, p); };
  sp.convexity = std::min(p, 1.0);
  sp.symmetric = true;
  if (p > 1.0 && p != kInfinity) {
    double pp = p / (p - 1.0);
    sp.dual = std::make_shared<Space>();
    sp.dual->label = "l_" + fmt_double(pp);
    sp.dual->norm = [pp](const SparseVec& f) { return lp_norm(f, pp); };
    sp.dual->symmetric = true;
  }
  return sp;
}

Space lorentz_space(const Weight& w, double q) {
  if (!(q > 0.0)) throw input_error("lorentz_space needs q > 0");
  refuse_non_doubling(w, "lorentz_space");
  Space sp;
  sp.label = (q == kInfinity) ? "d_{1,inf}(" + w.label() + ")"
                              : "d_{1," + fmt_double(q) + "}(" + w.label() + ")";
  Weight wc = w;
  sp.norm = [wc, q](const SparseVec& f) { return lorentz_norm(f, wc, q); };
  sp.convexity = std::min(q, 1.0);
  sp.symmetric = true;
  if (q == 1.0) {
    sp.dual = std::make_shared<Space>(marcinkiewicz_space(w));
  }
  return sp;
}

Space weak_lorentz_space(const Weight& w) { return lorentz_space(w, kInfinity); }

Space marcinkiewicz_space(const Weight& w) {
  refuse_non_doubling(w, "marcinkiewicz_space");
  Space sp;
  sp.label = "m(" + w.label() + ")";
  Weight wc = w;
  sp.norm = [wc](const SparseVec& f) { return marcinkiewicz_norm(f, wc); };
  sp.symmetric = true;
  return sp;
}

Space marcinkiewicz0_space(const Weight& w) {
  Space sp = marcinkiewicz_space(w);
  sp.label = "m_0(" + w.label() + ")";
  // m_0(w)* = d_{1,1} over the weight whose primitive is m/s_m[w].
  sp.dual = std::make_shared<Space>(lorentz_space(Weight::dual_primitive(w), 1.0));
  return sp;
}

PairSpace pair_space(Space left, Space right) {
  PairSpace ps;
  ps.label = left.label + " (+max) " + right.label;
  ps.left = std::move(left);
  ps.right = std::move(right);
  return ps;
}

}  // namespace glab
