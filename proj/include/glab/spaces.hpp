#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "glab/seqcore.hpp"
#include "glab/weights.hpp"

namespace glab {

// A norm evaluator plus the metadata the estimators need.
struct Space {
  std::string label;
  std::function<double(const SparseVec&)> norm;
  double convexity = 1.0;   // p-subadditivity exponent (1 for Banach norms)
  bool symmetric = false;   // invariant under support permutation and signs
  std::shared_ptr<Space> dual;  // set when the dual norm is implemented
};

// Max-norm direct sum of two component spaces.
struct PairSpace {
  Space left, right;
  std::string label;
};

constexpr double kInfinity = std::numeric_limits<double>::infinity();

double lp_norm(const SparseVec& f, double p);
double lorentz_norm(const SparseVec& f, const Weight& w, double q);
double marcinkiewicz_norm(const SparseVec& f, const Weight& w);
double summax_norm(const SparseVec& f, const SparseVec& g, const PairSpace& xy);

Space lp_space(double p);
// d_{1,q}(w); q = kInfinity gives the weak space sup_n a_n s_n.
Space lorentz_space(const Weight& w, double q);
Space weak_lorentz_space(const Weight& w);
// m(w) and its separable part m_0(w).  The two share the same finitely
// supported norm; the m_0 label records where a known dual is attached.
Space marcinkiewicz_space(const Weight& w);
Space marcinkiewicz0_space(const Weight& w);

PairSpace pair_space(Space left, Space right);

}  // namespace glab
