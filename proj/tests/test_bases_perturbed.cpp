#include <cmath>

#include "doctest.h"
#include "glab/bases.hpp"

using namespace glab;

namespace {
PerturbedSystem make(Index N = 65536) {
  return build_perturbed(2.0, 2.0, Weight::power(2.0), N);
}
}  // namespace

TEST_CASE("synthesis adds the rank-one perturbation") {
  PerturbedSystem sys = make(64);
  // y_{eta(k)} = e_{k+1} + w_k e_1
  Vec2 y = sys.basis.synth(SparseVec::unit(5));
  CHECK(y.x.at(5) == 1.0);
  CHECK(y.x.at(1) == sys.w.w(4));
  CHECK(y.x.size() == 2);
  // coefficients below 2 or past the window are refused
  CHECK_THROWS_AS(sys.basis.synth(SparseVec::unit(1)), input_error);
  CHECK_THROWS_AS(sys.basis.synth(SparseVec::unit(65)), resource_error);
}

TEST_CASE("biorthogonality and the dead direction e_1") {
  PerturbedSystem sys = make(128);
  for (Index j = 2; j <= 128; ++j)
    CHECK(sys.basis.dual_eval(sys.basis.synth(SparseVec::unit(j))) ==
          SparseVec::unit(j));
  CHECK(sys.basis.dual_eval(Vec2{SparseVec::unit(1), SparseVec()}).empty());
}

TEST_CASE("witness pair: approximation of e_1 and the cancelling tail") {
  PerturbedSystem sys = make();
  Weight w = sys.w;
  for (Index m : {2, 8, 32}) {
    auto [fm, um] = perturbed_witness(sys, m);
    double H = w.hw(m);
    // the head reproduces e_1 up to an l_2-small residual
    SparseVec sf = sys.basis.synth(fm.coeffs).x;
    CHECK(sf.at(1) == doctest::Approx(1.0).epsilon(1e-14));
    SparseVec resid = project(sf, fm.coeffs.support());
    CHECK(lp_norm(resid, 2.0) <= 2.0 / H);
    CHECK(fm.expected == doctest::Approx(1.0 / std::sqrt(H)).epsilon(1e-14));
    // the marked head of u_m projects back onto f_m exactly
    CHECK(project(um.coeffs, um.marked) == fm.coeffs);
    // the tail kills most of the e_1 mass: |synth(u_m)_1| <= width/H
    SparseVec su = sys.basis.synth(um.coeffs).x;
    CHECK(std::fabs(su.at(1)) <= std::min(1.0, std::sqrt(H)) / H + 1e-12);
    // growth certificate: projection/vector norm ratio reaches H^{1/2}-scale
    double ratio = sys.basis.space.norm(sf) / sys.basis.space.norm(su);
    CHECK(ratio >= 0.3 * std::sqrt(H));
  }
}

TEST_CASE("witness head moduli dominate the tail (greedy set)") {
  PerturbedSystem sys = make();
  auto [fm, um] = perturbed_witness(sys, 16);
  double head_min = kInfinity, tail_max = 0.0;
  for (const auto& [n, v] : um.coeffs.entries()) {
    if (set_contains(um.marked, n))
      head_min = std::min(head_min, std::fabs(v));
    else
      tail_max = std::max(tail_max, std::fabs(v));
  }
  CHECK(head_min >= tail_max);
  CHECK(um.marked == fm.marked);
}

TEST_CASE("witness tail must fit inside the window") {
  PerturbedSystem sys = make(32);
  CHECK_THROWS_AS(perturbed_witness(sys, 16), resource_error);
}
