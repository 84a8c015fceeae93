#include <cmath>

#include "doctest.h"
#include "glab/spaces.hpp"

using namespace glab;

TEST_CASE("lp norms, including the limit cases") {
  SparseVec f({{1, 3.0}, {2, -4.0}});
  CHECK(lp_norm(f, 1.0) == 7.0);
  CHECK(lp_norm(f, 2.0) == 5.0);
  CHECK(lp_norm(f, kInfinity) == 4.0);
  CHECK(lp_norm(f, 3.0) == doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));
  CHECK(lp_norm(SparseVec(), 2.0) == 0.0);
}

TEST_CASE("Lorentz norm against the hand-computed rearrangement") {
  Weight w = Weight::power(2.0);
  // moduli rearranged: 2, 1, 0.5 -> sum a*_n^q s_n^{q-1} w_n at q = 2
  SparseVec f({{3, 1.0}, {10, -2.0}, {40, 0.5}});
  double expect = std::sqrt(4.0 * 1.0 * 1.0 + 1.0 * w.s(2) * w.w(2) +
                            0.25 * w.s(3) * w.w(3));
  CHECK(lorentz_norm(f, w, 2.0) == doctest::Approx(expect).epsilon(1e-15));
  // q = 1 is the weighted l_1 of the rearrangement
  CHECK(lorentz_norm(f, w, 1.0) ==
        doctest::Approx(2.0 + w.w(2) + 0.5 * w.w(3)).epsilon(1e-15));
  // q = inf is sup a*_n s_n
  double weak = std::max({2.0, w.s(2), 0.5 * w.s(3)});
  CHECK(lorentz_norm(f, w, kInfinity) == doctest::Approx(weak).epsilon(1e-15));
}

TEST_CASE("Lorentz identity on the 1/s_n profile") {
  for (double p : {1.0, 2.0, 1.5}) {
    Weight w = p == 1.0 ? Weight::constant() : Weight::power(p);
    for (double q : {1.0, 1.5, 2.0}) {
      for (Index m : {1, 7, 300}) {
        std::vector<SparseVec::Entry> ents;
        for (Index n = 1; n <= m; ++n) ents.push_back({n, 1.0 / w.s(n)});
        SparseVec f(ents);
        CHECK(lorentz_norm(f, w, q) ==
              doctest::Approx(std::pow(w.hw(m), 1.0 / q)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("Marcinkiewicz norm is the best prefix average") {
  Weight w = Weight::constant();  // s_m = m: the norm is the largest average
  SparseVec f({{2, 4.0}, {5, 1.0}, {9, 1.0}});
  CHECK(marcinkiewicz_norm(f, w) == 4.0);
  Weight wd = Weight::dual_primitive(Weight::power(2.0));
  SparseVec g({{1, 1.0}, {2, 1.0}});
  CHECK(marcinkiewicz_norm(g, wd) ==
        doctest::Approx(std::max(1.0 / wd.s(1), 2.0 / wd.s(2))).epsilon(1e-12));
}

TEST_CASE("space factories wire duals and symmetry") {
  Space l2 = lp_space(2.0);
  CHECK(l2.symmetric);
  REQUIRE(l2.dual);
  CHECK(l2.dual->norm(SparseVec({{1, 3.0}, {2, 4.0}})) == 5.0);
  Space l1 = lp_space(1.0);
  CHECK(!l1.dual);  // only strictly convex exponents get a wired dual

  Weight w = Weight::power(2.0);
  Space d11 = lorentz_space(w, 1.0);
  REQUIRE(d11.dual);  // Marcinkiewicz over the dual primitive
  SparseVec f({{1, 1.0}});
  CHECK(d11.norm(f) == 1.0);
  CHECK(d11.dual->norm(f) == 1.0);

  Space m0 = marcinkiewicz0_space(Weight::dual_primitive(w));
  REQUIRE(m0.dual);
  // m_0(w*)* = d_{1,1} over the involuted primitive, i.e. w again
  CHECK(m0.dual->norm(SparseVec({{1, 1.0}, {2, 1.0}})) ==
        doctest::Approx(w.s(2)).epsilon(1e-12));
}

TEST_CASE("non-doubling primitives are refused") {
  std::vector<double> tv(1024, 1.0);
  tv[0] = 1e-10;
  CHECK_THROWS_AS(lorentz_space(Weight::table(tv), 2.0), input_error);
  CHECK_THROWS_AS(marcinkiewicz_space(Weight::table(tv)), input_error);
}

TEST_CASE("pair space takes the max of component norms") {
  PairSpace xy = pair_space(lp_space(1.0), lp_space(kInfinity));
  SparseVec f({{1, 1.0}, {2, 1.0}});
  CHECK(summax_norm(f, f, xy) == 2.0);
  CHECK(summax_norm(SparseVec(), f, xy) == 1.0);
}
