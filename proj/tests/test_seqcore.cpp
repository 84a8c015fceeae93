#include "doctest.h"
#include "glab/seqcore.hpp"

using namespace glab;

TEST_CASE("SparseVec construction normalizes entries") {
  SparseVec f({{5, 2.0}, {1, -3.0}, {9, 0.0}});
  CHECK(f.size() == 2);
  CHECK(f.at(1) == -3.0);
  CHECK(f.at(5) == 2.0);
  CHECK(f.at(9) == 0.0);
  CHECK(f.max_index() == 5);
  CHECK(f.support() == IndexSet{1, 5});
  CHECK_THROWS_AS(SparseVec({{1, 1.0}, {1, 2.0}}), input_error);
  CHECK_THROWS_AS(SparseVec({{0, 1.0}}), input_error);
  CHECK_THROWS_AS(SparseVec({{-2, 1.0}}), input_error);
}

TEST_CASE("set erases on zero and keeps order") {
  SparseVec f;
  f.set(3, 1.5);
  f.set(1, 2.5);
  f.set(3, 0.0);
  CHECK(f.entries() == std::vector<SparseVec::Entry>{{1, 2.5}});
  CHECK(SparseVec().max_index() == 0);
}

TEST_CASE("rearrange sorts moduli non-increasingly") {
  SparseVec f({{2, -0.5}, {4, 2.0}, {7, -2.0}, {9, 1.0}});
  CHECK(rearrange(f) == std::vector<double>{2.0, 2.0, 1.0, 0.5});
  CHECK(rearrange(SparseVec()).empty());
}

TEST_CASE("indicator, projection and truncated algebra") {
  SparseVec f({{1, 3.0}, {4, -1.0}, {6, 2.0}});
  CHECK(project(f, {1, 6}) == SparseVec({{1, 3.0}, {6, 2.0}}));
  CHECK(project(f, {2, 3}).empty());
  CHECK(indicator({2, 4}) == SparseVec({{2, 1.0}, {4, 1.0}}));
  SignPattern eps{{2, 4}, {-1, 1}};
  CHECK(indicator({2, 4}, eps) == SparseVec({{2, -1.0}, {4, 1.0}}));
  CHECK(axpy(2.0, SparseVec::unit(4), f) == SparseVec({{1, 3.0}, {4, 1.0}, {6, 2.0}}));
  CHECK(axpy(1.0, SparseVec::unit(4), f) == SparseVec({{1, 3.0}, {6, 2.0}}));
  CHECK(scale(f, 0.0).empty());
}

TEST_CASE("pair_sum walks the common support") {
  SparseVec f({{1, 2.0}, {3, -1.0}, {8, 4.0}});
  SparseVec g({{3, 5.0}, {8, 0.25}});
  CHECK(pair_sum(f, g) == -5.0 + 1.0);
  CHECK(pair_sum(f, SparseVec()) == 0.0);
}

TEST_CASE("index set helpers") {
  CHECK(set_intersect({1, 3, 5}, {2, 3, 5, 9}) == IndexSet{3, 5});
  CHECK(set_contains({1, 3, 5}, 3));
  CHECK(!set_contains({1, 3, 5}, 4));
  CHECK(is_strictly_increasing({1, 2, 9}));
  CHECK(!is_strictly_increasing({1, 1, 9}));
}

TEST_CASE("fmt_double round-trips shortest decimal forms") {
  CHECK(fmt_double(0.5) == "0.5");
  CHECK(fmt_double(-2.0) == "-2");
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("CSV cell serialization") {
  SparseVec f({{1, 0.5}, {3, -2.0}});
  CHECK(to_cell(f) == "1:0.5;3:-2");
  CHECK(from_cell("1:0.5;3:-2") == f);
  CHECK(from_cell(to_cell(SparseVec())).empty());
  CHECK(to_cell(IndexSet{1, 4, 9}) == "1;4;9");
  CHECK(index_set_from_cell("1;4;9") == IndexSet{1, 4, 9});
  CHECK(index_set_from_cell("").empty());
}
