#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glab {

using Index = std::int64_t;

// Strictly increasing, duplicate-free list of positive integers.
using IndexSet = std::vector<Index>;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// +1/-1 values attached to a sorted index set.
struct SignPattern {
  IndexSet domain;
  std::vector<int> sign;  // aligned with domain

  int at(Index n) const;  // throws input_error if n is not in the domain
  static SignPattern all_plus(const IndexSet& a);
};

// Finitely supported coefficient sequence over positive integers.
// Entries are kept sorted by index and never store an exact zero.
class SparseVec {
 public:
  using Entry = std::pair<Index, double>;

  SparseVec() = default;
  // Accepts entries in any order; drops zeros; rejects duplicates and
  // nonpositive indices.
  explicit SparseVec(std::vector<Entry> entries);

  static SparseVec unit(Index n, double v = 1.0);

  double at(Index n) const;      // 0.0 when n is outside the support
  void set(Index n, double v);   // v == 0 erases the entry
  std::size_t size() const { return ents_.size(); }
  bool empty() const { return ents_.empty(); }
  Index max_index() const;       // 0 for the zero vector
  const std::vector<Entry>& entries() const { return ents_; }
  IndexSet support() const;

  bool operator==(const SparseVec& o) const { return ents_ == o.ents_; }

 private:
  std::vector<Entry> ents_;
};

// |coefficients| sorted non-increasingly.
std::vector<double> rearrange(const SparseVec& f);

// Signed indicator sum over A; the one-argument form uses all-plus signs.
SparseVec indicator(const IndexSet& a);
SparseVec indicator(const IndexSet& a, const SignPattern& eps);

// Duality pairing: sum of f_n * g_n over the common support.
double pair_sum(const SparseVec& f, const SparseVec& g);

// Coordinate projection S_A.
SparseVec project(const SparseVec& f, const IndexSet& a);

SparseVec scale(const SparseVec& f, double c);
// alpha*x + y
SparseVec axpy(double alpha, const SparseVec& x, const SparseVec& y);

IndexSet set_intersect(const IndexSet& a, const IndexSet& b);
bool set_contains(const IndexSet& a, Index n);
bool is_strictly_increasing(const IndexSet& a);

// Shortest decimal representation that round-trips through double.
std::string fmt_double(double v);

// CSV cell form "1:0.5;3:-2" (ascending indices, ';'-separated).
std::string to_cell(const SparseVec& f);
SparseVec from_cell(const std::string& cell);

std::string to_cell(const IndexSet& a);   // "1;4;9"
IndexSet index_set_from_cell(const std::string& cell);

}  // namespace glab
