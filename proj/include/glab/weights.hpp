#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glab/seqcore.hpp"

namespace glab {

// A nonnegative weight sequence (w_n) with w_1 > 0, together with cached
// prefix data: the primitive s_m = sum_{n<=m} w_n and H_m[w] = sum w_n/s_n.
//
// Caches grow on demand when a query goes past the current horizon.  For
// concurrent read-only use, call extend(horizon) up front and stay within it;
// extending while another thread queries is not supported.
class Weight {
 public:
  static Weight constant();                          // w_n = 1
  static Weight power(double p);                     // w_n = n^{1/p-1}
  static Weight table(std::vector<double> values);   // explicit finite table
  static Weight derived_prime(const Weight& base);   // w'_n = s_n/n
  static Weight dual_primitive(const Weight& base);  // primitive m/s_m

  const std::string& label() const;
  void extend(Index horizon) const;
  Index horizon() const;

  double w(Index n) const;   // n >= 1
  double s(Index m) const;   // primitive; m >= 1
  double hw(Index m) const;  // H_m[w]; hw(0) = 0

 private:
  struct Impl;
  explicit Weight(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

// Windowed growth-regularity report for a primitive weight.
struct RegularityReport {
  Index window = 0;
  double doubling_ratio = 0.0;        // max_{2m<=window} s_{2m}/s_m
  std::optional<Index> urp_b;         // smallest b>=3 with 2 s_{bm} <= b s_m on the window
  std::optional<Index> lrp_b;         // smallest b>=2 with 2 s_m <= s_{bm} on the window
  double dini_ratio = 0.0;            // max_{n<=window} s_n/(n w_n)
};

RegularityReport regularity(const Weight& w, Index M);

struct Interval {
  Index r = 0, s = 0;
  double sum = 0.0;  // sum_{n=r+1}^{s} c_n
};

// Finds the lexicographically smallest (r, s) with r >= m, s - r >= min_terms
// and  a <= sum_{n=r+1}^{s} c_n < b,  by growing s term by term and advancing
// r on overshoot.  Requires 0 <= a < b and c_n >= 0.  Throws resource_error
// when the scan passes `window` without success.
Interval select_interval(const std::function<double(Index)>& c, Index m,
                         double a, double b, Index window, int min_terms = 1);

// S(a, r, t) = sum_{k=r+1}^{t} k^{-a} (k-r)^{a-1} for 0 < a < 1.
double jar_sum(double a, Index r, Index t);

}  // namespace glab
