#include "glab/weights.hpp"

#include <algorithm>
#include <cmath>

namespace glab {

struct Weight::Impl {
  std::string label;
  // Either a direct weight rule, or a direct primitive rule (from which the
  // weight is recovered as s_n - s_{n-1} without accumulated rounding).
  std::function<double(Index)> w_rule;  // may be empty when s_rule is set
  std::function<double(Index)> s_rule;  // may be empty
  Index max_horizon = -1;               // >= 0 only for finite tables

  // 1-based caches; index 0 is a sentinel (s_[0] = h_[0] = 0).
  mutable std::vector<double> w_, s_, h_;

  void extend(Index horizon) const {
    if (horizon < static_cast<Index>(w_.size()) - 1) return;
    if (max_horizon >= 0 && horizon > max_horizon)
      throw input_error("weight '" + label + "' has no values past index " +
                        std::to_string(max_horizon));
    if (w_.empty()) {
      w_.push_back(0.0);
      s_.push_back(0.0);
      h_.push_back(0.0);
    }
    for (Index n = static_cast<Index>(w_.size()); n <= horizon; ++n) {
      double wn, sn;
      if (s_rule) {
        sn = s_rule(n);
        wn = sn - s_.back();
      } else {
        wn = w_rule(n);
        sn = s_.back() + wn;
      }
      if (wn < 0.0 || (n == 1 && wn <= 0.0))
        throw input_error("weight '" + label + "' violates w_n >= 0, w_1 > 0 at n=" +
                          std::to_string(n));
      w_.push_back(wn);
      s_.push_back(sn);
      h_.push_back(h_.back() + wn / sn);
    }
  }
};

Weight Weight::constant() {
  auto impl = std::make_shared<Impl>();
  impl->label = "constant";
  impl->w_rule = [](Index) { return 1.0; };
  return Weight(std::move(impl));
}

Weight Weight::power(double p) {
  if (p <= 0.0) throw input_error("power weight needs p > 0");
  auto impl = std::make_shared<Impl>();
  impl->label = "power(p=" + fmt_double(p) + ")";
  double expo = 1.0 / p - 1.0;
  impl->w_rule = [expo](Index n) { return std::pow(static_cast<double>(n), expo); };
  return Weight(std::move(impl));
}

Weight Weight::table(std::vector<double> values) {
  if (values.empty()) throw input_error("table weight needs at least one value");
  auto impl = std::make_shared<Impl>();
  impl->label = "table(" + std::to_string(values.size()) + ")";
  impl->max_horizon = static_cast<Index>(values.size());
  auto vals = std::make_shared<std::vector<double>>(std::move(values));
  impl->w_rule = [vals](Index n) { return (*vals)[static_cast<std::size_t>(n - 1)]; };
  return Weight(std::move(impl));
}

Weight Weight::derived_prime(const Weight& base) {
  auto impl = std::make_shared<Impl>();
  impl->label = "derived-prime[" + base.label() + "]";
  impl->max_horizon = base.impl_->max_horizon;
  Weight b = base;
  impl->w_rule = [b](Index n) { return b.s(n) / static_cast<double>(n); };
  return Weight(std::move(impl));
}

Weight Weight::dual_primitive(const Weight& base) {
  auto impl = std::make_shared<Impl>();
  impl->label = "dual-primitive[" + base.label() + "]";
  impl->max_horizon = base.impl_->max_horizon;
  Weight b = base;
  impl->s_rule = [b](Index m) { return static_cast<double>(m) / b.s(m); };
  return Weight(std::move(impl));
}

const std::string& Weight::label() const { return impl_->label; }

void Weight::extend(Index horizon) const { impl_->extend(horizon); }

Index Weight::horizon() const { return static_cast<Index>(impl_->w_.size()) - 1; }

double Weight::w(Index n) const {
  if (n < 1) throw input_error("weight index must be >= 1");
  impl_->extend(n);
  return impl_->w_[static_cast<std::size_t>(n)];
}

double Weight::s(Index m) const {
  if (m < 1) throw input_error("primitive weight needs m >= 1");
  impl_->extend(m);
  return impl_->s_[static_cast<std::size_t>(m)];
}

double Weight::hw(Index m) const {
  if (m < 0) throw input_error("hw_sum needs m >= 0");
  if (m == 0) return 0.0;
  impl_->extend(m);
  return impl_->h_[static_cast<std::size_t>(m)];
}

RegularityReport regularity(const Weight& w, Index M) {
  if (M < 4) throw input_error("regularity window must be >= 4");
  w.extend(M);
  RegularityReport rep;
  rep.window = M;
  for (Index m = 1; 2 * m <= M; ++m)
    rep.doubling_ratio = std::max(rep.doubling_ratio, w.s(2 * m) / w.s(m));
  for (Index n = 1; n <= M; ++n)
    if (w.w(n) > 0.0) rep.dini_ratio = std::max(rep.dini_ratio, w.s(n) / (n * w.w(n)));

  auto holds_on_window = [&](Index b, bool urp) {
    bool any = false;
    for (Index m = 1; b * m <= M; ++m) {
      any = true;
      if (urp ? (2.0 * w.s(b * m) > b * w.s(m)) : (2.0 * w.s(m) > w.s(b * m)))
        return false;
    }
    return any;
  };
  for (Index b = 3; b <= M; ++b)
    if (holds_on_window(b, true)) {
      rep.urp_b = b;
      break;
    }
  for (Index b = 2; b <= M; ++b)
    if (holds_on_window(b, false)) {
      rep.lrp_b = b;
      break;
    }
  return rep;
}

Interval select_interval(const std::function<double(Index)>& c, Index m,
                         double a, double b, Index window, int min_terms) {
  if (!(0.0 <= a && a < b)) throw input_error("select_interval needs 0 <= a < b");
  if (min_terms < 1) throw input_error("select_interval needs min_terms >= 1");
  Index r = m;
  while (r < window) {
    double sum = 0.0;
    Index s = r;
    // Grow s until the partial sum first reaches a (and the interval has the
    // required number of terms); the first such s is minimal for this r.
    while (s < window && (sum < a || s - r < min_terms)) {
      ++s;
      sum += c(s);
    }
    if (sum < a || s - r < min_terms)
      throw resource_error("select_interval exhausted the window at index " +
                           std::to_string(window));
    if (sum < b) return Interval{r, s, sum};
    ++r;  // overshot: no larger s can help since the sum only grows
  }
  throw resource_error("select_interval exhausted the window at index " +
                       std::to_string(window));
}

double jar_sum(double a, Index r, Index t) {
  if (!(a > 0.0 && a < 1.0)) throw input_error("jar_sum needs a in (0,1)");
  if (t <= r) throw input_error("jar_sum needs t > r");
  double acc = 0.0;
  for (Index k = r + 1; k <= t; ++k)
    acc += std::pow(static_cast<double>(k), -a) *
           std::pow(static_cast<double>(k - r), a - 1.0);
  return acc;
}

}  // namespace glab
