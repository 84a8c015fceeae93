#include "glab/seqcore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace glab {

int SignPattern::at(Index n) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), n);
  if (it == domain.end() || *it != n)
    throw input_error("sign pattern has no value at index " + std::to_string(n));
  return sign[static_cast<std::size_t>(it - domain.begin())];
}

SignPattern SignPattern::all_plus(const IndexSet& a) {
  return SignPattern{a, std::vector<int>(a.size(), 1)};
}

SparseVec::SparseVec(std::vector<Entry> entries) : ents_(std::move(entries)) {
  std::erase_if(ents_, [](const Entry& e) { return e.second == 0.0; });
  std::sort(ents_.begin(), ents_.end());
  for (std::size_t i = 0; i < ents_.size(); ++i) {
    if (ents_[i].first < 1)
      throw input_error("SparseVec index must be a positive integer");
    if (i > 0 && ents_[i].first == ents_[i - 1].first)
      throw input_error("SparseVec entries contain a duplicate index");
  }
}

SparseVec SparseVec::unit(Index n, double v) {
  return SparseVec({{n, v}});
}

double SparseVec::at(Index n) const {
  auto it = std::lower_bound(ents_.begin(), ents_.end(), n,
                             [](const Entry& e, Index k) { return e.first < k; });
  return (it != ents_.end() && it->first == n) ? it->second : 0.0;
}

void SparseVec::set(Index n, double v) {
  if (n < 1) throw input_error("SparseVec index must be a positive integer");
  auto it = std::lower_bound(ents_.begin(), ents_.end(), n,
                             [](const Entry& e, Index k) { return e.first < k; });
  if (it != ents_.end() && it->first == n) {
    if (v == 0.0)
      ents_.erase(it);
    else
      it->second = v;
  } else if (v != 0.0) {
    ents_.insert(it, {n, v});
  }
}

Index SparseVec::max_index() const {
  return ents_.empty() ? 0 : ents_.back().first;
}

IndexSet SparseVec::support() const {
  IndexSet s;
  s.reserve(ents_.size());
  for (const auto& [n, v] : ents_) s.push_back(n);
  return s;
}

std::vector<double> rearrange(const SparseVec& f) {
  std::vector<double> a;
  a.reserve(f.size());
  for (const auto& [n, v] : f.entries()) a.push_back(std::fabs(v));
  std::sort(a.begin(), a.end(), std::greater<double>());
  return a;
}

SparseVec indicator(const IndexSet& a) {
  std::vector<SparseVec::Entry> ents;
  ents.reserve(a.size());
  for (Index n : a) ents.push_back({n, 1.0});
  return SparseVec(std::move(ents));
}

SparseVec indicator(const IndexSet& a, const SignPattern& eps) {
  std::vector<SparseVec::Entry> ents;
  ents.reserve(a.size());
  for (Index n : a) ents.push_back({n, static_cast<double>(eps.at(n))});
  return SparseVec(std::move(ents));
}

double pair_sum(const SparseVec& f, const SparseVec& g) {
  // Walk the smaller support and look entries up in the larger one.
  const SparseVec& small = f.size() <= g.size() ? f : g;
  const SparseVec& big = f.size() <= g.size() ? g : f;
  double acc = 0.0;
  for (const auto& [n, v] : small.entries()) acc += v * big.at(n);
  return acc;
}

SparseVec project(const SparseVec& f, const IndexSet& a) {
  std::vector<SparseVec::Entry> ents;
  auto it = a.begin();
  for (const auto& e : f.entries()) {
    while (it != a.end() && *it < e.first) ++it;
    if (it == a.end()) break;
    if (*it == e.first) ents.push_back(e);
  }
  return SparseVec(std::move(ents));
}

SparseVec scale(const SparseVec& f, double c) {
  std::vector<SparseVec::Entry> ents;
  ents.reserve(f.size());
  for (const auto& [n, v] : f.entries())
    if (c * v != 0.0) ents.push_back({n, c * v});
  return SparseVec(std::move(ents));
}

SparseVec axpy(double alpha, const SparseVec& x, const SparseVec& y) {
  std::vector<SparseVec::Entry> ents;
  ents.reserve(x.size() + y.size());
  auto ix = x.entries().begin(), ex = x.entries().end();
  auto iy = y.entries().begin(), ey = y.entries().end();
  while (ix != ex || iy != ey) {
    if (iy == ey || (ix != ex && ix->first < iy->first)) {
      ents.push_back({ix->first, alpha * ix->second});
      ++ix;
    } else if (ix == ex || iy->first < ix->first) {
      ents.push_back(*iy);
      ++iy;
    } else {
      ents.push_back({ix->first, alpha * ix->second + iy->second});
      ++ix;
      ++iy;
    }
  }
  return SparseVec(std::move(ents));
}

IndexSet set_intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool set_contains(const IndexSet& a, Index n) {
  return std::binary_search(a.begin(), a.end(), n);
}

bool is_strictly_increasing(const IndexSet& a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] <= a[i - 1]) return false;
  return true;
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_cell(const SparseVec& f) {
  std::string out;
  bool first = true;
  for (const auto& [n, v] : f.entries()) {
    if (!first) out += ';';
    first = false;
    out += std::to_string(n);
    out += ':';
    out += fmt_double(v);
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    parts.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty())
    throw input_error("malformed number in cell: '" + s + "'");
  return v;
}

Index parse_index(const std::string& s) {
  Index n = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), n);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw input_error("malformed index in cell: '" + s + "'");
  return n;
}

}  // namespace

SparseVec from_cell(const std::string& cell) {
  std::vector<SparseVec::Entry> ents;
  if (cell.empty()) return SparseVec();
  for (const std::string& part : split(cell, ';')) {
    std::size_t colon = part.find(':');
    if (colon == std::string::npos)
      throw input_error("cell entry missing ':': '" + part + "'");
    ents.push_back({parse_index(part.substr(0, colon)),
                    parse_double(part.substr(colon + 1))});
  }
  return SparseVec(std::move(ents));
}

std::string to_cell(const IndexSet& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(a[i]);
  }
  return out;
}

IndexSet index_set_from_cell(const std::string& cell) {
  IndexSet out;
  if (cell.empty()) return out;
  for (const std::string& part : split(cell, ';')) out.push_back(parse_index(part));
  if (!is_strictly_increasing(out))
    throw input_error("index set cell is not strictly increasing");
  return out;
}

}  // namespace glab
