#include "satpaths/quadratiser.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace satpaths {

namespace {

using PairKey = std::uint64_t;

PairKey pair_key(Var a, Var b) {
  if (a > b) std::swap(a, b);
  return (static_cast<PairKey>(a) << 32) | b;
}
Var pair_first(PairKey key) { return static_cast<Var>(key >> 32); }
Var pair_second(PairKey key) { return static_cast<Var>(key & 0xffffffffu); }

void check_percentile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("percentile must lie in [0, 1], got " + std::to_string(p));
  }
}

// Nearest-rank position (1-based) of the p-quantile in a list of n items.
std::size_t nearest_rank(double p, std::size_t n) {
  const double raw = std::ceil(p * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, n);
}

// Pair occurrence counts bucketed by count, so the quantile pair can be
// found without re-sorting after every substitution.
class PairCounter {
 public:
  void increment(PairKey key) { move(key, +1); }
  void decrement(PairKey key) { move(key, -1); }
  bool empty() const { return total_ == 0; }

  PairSelection select(double p) const {
    const std::size_t rank = nearest_rank(p, total_);
    std::size_t seen = 0;
    for (const auto& [count, pairs] : buckets_) {
      seen += pairs.size();
      if (seen >= rank) {
        const PairKey key = *pairs.begin();
        return {pair_first(key), pair_second(key), count};
      }
    }
    throw std::logic_error("pair counter out of sync");
  }

 private:
  void move(PairKey key, int delta) {
    auto& count = counts_[key];
    if (count > 0) {
      auto bucket = buckets_.find(count);
      bucket->second.erase(key);
      if (bucket->second.empty()) buckets_.erase(bucket);
      --total_;
    }
    count = static_cast<std::uint32_t>(static_cast<int>(count) + delta);
    if (count == 0) {
      counts_.erase(key);
      return;
    }
    buckets_[count].insert(key);
    ++total_;
  }

  std::unordered_map<PairKey, std::uint32_t> counts_;
  std::map<std::uint32_t, std::set<PairKey>> buckets_;
  std::size_t total_ = 0;
};

template <typename Fn>
void for_each_pair(const Support& s, Fn&& fn) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) fn(pair_key(s[a], s[b]));
}

bool contains(const Support& s, Var v) { return std::binary_search(s.begin(), s.end(), v); }

void add_penalty(Pbf& f, Var xi, Var xj, Var y, double weight) {
  f.add_term({y}, 3.0 * weight);
  f.add_term({xi, xj}, weight);
  f.add_term({xi, y}, -2.0 * weight);
  f.add_term({xj, y}, -2.0 * weight);
}

}  // namespace

PenaltyWeight PenaltyWeight::fixed(double multiplier) {
  if (!(multiplier >= 1.0)) {
    throw std::invalid_argument("penalty weight must be at least 1");
  }
  return PenaltyWeight(false, multiplier);
}

std::string PenaltyWeight::describe() const {
  return adaptive_ ? "adaptive (1 + sum of |rewritten coefficients|)"
                   : "fixed " + std::to_string(value_);
}

Pbf penalty(const VariableTable& vars, Var xi, Var xj, Var y) {
  if (xi == xj || xi == y || xj == y) {
    throw std::invalid_argument("penalty needs three distinct variables");
  }
  Pbf f(vars, Sense::Min);
  add_penalty(f, xi, xj, y, 1.0);
  return f;
}

PairSelection select_pair(const Pbf& f, double percentile) {
  check_percentile(percentile);
  std::map<PairKey, std::size_t> counts;
  for (const auto& [support, coeff] : f.terms()) {
    if (support.size() < 3) continue;
    for_each_pair(support, [&](PairKey key) { ++counts[key]; });
  }
  if (counts.empty()) {
    throw std::invalid_argument("select_pair needs a polynomial of degree >= 3");
  }
  std::vector<std::pair<std::size_t, PairKey>> ranked;
  ranked.reserve(counts.size());
  for (const auto& [key, count] : counts) ranked.emplace_back(count, key);
  std::sort(ranked.begin(), ranked.end());
  const auto target = ranked[nearest_rank(percentile, ranked.size()) - 1].first;
  // ranked is sorted by (count, pair), so the first entry with the target
  // count carries the smallest pair.
  auto it = std::lower_bound(ranked.begin(), ranked.end(), std::pair{target, PairKey{0}});
  return {pair_first(it->second), pair_second(it->second), target};
}

std::vector<Var> Quadratisation::ancillas() const {
  std::vector<Var> out;
  out.reserve(substitutions.size());
  for (const auto& s : substitutions) out.push_back(s.ancilla);
  return out;
}

Quadratisation quadratise(const Pbf& f, double percentile, PenaltyWeight weight) {
  check_percentile(percentile);
  if (f.sense() != Sense::Min) {
    throw std::invalid_argument("quadratise expects a minimisation polynomial");
  }

  struct HighTerm {
    Support support;
    double coeff;
    bool alive;
  };

  Quadratisation out{Pbf(f.variables(), Sense::Min), {}};
  Pbf& result = out.result;
  std::vector<HighTerm> high;
  // occurrences[v] lists ids of high terms that contained v at some point;
  // stale ids are filtered on use.
  std::vector<std::vector<std::uint32_t>> occurrences(f.num_variables());
  PairCounter counter;

  for (const auto& [support, coeff] : f.terms()) {
    if (support.size() <= 2) {
      result.add_term(support, coeff);
      continue;
    }
    const auto id = static_cast<std::uint32_t>(high.size());
    high.push_back({support, coeff, true});
    for (Var v : support) occurrences[v].push_back(id);
    for_each_pair(support, [&](PairKey key) { counter.increment(key); });
  }

  std::vector<std::uint32_t> rewrite;
  while (!counter.empty()) {
    const PairSelection pick = counter.select(percentile);
    const Var xi = pick.first;
    const Var xj = pick.second;

    const auto& shorter = occurrences[xi].size() <= occurrences[xj].size() ? occurrences[xi]
                                                                            : occurrences[xj];
    rewrite.clear();
    for (auto id : shorter) {
      const auto& t = high[id];
      if (t.alive && contains(t.support, xi) && contains(t.support, xj)) rewrite.push_back(id);
    }
    std::sort(rewrite.begin(), rewrite.end());
    rewrite.erase(std::unique(rewrite.begin(), rewrite.end()), rewrite.end());

    const Var y = result.add_fresh_variable("y");
    occurrences.emplace_back();
    double abs_sum = 0.0;
    for (auto id : rewrite) {
      auto& t = high[id];
      abs_sum += std::abs(t.coeff);
      for_each_pair(t.support, [&](PairKey key) { counter.decrement(key); });
      Support reduced;
      reduced.reserve(t.support.size() - 1);
      for (Var v : t.support)
        if (v != xi && v != xj) reduced.push_back(v);
      reduced.push_back(y);  // y is the largest index so far
      if (reduced.size() >= 3) {
        t.support = std::move(reduced);
        for_each_pair(t.support, [&](PairKey key) { counter.increment(key); });
        occurrences[y].push_back(id);
      } else {
        result.add_term(std::move(reduced), t.coeff);
        t.alive = false;
      }
    }

    const double multiplier = weight.resolve(abs_sum);
    add_penalty(result, xi, xj, y, multiplier);
    out.substitutions.push_back(
        {xi, xj, y, rewrite.size(), out.substitutions.size() + 1, multiplier});
  }
  return out;
}

}  // namespace satpaths
