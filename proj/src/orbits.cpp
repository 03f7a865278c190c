#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "mrd/error.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<std::size_t>> orbit_partition(const BandSystem& bs, const std::vector<Rational>& samples,
                                                      std::size_t depth) {
  std::map<Rational, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < samples.size(); ++i) where[samples[i]].push_back(i);
  UnionFind uf(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::set<Rational> seen{samples[i]};
    std::deque<std::pair<Rational, std::size_t>> queue{{samples[i], 0}};
    while (!queue.empty()) {
      auto [x, d] = queue.front();
      queue.pop_front();
      if (auto it = where.find(x); it != where.end())
        for (auto j : it->second) uf.unite(i, j);
      if (depth != 0 && d == depth) continue;
      for (const auto& b : bs.bases()) {
        if (!b.support.contains(x)) continue;
        Rational y = x + b.offset;
        if (seen.insert(y).second) queue.emplace_back(y, d + 1);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < samples.size(); ++i) classes[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : classes) out.push_back(std::move(members));
  return out;
}

std::optional<StationaryWitness> find_stationary_word(const BandSystem& bs, std::size_t depth) {
  // Depth-first over reduced words; `domain` is the set of points the word
  // is defined on, `shift` its total translation.
  std::vector<int> word;
  std::optional<StationaryWitness> found;
  auto dfs = [&](auto&& self, const Interval& domain, const Rational& shift) -> void {
    if (found) return;
    if (!word.empty() && shift == 0) {
      found = StationaryWitness{word, domain};
      return;
    }
    if (word.size() == depth) return;
    for (const auto& b : bs.bases()) {
      if (!word.empty() && bs.base(word.back()).partner == b.id) continue;
      // Points x of the domain whose current image x + shift lies in b.
      Interval next{std::max(domain.lo, Rational(b.support.lo - shift)), std::min(domain.hi, Rational(b.support.hi - shift))};
      if (!(next.lo < next.hi)) continue;
      word.push_back(b.id);
      self(self, next, shift + b.offset);
      word.pop_back();
    }
  };
  for (const auto& c : bs.components()) dfs(dfs, c, Rational(0));
  return found;
}

}  // namespace mrd
