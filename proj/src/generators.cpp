#include <algorithm>
#include <numeric>
#include <set>

#include "mrd/error.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd {

const char* to_string(WeightTag tag) {
  switch (tag) {
    case WeightTag::Long: return "long";
    case WeightTag::Short: return "short";
    case WeightTag::SecondaryShort: return "secondary_short";
  }
  return "unknown";
}

GeneratorSet extract_generators(const BandSystem& bs) {
  GeneratorSet out;
  std::vector<Rational> ends;
  for (const auto& b : bs.bases()) {
    ends.push_back(b.support.lo);
    ends.push_back(b.support.hi);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  for (const auto& region : associated_graph(bs).covered) {
    Rational pos = region.lo;
    for (const auto& x : ends) {
      if (!region.interior(x)) continue;
      out.elements.push_back({static_cast<int>(out.elements.size()), {pos, x}});
      pos = x;
    }
    out.elements.push_back({static_cast<int>(out.elements.size()), {pos, region.hi}});
  }
  return out;
}

std::vector<std::vector<std::size_t>> positive_expression(const GeneratorSet& old_gens, const GeneratorSet& new_gens,
                                                          const Transport& transport) {
  auto fail = [](const Generator& g, const std::string& why) {
    return Error(ErrorCode::NotPositivelyExpressible, "generator " + std::to_string(g.id) + " [" +
                                                          to_string(g.segment.lo) + ", " + to_string(g.segment.hi) +
                                                          "]: " + why);
  };
  std::vector<std::vector<std::size_t>> out;
  for (const auto& g : old_gens.elements) {
    auto parts = transport.map_segment(g.segment);
    if (!parts) throw fail(g, "part of the segment leaves the system");
    std::vector<std::size_t> word;
    for (const auto& part : *parts) {
      auto it = std::find_if(new_gens.elements.begin(), new_gens.elements.end(),
                             [&](const Generator& n) { return n.segment.lo == part.lo; });
      if (it == new_gens.elements.end()) throw fail(g, "image does not start at a generator endpoint");
      Rational pos = part.lo;
      for (; it != new_gens.elements.end() && it->segment.lo == pos && it->segment.hi <= part.hi; ++it) {
        word.push_back(static_cast<std::size_t>(it - new_gens.elements.begin()));
        pos = it->segment.hi;
      }
      if (pos != part.hi) throw fail(g, "image is not a union of consecutive generators");
    }
    out.push_back(std::move(word));
  }
  return out;
}

namespace {

std::vector<std::size_t> by_length_desc(const GeneratorSet& g) {
  std::vector<std::size_t> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.length(a) > g.length(b); });
  return order;
}

void split_classes(const GeneratorSet& g, WeightClassification& w) {
  auto order = by_length_desc(g);
  w.classes.clear();
  w.separators.clear();
  if (order.empty()) return;
  w.classes.push_back({order[0]});
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (g.length(order[i]) >= w.c1 * g.length(order[i + 1])) {
      w.separators.push_back(i);
      w.classes.emplace_back();
    }
    w.classes.back().push_back(order[i + 1]);
  }
  const auto& first = w.classes.front();
  w.d1 = g.length(first.front()) / g.length(first.back());
  if (w.classes.size() > 1) w.d2 = g.length(first.back()) / g.length(w.classes[1].front());
}

}  // namespace

WeightClassification classify_weights(const GeneratorSet& g, long c_p) {
  if (c_p < 1) throw Error(ErrorCode::InvalidArgument, "c_p must be a positive integer");
  WeightClassification w;
  const long f = static_cast<long>(g.size());
  w.c_p = c_p;
  w.c1 = Rational(4 * f * c_p);
  mpz_class four = 4;
  mpz_pow_ui(w.e_cap.get_mpz_t(), four.get_mpz_t(), static_cast<unsigned long>(f));
  w.e_cap *= f;
  split_classes(g, w);
  w.tags.assign(g.size(), WeightTag::Short);
  if (!w.classes.empty())
    for (auto i : w.classes.front()) w.tags[i] = WeightTag::Long;
  return w;
}

WeightClassification reclassify_after_cut(const WeightClassification& previous, const GeneratorSet& old_gens,
                                          const GeneratorSet& new_gens) {
  WeightClassification w = classify_weights(new_gens, previous.c_p);
  Rational c1 = previous.c1;
  Rational max_short = 0;
  for (std::size_t i = 0; i < old_gens.size(); ++i)
    if (previous.tags.at(i) == WeightTag::Short) max_short = std::max(max_short, old_gens.length(i));

  // Fractions of each old generator (new segments inside it).
  std::vector<std::vector<std::size_t>> fractions(old_gens.size());
  std::vector<bool> has_parent(new_gens.size(), false);
  for (std::size_t n = 0; n < new_gens.size(); ++n)
    for (std::size_t o = 0; o < old_gens.size(); ++o)
      if (old_gens.elements[o].segment.contains(new_gens.elements[n].segment)) {
        fractions[o].push_back(n);
        has_parent[n] = true;
        break;
      }

  auto long_rule = [&](const std::vector<std::size_t>& parts) {
    bool any_long = false;
    for (auto n : parts) any_long = any_long || new_gens.length(n) >= c1 * max_short;
    for (auto n : parts) {
      const Rational& len = new_gens.length(n);
      if (any_long)
        w.tags[n] = len >= c1 * max_short ? WeightTag::Long : WeightTag::SecondaryShort;
      else
        w.tags[n] = len * 3 >= c1 * max_short ? WeightTag::Short : WeightTag::SecondaryShort;
    }
  };
  for (std::size_t o = 0; o < old_gens.size(); ++o) {
    const auto& parts = fractions[o];
    if (parts.empty()) continue;
    switch (previous.tags.at(o)) {
      case WeightTag::Long:
        long_rule(parts);
        break;
      case WeightTag::Short: {
        std::size_t best = parts.front();
        for (auto n : parts)
          if (new_gens.length(n) > new_gens.length(best)) best = n;
        for (auto n : parts) w.tags[n] = n == best ? WeightTag::Short : WeightTag::SecondaryShort;
        break;
      }
      case WeightTag::SecondaryShort:
        for (auto n : parts) w.tags[n] = WeightTag::SecondaryShort;
        break;
    }
  }
  std::vector<std::size_t> orphans;
  for (std::size_t n = 0; n < new_gens.size(); ++n)
    if (!has_parent[n]) orphans.push_back(n);
  if (!orphans.empty()) long_rule(orphans);
  return w;
}

GeneratorPath reverse(const GeneratorPath& p, const GeneratorSet& g) {
  Rational len = 0;
  for (auto i : p.word) len += g.length(i);
  GeneratorPath out;
  out.word.assign(p.word.rbegin(), p.word.rend());
  out.reversed = !p.reversed;
  out.start = p.reversed ? Rational(p.start - len) : Rational(p.start + len);
  return out;
}

namespace {

struct Placed {
  std::size_t gen;
  Interval at;
};

std::vector<Placed> lay_out(const GeneratorPath& p, const GeneratorSet& g) {
  std::vector<Placed> out;
  Rational pos = p.start;
  for (auto i : p.word) {
    if (i >= g.size()) throw Error(ErrorCode::InvalidArgument, "path uses an unknown generator");
    Rational len = g.length(i);
    if (p.reversed) {
      out.push_back({i, {pos - len, pos}});
      pos -= len;
    } else {
      out.push_back({i, {pos, pos + len}});
      pos += len;
    }
  }
  return out;
}

}  // namespace

DualPositionReport dual_positions(const BandSystem& bs, const GeneratorSet& g, const GeneratorPath& p1,
                                  const GeneratorPath& p2) {
  if (p1.word.empty() || p2.word.empty()) throw Error(ErrorCode::NoOverlap, "empty path");
  auto a = lay_out(p1, g), b = lay_out(p2, g);
  if (!bs.components().empty()) {
    const Rational lo = bs.components().front().lo, hi = bs.components().back().hi;
    for (const auto* side : {&a, &b})
      for (const auto& x : *side)
        if (x.at.lo < lo || x.at.hi > hi) throw Error(ErrorCode::InvalidArgument, "path leaves the system");
  }
  // Order along the line for both paths.
  auto by_pos = [](const Placed& x, const Placed& y) { return x.at.lo < y.at.lo; };
  std::sort(a.begin(), a.end(), by_pos);
  std::sort(b.begin(), b.end(), by_pos);

  DualPositionReport report;
  std::map<std::pair<std::size_t, std::size_t>, std::set<Rational>> offsets;
  using Key = std::tuple<std::size_t, std::size_t, Rational>;
  std::vector<Key> stack;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (!x.at.overlaps(y.at)) continue;
      Rational offset = y.at.lo - x.at.lo;
      offsets[{x.gen, y.gen}].insert(offset);
      if (x.gen == y.gen && offset == 0) continue;  // aligned copies cancel
      Key key{x.gen, y.gen, offset};
      auto it = std::find(stack.begin(), stack.end(), key);
      if (it != stack.end())
        stack.erase(it + 1, stack.end());  // erase the loop back to the repeat
      else
        stack.push_back(std::move(key));
    }
  for (const auto& [pair, set] : offsets) report.pair_counts[pair] = set.size();
  report.db_count = stack.size();
  return report;
}

}  // namespace mrd
