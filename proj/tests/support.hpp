#pragma once

// Seeded generators shared by the unit tests and the acceptance binary.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mrd/json_io.hpp"
#include "mrd/lattice.hpp"
#include "mrd/pseudogroup.hpp"

namespace mrd::testing {

inline Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string data_path(const std::string& rel) { return std::string(MRD_DATA_DIR) + "/" + rel; }

inline BandSystem fixture(int n) { return band_system_from_json(load_json(data_path("bands/F" + std::to_string(n) + ".json"))); }

// Up to `max_pairs` pairs on [0,1] (sometimes also [2,3]); endpoints have a
// common denominator of at most `max_denominator`.
inline BandSystem random_band_system(std::mt19937_64& rng, int max_pairs = 6, long max_denominator = 64) {
  const long d = 4 + static_cast<long>(rng() % static_cast<unsigned long>(max_denominator - 3));
  const bool two = rng() % 3 == 0;
  std::vector<Interval> comps{{0, 1}};
  if (two) comps.push_back({2, 3});
  const int pairs = 1 + static_cast<int>(rng() % static_cast<unsigned long>(max_pairs));
  std::vector<Base> bases;
  for (int k = 0; k < pairs; ++k) {
    long len = 1 + static_cast<long>(rng() % static_cast<unsigned long>(d / 2));
    long a = static_cast<long>(rng() % static_cast<unsigned long>(d - len + 1));
    long c = static_cast<long>(rng() % static_cast<unsigned long>(d - len + 1));
    long ca = two && rng() % 2 ? 2 : 0, cc = two && rng() % 2 ? 2 : 0;
    Interval s{ca + q(a, d), ca + q(a + len, d)};
    Interval p{cc + q(c, d), cc + q(c + len, d)};
    bases.push_back({2 * k, s, 2 * k + 1, p.lo - s.lo});
    bases.push_back({2 * k + 1, p, 2 * k, s.lo - p.lo});
  }
  return BandSystem(comps, bases);
}

// 200 points: uniform points with denominator 10007, then short random walks
// along the bases from earlier points so that orbits share several samples.
inline std::vector<Rational> orbit_samples(const BandSystem& bs, unsigned long seed, std::size_t n = 200) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  while (out.size() < n) {
    if (out.size() < 60 || rng() % 2 || bs.bases().empty()) {
      const auto& c = bs.components()[rng() % bs.components().size()];
      Rational t = q(static_cast<long>(rng() % 10006 + 1), 10007);
      out.push_back(c.lo + t * c.length());
      continue;
    }
    Rational x = out[rng() % out.size()];
    int steps = 1 + static_cast<int>(rng() % 6);
    for (int s = 0; s < steps; ++s) {
      std::vector<const Base*> here;
      for (const auto& b : bs.bases())
        if (b.support.contains(x)) here.push_back(&b);
      if (here.empty()) break;
      x += here[rng() % here.size()]->offset;
    }
    out.push_back(x);
  }
  return out;
}

// Partition of the surviving samples before and after a move agrees.
inline bool orbits_preserved(const BandSystem& before, const BandSystem& after, const Transport& t,
                             const std::vector<Rational>& samples, std::size_t depth) {
  std::vector<Rational> kept, mapped;
  for (const auto& x : samples)
    if (auto y = t.apply(x)) {
      kept.push_back(x);
      mapped.push_back(*y);
    }
  return orbit_partition(before, kept, depth) == orbit_partition(after, mapped, depth);
}

// Walks each word over the new segments and checks, at the midpoint of every
// letter, that transporting the corresponding old point lands there.
inline bool replays(const GeneratorSet& old_gens, const GeneratorSet& new_gens, const Transport& t,
             const std::vector<std::vector<std::size_t>>& words) {
  for (std::size_t i = 0; i < old_gens.size(); ++i) {
    Rational walked = 0;
    for (auto n : words.at(i)) {
      const auto& seg = new_gens.elements.at(n).segment;
      Rational half = seg.length() / 2;
      auto image = t.apply(old_gens.elements[i].segment.lo + walked + half);
      if (!image || *image != seg.lo + half) return false;
      walked += seg.length();
    }
    if (walked != old_gens.length(i)) return false;
  }
  return true;
}

// Spanning instance with rank <= max_rank, entries in [-5,5] and lengths
// that are rational truncations of irrationals (generic in practice).
inline LatticeInstance random_lattice_instance(std::mt19937_64& rng, std::size_t max_rank = 4) {
  std::uniform_int_distribution<int> entry(-5, 5);
  for (;;) {
    std::size_t l = 1 + rng() % max_rank, r = l + rng() % 3;
    LatticeInstance inst;
    inst.rank = l;
    inst.generators.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l));
    for (Eigen::Index i = 0; i < inst.generators.size(); ++i) inst.generators.data()[i] = entry(rng);
    for (std::size_t i = 0; i < l; ++i) {
      double v = std::sqrt(2.0 + static_cast<double>(rng() % 1000)) + static_cast<double>(rng() % 3);
      inst.lengths.push_back(q(static_cast<long>(std::llround(v * 1e6)), 1000000L));
    }
    if (!spans_lattice(inst.generators)) continue;
    bool positive = true;
    for (Eigen::Index j = 0; j < inst.generators.rows(); ++j)
      positive = positive && sgn(inst.functional(inst.generators.row(j).transpose())) > 0;
    if (positive) return inst;
  }
}

}  // namespace mrd::testing
