#include "mrd/oracle.hpp"

#include <algorithm>
#include <set>

#include "mrd/error.hpp"

namespace mrd {

void SearchBudget::validate() const {
  if (max_len < 1 || max_solutions < 1 || max_nodes < 1)
    throw Error(ErrorCode::InvalidArgument, "search budget bounds must be >= 1");
}

bool SolutionSet::contains(const Substitution& s) const {
  return std::binary_search(solutions.begin(), solutions.end(), s, canonical_less);
}

std::vector<PositiveWord> all_words(const std::vector<Symbol>& letters, std::size_t min_len,
                                    std::size_t max_len) {
  std::vector<PositiveWord> out;
  std::vector<PositiveWord> layer{PositiveWord{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (len >= min_len) out.insert(out.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    std::vector<PositiveWord> next;
    next.reserve(layer.size() * letters.size());
    for (const auto& w : layer)
      for (Symbol c : letters) {
        PositiveWord x = w;
        x.push_back(c);
        next.push_back(std::move(x));
      }
    layer = std::move(next);
  }
  return out;
}

namespace {

void require_coefficients(const EquationSystem& system) {
  if (system.rank() == 0)
    throw Error(ErrorCode::InvalidArgument, "system has no coefficients to solve over (k = 0)");
}

void finish(SolutionSet& set) {
  std::sort(set.solutions.begin(), set.solutions.end(), canonical_less);
  set.solutions.erase(std::unique(set.solutions.begin(), set.solutions.end()),
                      set.solutions.end());
}

}  // namespace

SolutionSet enumerate_exhaustive(const EquationSystem& system, const SearchBudget& budget) {
  budget.validate();
  require_coefficients(system);
  const auto& alphabet = system.alphabet();
  const auto vars = system.variables();
  const auto words = all_words(system.coefficients(), 1, budget.max_len);

  // Images indexed by symbol id; coefficients map to themselves.
  std::vector<const PositiveWord*> image(alphabet.size(), nullptr);
  std::vector<PositiveWord> unit(alphabet.size());
  for (Symbol c : system.coefficients()) {
    unit[c.id] = PositiveWord({c});
    image[c.id] = &unit[c.id];
  }
  auto side = [&](const PositiveWord& w, std::vector<Symbol>& out) {
    out.clear();
    for (Symbol s : w) out.insert(out.end(), image[s.id]->begin(), image[s.id]->end());
  };

  SolutionSet set;
  std::vector<std::size_t> odometer(vars.size(), 0);
  std::vector<Symbol> lhs, rhs;
  while (true) {
    if (set.nodes >= budget.max_nodes) {
      set.complete = false;
      break;
    }
    ++set.nodes;
    for (std::size_t i = 0; i < vars.size(); ++i) image[vars[i].id] = &words[odometer[i]];
    bool ok = true;
    for (const auto& e : system.equations()) {
      side(e.lhs, lhs);
      side(e.rhs, rhs);
      if (lhs != rhs) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::map<Symbol, PositiveWord> images;
      for (std::size_t i = 0; i < vars.size(); ++i) images.emplace(vars[i], words[odometer[i]]);
      set.solutions.emplace_back(std::move(images), system.rank());
      if (set.solutions.size() >= budget.max_solutions) {
        set.complete = false;
        break;
      }
    }
    std::size_t i = 0;
    while (i < vars.size() && ++odometer[i] == words.size()) odometer[i++] = 0;
    if (i == vars.size()) break;
  }
  finish(set);
  return set;
}

namespace {

using Side = std::vector<Symbol>;

struct LeviState {
  std::vector<std::pair<Side, Side>> equations;
  std::vector<PositiveWord> prefix;  // by symbol id (variables only)
  std::vector<bool> open;            // by symbol id (variables only)
};

class LeviSearch {
 public:
  LeviSearch(const EquationSystem& system, const SearchBudget& budget)
      : system_(system), alphabet_(system.alphabet()), budget_(budget),
        coefficients_(system.coefficients()), variables_(system.variables()) {}

  SolutionSet run() {
    LeviState root;
    root.prefix.resize(alphabet_.size());
    root.open.assign(alphabet_.size(), false);
    for (Symbol v : variables_) root.open[v.id] = true;
    for (const auto& e : system_.canonical()) root.equations.emplace_back(e.lhs.letters(), e.rhs.letters());
    search(std::move(root));
    finish(set_);
    return std::move(set_);
  }

 private:
  bool is_coef(Symbol s) const { return alphabet_.is_coefficient(s); }
  std::size_t remaining(const LeviState& st, Symbol v) const {
    return budget_.max_len - st.prefix[v.id].size();
  }
  bool closable(const LeviState& st, Symbol v) const { return !st.prefix[v.id].empty(); }

  bool stopped() const { return !set_.complete; }

  // Strips equal leading/trailing symbols, drops solved equations, detects
  // letter clashes. Returns false if the node is infeasible.
  bool normalize(LeviState& st) const {
    std::vector<std::pair<Side, Side>> kept;
    for (auto& [l, r] : st.equations) {
      std::size_t b = 0;
      while (b < l.size() && b < r.size() && l[b] == r[b]) ++b;
      std::size_t e = 0;
      while (e < l.size() - b && e < r.size() - b && l[l.size() - 1 - e] == r[r.size() - 1 - e]) ++e;
      Side nl(l.begin() + static_cast<std::ptrdiff_t>(b), l.end() - static_cast<std::ptrdiff_t>(e));
      Side nr(r.begin() + static_cast<std::ptrdiff_t>(b), r.end() - static_cast<std::ptrdiff_t>(e));
      if (nl.empty() && nr.empty()) continue;
      const Side& full = nl.empty() ? nr : nl;
      if (nl.empty() || nr.empty()) {
        // The nonempty side must vanish: no coefficients, only closable variables.
        for (Symbol s : full)
          if (is_coef(s) || !closable(st, s)) return false;
      } else {
        if (is_coef(nl.front()) && is_coef(nr.front())) return false;  // distinct, else stripped
        if (is_coef(nl.back()) && is_coef(nr.back())) return false;
      }
      if (!balance_feasible(st, nl, nr)) return false;
      kept.emplace_back(std::move(nl), std::move(nr));
    }
    st.equations = std::move(kept);
    return true;
  }

  // Interval feasibility of the length equation and of each letter-count
  // equation given the remaining length ranges of open variables.
  bool balance_feasible(const LeviState& st, const Side& l, const Side& r) const {
    std::map<std::uint32_t, long> delta;  // occ_l - occ_r per open variable
    std::map<std::uint32_t, long> coef;   // count_r - count_l per coefficient
    long coef_len = 0;
    for (Symbol s : l) {
      if (is_coef(s)) { --coef[s.id]; --coef_len; } else ++delta[s.id];
    }
    for (Symbol s : r) {
      if (is_coef(s)) { ++coef[s.id]; ++coef_len; } else --delta[s.id];
    }
    auto range = [&](bool for_length, long target) {
      long lo = 0, hi = 0;
      for (auto [v, d] : delta) {
        if (d == 0) continue;
        Symbol sym{v};
        long max_l = static_cast<long>(remaining(st, sym));
        long min_l = (for_length && !closable(st, sym)) ? 1 : 0;
        long a = d * min_l, b = d * max_l;
        lo += std::min(a, b);
        hi += std::max(a, b);
      }
      return lo <= target && target <= hi;
    };
    if (!range(true, coef_len)) return false;
    for (Symbol c : coefficients_) {
      auto it = coef.find(c.id);
      if (!range(false, it == coef.end() ? 0 : it->second)) return false;
    }
    return true;
  }

  static void replace(LeviState& st, Symbol v, const Side& with) {
    for (auto& eq : st.equations)
      for (Side* side : {&eq.first, &eq.second}) {
        Side out;
        out.reserve(side->size() + with.size());
        for (Symbol s : *side) {
          if (s == v) out.insert(out.end(), with.begin(), with.end());
          else out.push_back(s);
        }
        *side = std::move(out);
      }
  }

  void close(LeviState st, Symbol v) {
    st.open[v.id] = false;
    replace(st, v, {});
    search(std::move(st));
  }

  void extend(LeviState st, Symbol v, Symbol c) {
    st.prefix[v.id].push_back(c);
    replace(st, v, {c, v});
    search(std::move(st));
  }

  void emit_completions(const LeviState& st) {
    std::vector<Symbol> open_vars;
    for (Symbol v : variables_)
      if (st.open[v.id]) open_vars.push_back(v);
    std::vector<std::vector<PositiveWord>> choices;
    for (Symbol v : open_vars) {
      std::size_t min_extra = closable(st, v) ? 0 : 1;
      choices.push_back(all_words(coefficients_, min_extra, remaining(st, v)));
      if (choices.back().empty()) return;
    }
    std::vector<std::size_t> odometer(open_vars.size(), 0);
    while (true) {
      std::map<Symbol, PositiveWord> images;
      for (Symbol v : variables_) {
        if (st.open[v.id]) continue;
        images.emplace(v, st.prefix[v.id]);
      }
      for (std::size_t i = 0; i < open_vars.size(); ++i)
        images.emplace(open_vars[i], concat(st.prefix[open_vars[i].id], choices[i][odometer[i]]));
      set_.solutions.emplace_back(std::move(images), system_.rank());
      if (set_.solutions.size() >= budget_.max_solutions) {
        set_.complete = false;
        return;
      }
      std::size_t i = 0;
      while (i < open_vars.size() && ++odometer[i] == choices[i].size()) odometer[i++] = 0;
      if (i == open_vars.size()) return;
    }
  }

  void search(LeviState st) {
    if (stopped()) return;
    if (set_.nodes >= budget_.max_nodes) {
      set_.complete = false;
      return;
    }
    ++set_.nodes;
    if (!normalize(st)) return;
    if (st.equations.empty()) {
      emit_completions(st);
      return;
    }
    const auto& [l, r] = st.equations.front();
    if (l.empty() || r.empty()) {
      close(std::move(st), l.empty() ? r.front() : l.front());
      return;
    }
    Symbol a = l.front(), b = r.front();
    if (is_coef(a) || is_coef(b)) {
      Symbol v = is_coef(a) ? b : a;
      Symbol c = is_coef(a) ? a : b;
      if (closable(st, v)) close(st, v);
      if (remaining(st, v) > 0) extend(std::move(st), v, c);
      return;
    }
    // Two distinct open variables: one of them ends here, or both continue
    // with the same letter.
    if (closable(st, a)) close(st, a);
    if (closable(st, b)) close(st, b);
    if (remaining(st, a) > 0 && remaining(st, b) > 0) {
      for (Symbol c : coefficients_) {
        LeviState next = st;
        next.prefix[a.id].push_back(c);
        next.prefix[b.id].push_back(c);
        replace(next, a, {c, a});
        replace(next, b, {c, b});
        search(std::move(next));
      }
    }
  }

  const EquationSystem& system_;
  const Alphabet& alphabet_;
  SearchBudget budget_;
  std::vector<Symbol> coefficients_;
  std::vector<Symbol> variables_;
  SolutionSet set_;
};

}  // namespace

SolutionSet enumerate_levi(const EquationSystem& system, const SearchBudget& budget) {
  budget.validate();
  require_coefficients(system);
  return LeviSearch(system, budget).run();
}

std::optional<PositiveWord> commutation_witness(const PositiveWord& x, const PositiveWord& y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::InvalidArgument, "commutation_witness needs nonempty words");
  if (concat(x, y) != concat(y, x)) return std::nullopt;
  return primitive_root(x).root;
}

}  // namespace mrd
