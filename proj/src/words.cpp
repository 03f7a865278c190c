#include "mrd/words.hpp"

#include <algorithm>
#include <cctype>

#include "mrd/error.hpp"

namespace mrd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotSpanning: return "NotSpanning";
    case ErrorCode::NonPositiveGenerator: return "NonPositiveGenerator";
    case ErrorCode::DegenerateLengths: return "DegenerateLengths";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::InvalidBandSystem: return "InvalidBandSystem";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateOverlap: return "DegenerateOverlap";
    case ErrorCode::NotPositivelyExpressible: return "NotPositivelyExpressible";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::UnboundLabel: return "UnboundLabel";
    case ErrorCode::TwistBreaksSolution: return "TwistBreaksSolution";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

Symbol Alphabet::add(const std::string& name, SymbolKind kind) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty symbol name");
  if (auto it = index_.find(name); it != index_.end()) {
    if (kinds_[it->second] != kind)
      throw Error(ErrorCode::InvalidArgument,
                  "symbol '" + name + "' used both as coefficient and variable");
    return Symbol{it->second};
  }
  auto id = static_cast<std::uint32_t>(names_.size());
  names_.push_back(name);
  kinds_.push_back(kind);
  index_.emplace(name, id);
  return Symbol{id};
}

Symbol Alphabet::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error(ErrorCode::InvalidArgument, "unknown symbol '" + name + "'");
  return Symbol{it->second};
}

std::vector<Symbol> Alphabet::coefficients() const {
  std::vector<Symbol> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (kinds_[i] == SymbolKind::Coefficient) out.push_back(Symbol{i});
  return out;
}

std::vector<Symbol> Alphabet::variables() const {
  std::vector<Symbol> out;
  for (std::uint32_t i = 0; i < names_.size(); ++i)
    if (kinds_[i] == SymbolKind::Variable) out.push_back(Symbol{i});
  return out;
}

PositiveWord& PositiveWord::operator+=(const PositiveWord& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  return *this;
}

PositiveWord concat(const PositiveWord& u, const PositiveWord& v) {
  PositiveWord out = u;
  out += v;
  return out;
}

PositiveWord power(const PositiveWord& w, std::size_t exponent) {
  PositiveWord out;
  for (std::size_t i = 0; i < exponent; ++i) out += w;
  return out;
}

bool shortlex_less(const PositiveWord& u, const PositiveWord& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u.letters() < v.letters();
}

GroupWord GroupWord::from_positive(const PositiveWord& w) {
  GroupWord g;
  g.letters_.reserve(w.size());
  for (Symbol s : w) g.letters_.push_back({s, 1});
  return g;
}

GroupWord GroupWord::inverse() const {
  GroupWord g;
  g.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) g.letters_.push_back(it->inverse());
  return g;
}

PositiveWord GroupWord::to_positive() const {
  PositiveWord w;
  for (const auto& l : letters_) {
    if (l.exponent != 1) throw Error(ErrorCode::InvalidArgument, "word is not positive");
    w.push_back(l.symbol);
  }
  return w;
}

GroupWord reduce(const std::vector<SignedSymbol>& raw) {
  GroupWord g;
  auto& out = g.letters_;
  out.reserve(raw.size());
  for (const auto& l : raw) {
    if (l.exponent != 1 && l.exponent != -1)
      throw Error(ErrorCode::InvalidArgument, "exponent must be +1 or -1");
    if (!out.empty() && out.back().symbol == l.symbol && out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return g;
}

GroupWord multiply(const GroupWord& u, const GroupWord& v) {
  std::vector<SignedSymbol> raw = u.letters();
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return reduce(raw);
}

bool is_positive(const GroupWord& w) {
  return !w.empty() && std::all_of(w.letters().begin(), w.letters().end(),
                                   [](const SignedSymbol& l) { return l.exponent == 1; });
}

PrimitiveRoot primitive_root(const PositiveWord& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "primitive_root of the empty word");
  const auto& s = w.letters();
  const std::size_t n = s.size();
  // Smallest period p dividing n (KMP failure function).
  std::vector<std::size_t> fail(n, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k - 1];
    if (s[i] == s[k]) ++k;
    fail[i] = k;
  }
  std::size_t period = n - fail[n - 1];
  if (n % period != 0) period = n;
  return {PositiveWord({s.begin(), s.begin() + static_cast<std::ptrdiff_t>(period)}), n / period};
}

SymbolKind kind_of_name(std::string_view name) {
  return std::isupper(static_cast<unsigned char>(name.front())) ? SymbolKind::Variable
                                                                 : SymbolKind::Coefficient;
}

namespace {

template <typename Resolve>
std::vector<SignedSymbol> scan(std::string_view text, std::size_t line, Resolve&& resolve) {
  std::vector<SignedSymbol> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) throw SyntaxError(line, i + 1, "letter");
    std::size_t start = i++;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    std::string name(text.substr(start, i - start));
    int exponent = 1;
    if (i < text.size() && text[i] == '\'') {
      exponent = -1;
      ++i;
    }
    out.push_back({resolve(name, line, start + 1), exponent});
  }
  return out;
}

}  // namespace

GroupWord parse_group_word(std::string_view text, Alphabet& alphabet, std::size_t line) {
  return reduce(scan(text, line, [&](const std::string& name, std::size_t, std::size_t) {
    return alphabet.add(name, kind_of_name(name));
  }));
}

PositiveWord parse_positive_word(std::string_view text, Alphabet& alphabet, std::size_t line) {
  auto raw = scan(text, line, [&](const std::string& name, std::size_t, std::size_t) {
    return alphabet.add(name, kind_of_name(name));
  });
  PositiveWord w;
  for (const auto& l : raw) {
    if (l.exponent != 1) throw SyntaxError(line, 1, "positive word (no inverses)");
    w.push_back(l.symbol);
  }
  return w;
}

GroupWord parse_group_word(std::string_view text, const Alphabet& alphabet) {
  return reduce(scan(text, 1, [&](const std::string& name, std::size_t l, std::size_t col) {
    if (!alphabet.contains(name)) throw SyntaxError(l, col, "known symbol, got '" + name + "'");
    return alphabet.at(name);
  }));
}

PositiveWord parse_positive_word(std::string_view text, const Alphabet& alphabet) {
  auto raw = scan(text, 1, [&](const std::string& name, std::size_t l, std::size_t col) {
    if (!alphabet.contains(name)) throw SyntaxError(l, col, "known symbol, got '" + name + "'");
    return alphabet.at(name);
  });
  PositiveWord w;
  for (const auto& l : raw) {
    if (l.exponent != 1) throw SyntaxError(1, 1, "positive word (no inverses)");
    w.push_back(l.symbol);
  }
  return w;
}

std::string format(const PositiveWord& w, const Alphabet& alphabet) {
  std::string out;
  for (Symbol s : w) out += alphabet.name(s);
  return out;
}

std::string format(const GroupWord& w, const Alphabet& alphabet) {
  std::string out;
  for (const auto& l : w.letters()) {
    out += alphabet.name(l.symbol);
    if (l.exponent < 0) out += '\'';
  }
  return out;
}

}  // namespace mrd
