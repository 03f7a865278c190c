#include "mrd/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "mrd/error.hpp"

namespace mrd {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

struct Name {
  std::string text;
  std::size_t column;
};

// Names in [begin, end) of `line`; columns are 1-based in the full line.
std::vector<Name> scan_names(std::string_view line, std::size_t begin, std::size_t end,
                             std::size_t line_no) {
  std::vector<Name> out;
  std::size_t i = begin;
  while (i < end) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '\'') throw SyntaxError(line_no, i + 1, "positive word (no inverses)");
    if (!is_alpha(line[i])) throw SyntaxError(line_no, i + 1, "letter");
    std::size_t start = i++;
    while (i < end && is_digit(line[i])) ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!is_space(c)) return false;
  return true;
}

}  // namespace

EquationSystem parse_equations(std::string_view text) {
  Alphabet alphabet;
  bool declared = false;
  bool seen_equation = false;
  std::vector<Equation> equations;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = strip_comment(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (blank(line)) continue;

    std::size_t first = 0;
    while (is_space(line[first])) ++first;
    if (line.substr(first).starts_with("alphabet")) {
      auto colon = line.find(':', first);
      if (colon == std::string_view::npos) throw SyntaxError(line_no, first + 9, "':'");
      if (declared) throw SyntaxError(line_no, first + 1, "a single alphabet header");
      if (seen_equation) throw SyntaxError(line_no, first + 1, "alphabet header before equations");
      for (const auto& n : scan_names(line, colon + 1, line.size(), line_no)) {
        if (kind_of_name(n.text) != SymbolKind::Coefficient)
          throw SyntaxError(line_no, n.column, "lowercase coefficient name");
        if (alphabet.contains(n.text)) throw SyntaxError(line_no, n.column, "distinct coefficient names");
        alphabet.add_coefficient(n.text);
      }
      declared = true;
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(line_no, line.size() + 1, "'='");
    if (line.find('=', eq + 1) != std::string_view::npos)
      throw SyntaxError(line_no, line.find('=', eq + 1) + 1, "a single '='");
    auto lhs = scan_names(line, 0, eq, line_no);
    auto rhs = scan_names(line, eq + 1, line.size(), line_no);
    if (lhs.empty()) throw SyntaxError(line_no, eq + 1, "word before '='");
    if (rhs.empty()) throw SyntaxError(line_no, line.size() + 1, "word after '='");
    auto build = [&](const std::vector<Name>& names) {
      PositiveWord w;
      for (const auto& n : names) {
        SymbolKind kind = kind_of_name(n.text);
        if (kind == SymbolKind::Coefficient && declared && !alphabet.contains(n.text))
          throw SyntaxError(line_no, n.column, "coefficient declared in the alphabet header, got '" + n.text + "'");
        w.push_back(alphabet.add(n.text, kind));
      }
      return w;
    };
    PositiveWord l = build(lhs);
    PositiveWord r = build(rhs);
    equations.push_back({std::move(l), std::move(r)});
    seen_equation = true;
  }
  return EquationSystem(std::move(alphabet), std::move(equations));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EquationSystem load_equations(const std::filesystem::path& path) {
  return parse_equations(read_file(path));
}

std::string format(const EquationSystem& system) {
  const auto& a = system.alphabet();
  std::string out = "alphabet:";
  for (Symbol c : a.coefficients()) out += " " + a.name(c);
  out += "\n";
  for (const auto& e : system.equations()) {
    out += format(e.lhs, a) + " = " + format(e.rhs, a) + "\n";
  }
  return out;
}

}  // namespace mrd
