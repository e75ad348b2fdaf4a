#include "gcx/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "gcx/error.hpp"

namespace gcx {

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& names;
  std::size_t pos = 0;
  int nvars;

  Parser(const std::string& t, const std::vector<std::string>& n)
      : text(t), names(n), nvars(static_cast<int>(n.size())) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::SyntaxError,
                what + " at position " + std::to_string(pos), pos);
  }

  Integer parse_uint() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected digits");
    return Integer(text.substr(start, pos - start));
  }

  Polynomial parse_rational_literal() {
    Integer num = parse_uint();
    if (consume('/')) {
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected denominator digits");
      Integer den = parse_uint();
      if (sign(den) == 0) fail("zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::constant(nvars, q);
    }
    return Polynomial::constant(nvars, Rational(num));
  }

  Polynomial parse_name() {
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    std::string name = text.substr(start, pos - start);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      // aliases x, y, z for the first three variables
      static const std::string kAlias[3] = {"x", "y", "z"};
      for (int i = 0; i < 3 && i < nvars; ++i) {
        if (name == kAlias[i] && nvars <= 3)
          return Polynomial::variable(nvars, i);
      }
      throw Error(ErrorKind::UnknownVariable,
                  "unknown variable '" + name + "' at position " + std::to_string(start),
                  start);
    }
    return Polynomial::variable(nvars, static_cast<int>(it - names.begin()));
  }

  Polynomial parse_base() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Polynomial inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational_literal();
    if (c == '-' && pos + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      return -parse_rational_literal();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail("expected rational, variable or '('");
  }

  Polynomial parse_factor() {
    Polynomial base = parse_base();
    if (consume('^')) {
      skip_ws();
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '.'))
        throw Error(ErrorKind::NonPolynomial,
                    "exponent must be a non-negative integer at position " +
                        std::to_string(pos),
                    pos);
      Integer e = parse_uint();
      if (pos < text.size() && text[pos] == '.')
        throw Error(ErrorKind::NonPolynomial,
                    "exponent must be an integer at position " + std::to_string(pos), pos);
      if (!e.fits_uint_p())
        throw Error(ErrorKind::NonPolynomial, "exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (consume('*')) acc *= parse_factor();
    return acc;
  }

  Polynomial parse_expr() {
    skip_ws();
    bool negate = false;
    if (peek('-')) {
      // unary minus on the leading term only; binary forms are handled below
      ++pos;
      negate = true;
    }
    Polynomial acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      if (consume('+')) {
        acc += parse_term();
      } else if (consume('-')) {
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial run() {
    Polynomial p = parse_expr();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return p;
  }
};

}  // namespace

Polynomial parse_expression(const std::string& text,
                            const std::vector<std::string>& variable_order) {
  Parser parser(text, variable_order);
  return parser.run();
}

std::vector<std::string> scan_variables(const std::string& text) {
  std::set<std::string> seen;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      seen.insert(text.substr(start, i - start));
    } else {
      ++i;
    }
  }
  bool all_numbered = true;
  std::vector<std::pair<long, std::string>> numbered;
  for (const auto& name : seen) {
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      numbered.emplace_back(std::stol(name.substr(1)), name);
    } else {
      all_numbered = false;
    }
  }
  if (all_numbered && !numbered.empty()) {
    std::sort(numbered.begin(), numbered.end());
    long max_index = numbered.back().first;
    std::vector<std::string> out;
    for (long k = 1; k <= max_index; ++k) out.push_back("x" + std::to_string(k));
    return out;
  }
  // alias mode: x, y, z in that order, ignoring anything else
  std::vector<std::string> out;
  for (const char* a : {"x", "y", "z"})
    if (seen.count(a)) out.push_back(a);
  if (out.size() == seen.size() && !out.empty()) return out;
  // mixed or unrecognized names: keep sorted order
  return std::vector<std::string>(seen.begin(), seen.end());
}

}  // namespace gcx
