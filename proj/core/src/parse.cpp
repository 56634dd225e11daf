#include "comdyn/parse.hpp"

#include <cctype>

namespace comdyn {

std::vector<std::string> default_variable_names(std::size_t nvars) {
  static const char* const kShort[] = {"x", "y", "z"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) {
    names.push_back(nvars <= 3 ? std::string(kShort[i]) : "x" + std::to_string(i + 1));
  }
  return names;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t begin, std::size_t end, const FieldSpec& field,
         const std::vector<std::string>& names)
      : text_(text), pos_(begin), end_(end), field_(field), names_(names) {}

  Poly parse_poly() {
    skip_space();
    Poly result(names_.size());
    bool negate = false;
    if (accept('+')) {
    } else if (accept_minus()) {
      negate = true;
    }
    Poly t = parse_term();
    result += negate ? -t : t;
    while (true) {
      skip_space();
      if (accept('+')) {
        result += parse_term();
      } else if (accept_minus()) {
        result -= parse_term();
      } else {
        break;
      }
    }
    return result;
  }

  void expect_end() {
    skip_space();
    if (pos_ != end_) throw SyntaxError(pos_, "end of expression");
  }

 private:
  Poly parse_term() {
    Poly result = parse_factor();
    while (true) {
      skip_space();
      if (!accept('*')) break;
      result = result * parse_factor();
    }
    return result;
  }

  Poly parse_factor() {
    Poly base = parse_atom();
    skip_space();
    if (accept('^')) {
      skip_space();
      const mpz_class e = parse_natural();
      if (!e.fits_uint_p() || e > 100000) throw SyntaxError(pos_, "exponent below 100000");
      const auto k = static_cast<unsigned>(e.get_ui());
      if (k == 0) return Poly::constant(names_.size(), FieldElement::one(field_));
      return base.pow(k);
    }
    return base;
  }

  Poly parse_atom() {
    skip_space();
    if (pos_ >= end_) throw SyntaxError(pos_, "number, variable, zeta or '('");
    const char c = text_[pos_];
    const std::size_t n = names_.size();
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      mpz_class num = parse_natural();
      skip_space();
      mpq_class value(num);
      if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        const mpz_class den = parse_natural();
        if (den == 0) throw SyntaxError(at, "nonzero denominator");
        value = mpq_class(num, den);
        value.canonicalize();
      }
      return Poly::constant(n, FieldElement::from_rational(field_, value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < end_ && (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) ++pos_;
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "zeta") {
        if (!field_.is_cyclotomic()) {
          throw Error(ErrorCode::FieldMismatch, "'zeta' at position " + std::to_string(start) +
                                                    " needs a cyclotomic field, not " + field_.to_string());
        }
        return Poly::constant(n, FieldElement::zeta(field_, 1));
      }
      const auto index = lookup(ident);
      if (!index) {
        throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(ident) + "' at position " +
                                                    std::to_string(start) + " for " + std::to_string(n) +
                                                    " variables");
      }
      return Poly::term(Monomial::variable(n, *index), FieldElement::one(field_));
    }
    if (c == '(') {
      ++pos_;
      Poly inner = parse_poly();
      skip_space();
      if (!accept(')')) throw SyntaxError(pos_, "')'");
      return inner;
    }
    throw SyntaxError(pos_, "number, variable, zeta or '('");
  }

  std::optional<std::size_t> lookup(std::string_view ident) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == ident) return i;
    }
    if (ident.size() >= 2 && ident[0] == 'x') {
      std::size_t k = 0;
      for (char d : ident.substr(1)) {
        if (std::isdigit(static_cast<unsigned char>(d)) == 0) return std::nullopt;
        k = k * 10 + static_cast<std::size_t>(d - '0');
        if (k > 1'000'000) return std::nullopt;
      }
      if (k >= 1 && k <= names_.size()) return k - 1;
    }
    return std::nullopt;
  }

  mpz_class parse_natural() {
    const std::size_t start = pos_;
    while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) throw SyntaxError(pos_, "natural number");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (pos_ < end_ && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < end_ && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  // ASCII '-' or U+2212 MINUS SIGN.
  bool accept_minus() {
    if (accept('-')) return true;
    if (end_ - pos_ >= 3 && text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  std::string_view text_;
  std::size_t pos_;
  std::size_t end_;
  const FieldSpec& field_;
  const std::vector<std::string>& names_;
};

struct Bracketed {
  bool projective = false;
  std::vector<std::pair<std::size_t, std::size_t>> parts;  // [begin, end) of each component
};

Bracketed split_map(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  if (pos >= text.size() || (text[pos] != '(' && text[pos] != '[')) throw SyntaxError(pos, "'(' or '['");
  Bracketed out;
  out.projective = text[pos] == '[';
  const char close = out.projective ? ']' : ')';
  int depth = 0;
  std::size_t start = ++pos;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '(') {
      ++depth;
    } else if (c == ')' && depth > 0) {
      --depth;
    } else if (depth == 0 && c == ',') {
      out.parts.emplace_back(start, pos);
      start = pos + 1;
    } else if (depth == 0 && c == close) {
      out.parts.emplace_back(start, pos);
      ++pos;
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
      if (pos != text.size()) throw SyntaxError(pos, "end of map");
      return out;
    } else if (c == ']' || c == ')') {
      throw SyntaxError(pos, std::string("'") + close + "'");
    }
  }
  throw SyntaxError(text.size(), std::string("'") + close + "'");
}

std::vector<Poly> parse_components(std::string_view text, const Bracketed& b, const FieldSpec& field) {
  const auto names = default_variable_names(b.parts.size());
  std::vector<Poly> comps;
  for (const auto& [begin, end] : b.parts) {
    Parser parser(text, begin, end, field, names);
    comps.push_back(parser.parse_poly());
    parser.expect_end();
  }
  return comps;
}

std::vector<std::string_view> split_top_level(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(text.substr(start));
  return out;
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

bool is_single_term(const std::string& scalar) {
  return scalar.find(" + ") == std::string::npos && scalar.find(" - ") == std::string::npos;
}

}  // namespace

FieldElement parse_scalar(std::string_view text, const FieldSpec& field) {
  static const std::vector<std::string> kNoNames;
  Parser parser(text, 0, text.size(), field, kNoNames);
  Poly p = parser.parse_poly();
  parser.expect_end();
  if (p.is_zero()) return FieldElement::zero(field);
  return p.terms().begin()->second;
}

Point parse_point(std::string_view text, const FieldSpec& field) {
  std::string_view inner = text;
  // Optional surrounding parentheses: "(0, 2)".
  const auto first = inner.find_first_not_of(" \t");
  const auto last = inner.find_last_not_of(" \t");
  if (first != std::string_view::npos && inner[first] == '(' && inner[last] == ')') {
    const auto parts = split_top_level(inner.substr(first, last - first + 1), ',');
    if (parts.size() == 1) inner = inner.substr(first + 1, last - first - 1);
  }
  Point point;
  for (auto part : split_top_level(inner, ',')) point.push_back(parse_scalar(part, field));
  return point;
}

std::vector<Point> parse_points(std::string_view text, const FieldSpec& field) {
  std::vector<Point> out;
  for (auto part : split_top_level(text, ';')) {
    if (part.find_first_not_of(" \t\n") == std::string_view::npos) continue;
    out.push_back(parse_point(part, field));
  }
  return out;
}

Poly parse_polynomial(std::string_view text, const FieldSpec& field, std::size_t nvars) {
  return parse_polynomial(text, field, default_variable_names(nvars));
}

Poly parse_polynomial(std::string_view text, const FieldSpec& field, const std::vector<std::string>& names) {
  Parser parser(text, 0, text.size(), field, names);
  Poly p = parser.parse_poly();
  parser.expect_end();
  return p;
}

PolyMap parse_poly_map(std::string_view text, const FieldSpec& field) {
  const Bracketed b = split_map(text);
  if (b.projective) throw SyntaxError(0, "'(' for an affine map");
  return PolyMap(field, parse_components(text, b, field));
}

ProjMap parse_proj_map(std::string_view text, const FieldSpec& field) {
  const Bracketed b = split_map(text);
  if (!b.projective) throw SyntaxError(0, "'[' for a projective map");
  return ProjMap(field, parse_components(text, b, field));
}

std::variant<PolyMap, ProjMap> parse_map(std::string_view text, const FieldSpec& field) {
  const Bracketed b = split_map(text);
  if (b.projective) return ProjMap(field, parse_components(text, b, field));
  return PolyMap(field, parse_components(text, b, field));
}

std::string to_string(const Poly& p) { return to_string(p, default_variable_names(p.nvars())); }

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    const std::string scalar = c.to_string();
    std::string term;
    if (m.is_one()) {
      term = scalar;
    } else {
      const std::string mono = monomial_text(m, names);
      if (scalar == "1") {
        term = mono;
      } else if (scalar == "-1") {
        term = "-" + mono;
      } else if (is_single_term(scalar)) {
        term = scalar + "*" + mono;
      } else {
        term = "(" + scalar + ")*" + mono;
      }
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

std::string join_components(const std::vector<Poly>& comps, char open, char close) {
  const auto names = default_variable_names(comps.size());
  std::string out(1, open);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(comps[i], names);
  }
  out += close;
  return out;
}

}  // namespace

std::string to_string(const PolyMap& f) { return join_components(f.components(), '(', ')'); }

std::string to_string(const ProjMap& f) { return join_components(f.components(), '[', ']'); }

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ", ";
    out += p[i].to_string();
  }
  return out + ")";
}

}  // namespace comdyn
