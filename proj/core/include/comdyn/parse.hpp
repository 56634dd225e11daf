#pragma once

// Text forms for scalars, points, polynomials and maps.
//
// Grammar (whitespace insensitive):
//   map    := '(' poly {',' poly} ')'        affine, n components in n variables
//           | '[' poly {',' poly} ']'        projective, n+1 homogeneous components
//   poly   := ['+'|'-'] term {('+'|'-') term}
//   term   := factor {'*' factor}
//   factor := atom ['^' nat]
//   atom   := int ['/' nat] | 'zeta' | var | '(' poly ')'
//   var    := 'x' | 'y' | 'z' | 'x' nat      (x1 is the first variable)
//
// The canonical printer emits terms in descending graded-lex order, explicit
// '^', lowest-terms rationals, and parenthesizes multi-term scalars.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "comdyn/poly_map.hpp"

namespace comdyn {

/// Names used by the printer and parser for n variables: x, y, z when n <= 3,
/// otherwise x1 ... xn.
std::vector<std::string> default_variable_names(std::size_t nvars);

FieldElement parse_scalar(std::string_view text, const FieldSpec& field);

/// Comma-separated scalars, e.g. "0, 2" or "zeta, zeta^2".
Point parse_point(std::string_view text, const FieldSpec& field);

/// Semicolon-separated points, e.g. "0,0; 0,1; 1,0".
std::vector<Point> parse_points(std::string_view text, const FieldSpec& field);

Poly parse_polynomial(std::string_view text, const FieldSpec& field, std::size_t nvars);
/// Parses with explicit variable names instead of the defaults.
Poly parse_polynomial(std::string_view text, const FieldSpec& field,
                      const std::vector<std::string>& names);

PolyMap parse_poly_map(std::string_view text, const FieldSpec& field);
ProjMap parse_proj_map(std::string_view text, const FieldSpec& field);
std::variant<PolyMap, ProjMap> parse_map(std::string_view text, const FieldSpec& field);

std::string to_string(const Poly& p);
std::string to_string(const Poly& p, const std::vector<std::string>& names);
std::string to_string(const PolyMap& f);
std::string to_string(const ProjMap& f);
std::string to_string(const Point& p);

}  // namespace comdyn
