#include <functional>

#include "comdyn/polynomial.hpp"

namespace comdyn {

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> e(nvars, 0);
  // Descending lex: the first variable takes the largest exponent first.
  std::function<void(std::size_t, unsigned)> fill = [&](std::size_t var, unsigned left) {
    if (var + 1 == nvars) {
      e[var] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[var] = k;
      fill(var + 1, left - k);
    }
  };
  fill(0, degree);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  for (unsigned k = 0; k <= degree; ++k) {
    auto layer = monomials_of_degree(nvars, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace comdyn
