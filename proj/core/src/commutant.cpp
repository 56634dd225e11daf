#include "comdyn/commutant.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <thread>

#include "comdyn/parse.hpp"

namespace comdyn {

bool commutes_affine(const PolyMap& f, const PolyMap& g) {
  if (f.dimension() != g.dimension()) throw Error(ErrorCode::DimensionMismatch, "maps of different dimension");
  if (!(f.field() == g.field())) throw Error(ErrorCode::MixedFields, "maps over different fields");
  return compose(f, g) == compose(g, f);
}

bool commutes_projective(const ProjMap& phi, const ProjMap& psi) {
  if (phi.components().size() != psi.components().size()) {
    throw Error(ErrorCode::DimensionMismatch, "projective maps of different dimension");
  }
  if (!(phi.field() == psi.field())) throw Error(ErrorCode::MixedFields, "maps over different fields");
  const auto a = compose_components<FieldElement>(psi.components(), phi.components());
  const auto b = compose_components<FieldElement>(phi.components(), psi.components());
  auto all_zero = [](const std::vector<Poly>& v) {
    return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
  };
  // A composition vanishing identically is not a map of P^n.
  if (all_zero(a) || all_zero(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!(a[i] * b[j] == a[j] * b[i])) return false;
    }
  }
  return true;
}

void canonicalize(std::vector<PolyMap>& maps) {
  std::vector<std::pair<std::string, PolyMap>> keyed;
  keyed.reserve(maps.size());
  for (auto& m : maps) keyed.emplace_back(to_string(m), std::move(m));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
              keyed.end());
  maps.clear();
  for (auto& [key, m] : keyed) maps.push_back(std::move(m));
}

namespace {

// Runs body(lo, hi, out) over [0, total) split across threads, then merges.
template <class Body>
std::vector<PolyMap> parallel_collect(std::size_t total, unsigned threads, Body body) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, total))));
  std::vector<std::vector<PolyMap>> parts(threads);
  if (threads == 1) {
    body(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(total, t * chunk);
      const std::size_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        try {
          body(lo, hi, parts[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  std::vector<PolyMap> merged;
  for (auto& p : parts) {
    for (auto& m : p) merged.push_back(std::move(m));
  }
  canonicalize(merged);
  return merged;
}

// Decodes a mixed-radix index, last digit fastest.
void decode(std::size_t index, const std::vector<std::size_t>& radix, std::vector<std::size_t>& digits) {
  for (std::size_t k = radix.size(); k-- > 0;) {
    digits[k] = index % radix[k];
    index /= radix[k];
  }
}

mpz_class product_of_sizes(const std::vector<std::size_t>& sizes) {
  mpz_class total = 1;
  for (auto s : sizes) total *= static_cast<unsigned long>(s);
  return total;
}

}  // namespace

CommutantResult commutant_search(const PolyMap& f, unsigned degree, const PreperiodicCatalog& catalog,
                                 std::size_t cap, unsigned threads) {
  if (!(catalog.map() == f)) throw Error(ErrorCode::InvalidArgument, "catalog was built for a different map");
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "degree must be at least 1");
  const std::size_t n = f.dimension();
  const FieldSpec& field = f.field();

  CommutantResult result;
  result.f = f;
  result.degree = degree;
  result.method = "catalog:" + catalog.strategy().to_string();
  result.condition = "catalog contains V_d (" + catalog.certification() + ")";

  const auto stream = catalog.stream();
  VeroneseFrame frame = find_general_position(stream, field, n, degree);
  const std::size_t size = frame.size();

  std::vector<std::vector<Point>> candidates;
  std::vector<std::size_t> radix;
  for (const auto& p : frame.points()) {
    const auto key = *catalog.stratum_of(p);
    candidates.push_back(catalog.points_satisfying(key.first, key.second));
    radix.push_back(candidates.back().size());
    result.frame_strata.emplace_back(key.first, key.second, candidates.back().size());
    result.m_d = std::max(result.m_d, key.first);
  }
  result.counting_bound = 1;
  for (const auto& s : catalog.strata()) {
    if (s.m > result.m_d) continue;
    result.v_d_size += s.points.size();
    const auto big_m = static_cast<unsigned long>(catalog.points_satisfying(s.m, s.l).size());
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), big_m, big_m);
    result.counting_bound *= term;
  }
  result.explored = product_of_sizes(radix);
  if (result.explored > cap) {
    throw Error(ErrorCode::ExplosionGuard, "catalog search needs " + result.explored.get_str() +
                                               " assignments, cap is " + std::to_string(cap));
  }

  // contrib[k][c][i]: column k of tau^{-1} scaled by coordinate i of candidate c.
  const Matrix& inv = frame.inverse_matrix();
  std::vector<std::vector<std::vector<std::vector<FieldElement>>>> contrib(size);
  for (std::size_t k = 0; k < size; ++k) {
    for (const auto& q : candidates[k]) {
      std::vector<std::vector<FieldElement>> per_comp;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<FieldElement> col;
        for (std::size_t r = 0; r < size; ++r) col.push_back(inv(r, k) * q[i]);
        per_comp.push_back(std::move(col));
      }
      contrib[k].push_back(std::move(per_comp));
    }
  }
  const auto& basis = frame.basis();
  const auto total = static_cast<std::size_t>(result.explored.get_ui());

  result.maps = parallel_collect(total, threads, [&](std::size_t lo, std::size_t hi, std::vector<PolyMap>& out) {
    std::vector<std::size_t> digits(size, 0);
    std::vector<FieldElement> coeffs(size, FieldElement::zero(field));
    for (std::size_t index = lo; index < hi; ++index) {
      decode(index, radix, digits);
      std::vector<Poly> comps;
      int max_degree = -1;
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(coeffs.begin(), coeffs.end(), FieldElement::zero(field));
        for (std::size_t k = 0; k < size; ++k) {
          const auto& col = contrib[k][digits[k]][i];
          for (std::size_t r = 0; r < size; ++r) {
            if (!col[r].is_zero()) coeffs[r] += col[r];
          }
        }
        comps.push_back(polynomial_from_basis(basis, coeffs));
        max_degree = std::max(max_degree, comps.back().degree());
      }
      if (max_degree != static_cast<int>(degree)) continue;
      PolyMap g(field, std::move(comps));
      if (commutes_affine(f, g)) out.push_back(std::move(g));
    }
  });
  result.frame = std::move(frame);
  return result;
}

std::string GridSpec::to_string() const {
  std::string s = "grid:" + std::to_string(coeff_bound) + "/" + std::to_string(denom_bound);
  if (supports) s += "+support";
  return s;
}

std::vector<FieldElement> coefficient_grid(const FieldSpec& field, long coeff_bound, long denom_bound) {
  if (coeff_bound < 0 || denom_bound < 1) throw Error(ErrorCode::InvalidArgument, "grid bounds must be >= 0 and >= 1");
  std::vector<FieldElement> values;
  for (long b = 1; b <= denom_bound; ++b) {
    for (long a = -coeff_bound; a <= coeff_bound; ++a) {
      if (std::gcd(std::labs(a), b) != 1) continue;
      if (field.is_prime_field() && b % static_cast<long>(field.order()) == 0) continue;
      values.push_back(FieldElement::from_rational(field, mpq_class(a, b)));
    }
  }
  std::sort(values.begin(), values.end(), [](const auto& x, const auto& y) { return x.compare(y) < 0; });
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

CommutantResult brute_force_commutant(const PolyMap& f, unsigned degree, const GridSpec& grid) {
  const std::size_t n = f.dimension();
  const FieldSpec& field = f.field();
  std::vector<std::vector<Monomial>> supports;
  if (grid.supports) {
    supports = *grid.supports;
    if (supports.size() != n) throw Error(ErrorCode::DimensionMismatch, "need one support per component");
    for (const auto& sup : supports) {
      for (const auto& m : sup) {
        if (m.nvars() != n || m.degree() > degree) {
          throw Error(ErrorCode::InvalidArgument, "support monomial outside degree <= " + std::to_string(degree));
        }
      }
    }
  } else {
    supports.assign(n, monomials_up_to(n, degree));
  }
  const auto values = coefficient_grid(field, grid.coeff_bound, grid.denom_bound);

  CommutantResult result;
  result.f = f;
  result.degree = degree;
  result.method = grid.to_string();
  result.condition = "coefficients in the grid" + std::string(grid.supports ? " on the given supports" : "");

  std::vector<std::size_t> radix;
  for (const auto& sup : supports) {
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), values.size(), sup.size());
    if (count > grid.cap) {
      throw Error(ErrorCode::ExplosionGuard, "component grid has " + count.get_str() + " candidates, cap is " +
                                                 std::to_string(grid.cap));
    }
    radix.push_back(static_cast<std::size_t>(count.get_ui()));
  }
  result.explored = product_of_sizes(radix);
  if (result.explored > grid.cap) {
    throw Error(ErrorCode::ExplosionGuard, "grid has " + result.explored.get_str() + " candidate maps, cap is " +
                                               std::to_string(grid.cap));
  }

  // Fixed integer sample points; f o g and g o f must agree on them.
  std::vector<Point> samples(2);
  static const long kFirst[] = {2, 3, 5, 7, 11, 13, 17, 19};
  static const long kSecond[] = {-3, 4, -6, 9, -10, 12, -15, 22};
  for (std::size_t i = 0; i < n; ++i) {
    samples[0].push_back(FieldElement::from_integer(field, kFirst[i % 8] + static_cast<long>(i / 8) * 23));
    samples[1].push_back(FieldElement::from_integer(field, kSecond[i % 8] - static_cast<long>(i / 8) * 29));
  }
  std::vector<Point> sample_images;
  for (const auto& s : samples) sample_images.push_back(evaluate(f, s));

  struct Candidate {
    Poly poly;
    int degree;
    std::vector<FieldElement> at_sample;    // c(s)
    std::vector<FieldElement> at_image;     // c(f(s))
  };
  std::vector<std::vector<Candidate>> cands(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& sup = supports[i];
    std::vector<std::size_t> digits(sup.size(), 0);
    for (std::size_t c = 0; c < radix[i]; ++c) {
      std::size_t idx = c;
      Poly p(n);
      for (std::size_t t = sup.size(); t-- > 0;) {
        digits[t] = idx % values.size();
        idx /= values.size();
      }
      for (std::size_t t = 0; t < sup.size(); ++t) p.add_term(sup[t], values[digits[t]]);
      Candidate cand{p, p.degree(), {}, {}};
      for (std::size_t s = 0; s < samples.size(); ++s) {
        cand.at_sample.push_back(evaluate(p, samples[s], field));
        cand.at_image.push_back(evaluate(p, sample_images[s], field));
      }
      cands[i].push_back(std::move(cand));
    }
  }

  const auto total = static_cast<std::size_t>(result.explored.get_ui());
  result.maps = parallel_collect(total, grid.threads, [&](std::size_t lo, std::size_t hi, std::vector<PolyMap>& out) {
    std::vector<std::size_t> digits(n, 0);
    Point gs(n, FieldElement::zero(field));
    for (std::size_t index = lo; index < hi; ++index) {
      decode(index, radix, digits);
      int max_degree = -1;
      for (std::size_t i = 0; i < n; ++i) max_degree = std::max(max_degree, cands[i][digits[i]].degree);
      if (max_degree != static_cast<int>(degree)) continue;
      bool agree = true;
      for (std::size_t s = 0; s < samples.size() && agree; ++s) {
        for (std::size_t i = 0; i < n; ++i) gs[i] = cands[i][digits[i]].at_sample[s];
        for (std::size_t j = 0; j < n && agree; ++j) {
          agree = evaluate(f[j], gs, field) == cands[j][digits[j]].at_image[s];
        }
      }
      if (!agree) continue;
      std::vector<Poly> comps;
      for (std::size_t i = 0; i < n; ++i) comps.push_back(cands[i][digits[i]].poly);
      PolyMap g(field, std::move(comps));
      if (commutes_affine(f, g)) out.push_back(std::move(g));
    }
  });
  return result;
}

std::optional<PolyMap> inverse_affine(const PolyMap& g) {
  if (g.degree() > 1) return std::nullopt;
  const std::size_t n = g.dimension();
  const FieldSpec& field = g.field();
  Matrix linear(field, n, n);
  std::vector<FieldElement> shift(n, FieldElement::zero(field));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [m, c] : g[i].terms()) {
      if (m.is_one()) {
        shift[i] = c;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (m[j] == 1) linear(i, j) = c;
      }
    }
  }
  const auto inv = inverse(linear);
  if (!inv) return std::nullopt;
  // x = L^{-1} (y - t)
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Poly p(n);
    for (std::size_t j = 0; j < n; ++j) {
      const FieldElement& a = (*inv)(i, j);
      if (a.is_zero()) continue;
      p.add_term(Monomial::variable(n, j), a);
      p.add_term(Monomial(n), -(a * shift[j]));
    }
    comps.push_back(std::move(p));
  }
  return PolyMap(field, std::move(comps));
}

AutomorphismResult automorphisms(const PolyMap& f, const GridSpec& grid, const PreperiodicCatalog* catalog) {
  AutomorphismResult out;
  out.commutant = catalog != nullptr ? commutant_search(f, 1, *catalog, grid.cap, grid.threads)
                                     : brute_force_commutant(f, 1, grid);
  for (const auto& g : out.commutant.maps) {
    if (inverse_affine(g)) out.invertible.push_back(g);
  }
  return out;
}

ProjectiveAutomorphismResult projective_automorphisms(const ProjMap& phi, long coeff_bound, std::size_t cap) {
  const std::size_t k = phi.components().size();
  const FieldSpec& field = phi.field();
  const auto values = coefficient_grid(field, coeff_bound, 1);
  ProjectiveAutomorphismResult out;
  mpz_ui_pow_ui(out.explored.get_mpz_t(), values.size(), k * k);
  if (out.explored > cap) {
    throw Error(ErrorCode::ExplosionGuard, "projective grid has " + out.explored.get_str() + " matrices, cap is " +
                                               std::to_string(cap));
  }
  const auto total = static_cast<std::size_t>(out.explored.get_ui());
  std::vector<std::size_t> digits(k * k, 0);
  std::vector<std::size_t> radix(k * k, values.size());
  std::vector<std::pair<std::string, ProjMap>> found;
  for (std::size_t index = 0; index < total; ++index) {
    decode(index, radix, digits);
    // Scalar multiples are skipped: the first nonzero entry must be 1.
    std::size_t first = 0;
    while (first < digits.size() && values[digits[first]].is_zero()) ++first;
    if (first == digits.size() || !values[digits[first]].is_one()) continue;
    std::vector<Poly> comps;
    Matrix m(field, k, k);
    for (std::size_t i = 0; i < k; ++i) {
      Poly p(k);
      for (std::size_t j = 0; j < k; ++j) {
        m(i, j) = values[digits[i * k + j]];
        p.add_term(Monomial::variable(k, j), m(i, j));
      }
      comps.push_back(std::move(p));
    }
    ProjMap psi(field, std::move(comps));
    if (!commutes_projective(phi, psi)) continue;
    const bool invertible = !determinant(m).is_zero();
    found.emplace_back(std::string(invertible ? "1" : "0") + to_string(psi), std::move(psi));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first.substr(1) < b.first.substr(1); });
  for (auto& [key, psi] : found) {
    if (key[0] == '1') out.invertible.push_back(psi);
    out.commuting.push_back(std::move(psi));
  }
  return out;
}

}  // namespace comdyn
