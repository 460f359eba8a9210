#ifndef KFORGE_FACTOR_HPP
#define KFORGE_FACTOR_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kforge/detail/zpoly.hpp"
#include "kforge/gcd.hpp"
#include "kforge/poly.hpp"
#include "kforge/text.hpp"

namespace kforge {

/// Desk-scale limits for multivariate factorization.
struct FactorLimits {
  int max_degree = 8;
  std::size_t max_vars = 4;
};

/// input = unit * prod(factor^multiplicity); factors are irreducible,
/// primitive with integer coefficients and positive leading coefficient.
struct Factorization {
  Rational unit;
  std::vector<std::pair<Poly, unsigned>> factors;

  /// Multiplies everything back together.
  Poly expand(std::size_t n) const {
    Poly r = Poly::constant(n, unit);
    for (const auto& [f, e] : factors) r *= pow(f, e);
    return r;
  }
};

/// Total order used for deterministic output: total degree, then number of
/// terms, then the graded-lex term sequence, then coefficient magnitudes,
/// with positive coefficients before negative ones.
inline int compare_polys(const Poly& a, const Poly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
  if (a.num_terms() != b.num_terms()) return a.num_terms() < b.num_terms() ? -1 : 1;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    int c = grlex_compare(ia->first, ib->first);
    if (c != 0) return c;
  }
  ia = a.terms().begin();
  ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    int c = cmp(abs(ia->second), abs(ib->second));
    if (c != 0) return c < 0 ? -1 : 1;
  }
  ia = a.terms().begin();
  ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    if ((ia->second > 0) != (ib->second > 0)) return ia->second > 0 ? -1 : 1;
  }
  return 0;
}

inline std::string to_string(const Factorization& fz, const VarNamer& name = x_names()) {
  std::string s = to_string(fz.unit);
  for (const auto& [f, e] : fz.factors) {
    s += " * (" + to_string(f, name) + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

namespace detail {

inline ZPoly to_zpoly(const Poly& p, std::size_t var) {
  ZPoly r;
  for (const auto& [m, c] : p.terms()) {
    auto k = m[var - 1];
    if (r.size() <= k) r.resize(k + 1);
    r[k] = c.get_num();
  }
  trim(r);
  return r;
}

inline Poly from_zpoly(const ZPoly& z, std::size_t n, std::size_t var) {
  Poly r(n);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] == 0) continue;
    Monomial m(n);
    m[var - 1] = static_cast<std::uint32_t>(k);
    r.add_term(m, Rational(z[k]));
  }
  return r;
}

using FactorList = std::vector<std::pair<Poly, unsigned>>;

/// Kronecker map x_{v_i} -> T^{w_i} with mixed-radix weights from per-variable degrees.
class KroneckerMap {
public:
  explicit KroneckerMap(const Poly& p) : n_(p.ambient()), vars_(variables_of(p)) {
    std::uint64_t w = 1;
    for (auto v : vars_) {
      auto d = static_cast<std::uint64_t>(p.degree_in(v));
      degs_.push_back(d);
      weights_.push_back(w);
      w *= d + 1;
    }
  }

  ZPoly forward(const Poly& p) const {
    ZPoly r;
    for (const auto& [m, c] : p.terms()) {
      std::uint64_t e = 0;
      for (std::size_t i = 0; i < vars_.size(); ++i) e += m[vars_[i] - 1] * weights_[i];
      if (r.size() <= e) r.resize(e + 1);
      r[e] = c.get_num();
    }
    trim(r);
    return r;
  }

  /// Preimage with all per-variable degrees inside the bounds, or nullopt.
  std::optional<Poly> backward(const ZPoly& z) const {
    Poly r(n_);
    for (std::size_t e = 0; e < z.size(); ++e) {
      if (z[e] == 0) continue;
      Monomial m(n_);
      std::uint64_t t = e;
      for (std::size_t i = 0; i + 1 < vars_.size(); ++i) {
        m[vars_[i] - 1] = static_cast<std::uint32_t>(t % (degs_[i] + 1));
        t /= degs_[i] + 1;
      }
      if (t > degs_.back()) return std::nullopt;
      m[vars_.back() - 1] = static_cast<std::uint32_t>(t);
      r.add_term(m, Rational(z[e]));
    }
    return r;
  }

private:
  std::size_t n_;
  std::vector<std::size_t> vars_;
  std::vector<std::uint64_t> degs_;
  std::vector<std::uint64_t> weights_;
};

/// Irreducible factors of a square-free primitive polynomial in >= 2 variables.
inline std::vector<Poly> kronecker_factor(Poly p) {
  KroneckerMap map(p);
  std::vector<ZPoly> pieces;
  for (auto& [z, e] : factor_primitive(primitive(map.forward(p))))
    for (unsigned k = 0; k < e; ++k) pieces.push_back(z);

  std::vector<Poly> out;
  std::size_t s = 1;
  while (2 * s <= pieces.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZPoly prod{Integer(1)};
      for (auto i : idx) prod = mul(prod, pieces[i]);
      auto cand = map.backward(prod);
      if (cand && !cand->is_constant() && cand->total_degree() <= p.total_degree()) {
        if (auto q = exact_division(p, *cand)) {
          out.push_back(normalize(*cand));
          p = std::move(*q);
          for (std::size_t i = s; i-- > 0;) pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(idx[i]));
          found = true;
          break;
        }
      }
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pieces.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (!p.is_constant()) out.push_back(normalize(p));
  return out;
}

/// Square-free decomposition in x_v of a polynomial primitive in x_v.
inline FactorList squarefree_in(const Poly& f, std::size_t v) {
  FactorList out;
  Poly fp = partial_derivative(f, v);
  Poly a0 = gcd_poly(f, fp);
  Poly b = divide_or_throw(f, a0, "squarefree_in");
  Poly c = divide_or_throw(fp, a0, "squarefree_in");
  Poly d = c - partial_derivative(b, v);
  unsigned i = 1;
  while (!b.is_constant()) {
    Poly a = gcd_poly(b, d);
    if (!a.is_constant()) out.emplace_back(a, i);
    Poly nb = divide_or_throw(b, a, "squarefree_in");
    c = d.is_zero() ? Poly(f.ambient()) : divide_or_throw(d, a, "squarefree_in");
    b = std::move(nb);
    d = c - partial_derivative(b, v);
    ++i;
  }
  return out;
}

/// Factors a normalized (primitive, positive leading coefficient) polynomial.
inline void factor_normalized(Poly f, FactorList& out) {
  const std::size_t n = f.ambient();
  if (f.is_constant()) return;

  Monomial low = f.terms().begin()->first;
  for (const auto& [m, c] : f.terms()) low = gcd(low, m);
  if (!low.is_one()) {
    for (std::size_t j = 0; j < n; ++j)
      if (low[j] > 0) out.emplace_back(Poly::variable(n, j + 1), low[j]);
    f = divide_or_throw(f, Poly::term(low, 1), "factor");
    if (f.is_constant()) return;
  }

  auto vars = variables_of(f);
  if (vars.size() == 1) {
    for (auto& [z, e] : factor_primitive(primitive(to_zpoly(f, vars[0]))))
      out.emplace_back(normalize(from_zpoly(z, n, vars[0])), e);
    return;
  }

  std::size_t v = vars.front();
  for (auto w : vars)
    if (f.degree_in(w) < f.degree_in(v)) v = w;
  Poly cont = content_in(f, v);
  if (!cont.is_constant()) {
    factor_normalized(cont, out);
    f = normalize(divide_or_throw(f, cont, "factor"));
  }
  if (f.degree_in(v) == 1) {
    out.emplace_back(f, 1);
    return;
  }
  for (auto& [part, mult] : squarefree_in(f, v)) {
    Poly np = normalize(part);
    if (variables_of(np).size() == 1) {
      FactorList sub;
      factor_normalized(np, sub);
      for (auto& [q, e] : sub) out.emplace_back(q, e * mult);
      continue;
    }
    for (auto& q : kronecker_factor(np)) out.emplace_back(q, mult);
  }
}

inline Factorization finish(const Poly& input, const UnitNormal& un, FactorList list) {
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) { return compare_polys(a.first, b.first) < 0; });
  FactorList merged;
  for (auto& [p, e] : list) {
    if (!merged.empty() && merged.back().first == p) {
      merged.back().second += e;
    } else {
      merged.emplace_back(std::move(p), e);
    }
  }
  Factorization fz{un.unit, std::move(merged)};
  if (fz.expand(input.ambient()) != input)
    throw VerificationFailure("factorization does not multiply back to its input");
  return fz;
}

} // namespace detail

/// Factorization over Q of a nonconstant polynomial in (at most) one variable.
inline Factorization factor_univariate(const Poly& f) {
  if (f.is_constant()) throw PreconditionError("factor_univariate: constant input");
  auto vars = variables_of(f);
  if (vars.size() != 1) throw PreconditionError("factor_univariate: input involves more than one variable");
  auto un = unit_normal(f);
  detail::FactorList list;
  for (auto& [z, e] : detail::factor_primitive(detail::primitive(detail::to_zpoly(un.part, vars[0]))))
    list.emplace_back(normalize(detail::from_zpoly(z, f.ambient(), vars[0])), e);
  return detail::finish(f, un, std::move(list));
}

/// Complete factorization over Q within the desk-scale limits.
inline Factorization factor_multivariate(const Poly& f, const FactorLimits& limits = {}) {
  if (f.is_constant()) throw PreconditionError("factor_multivariate: constant input");
  if (f.ambient() > limits.max_vars)
    throw DegreeBoundExceeded("factor_multivariate: " + std::to_string(f.ambient()) +
                              " variables exceeds the bound " + std::to_string(limits.max_vars));
  if (f.total_degree() > limits.max_degree)
    throw DegreeBoundExceeded("factor_multivariate: total degree " + std::to_string(f.total_degree()) +
                              " exceeds the bound " + std::to_string(limits.max_degree));
  auto un = unit_normal(f);
  detail::FactorList list;
  detail::factor_normalized(un.part, list);
  return detail::finish(f, un, std::move(list));
}

inline bool is_irreducible(const Poly& f, const FactorLimits& limits = {}) {
  if (f.is_constant()) return false;
  auto fz = factor_multivariate(f, limits);
  return fz.factors.size() == 1 && fz.factors.front().second == 1;
}

/// Square-freeness via the characteristic-zero criterion gcd(f, df/dx_1, ..., df/dx_n) = const.
inline bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw PreconditionError("is_squarefree: zero polynomial");
  if (f.is_constant()) return true;
  Poly g = normalize(f);
  for (std::size_t j = 1; j <= f.ambient(); ++j) {
    Poly d = partial_derivative(f, j);
    if (d.is_zero()) continue;
    g = gcd_poly(g, d);
    if (g.is_constant()) return true;
  }
  return g.is_constant();
}

} // namespace kforge

#endif // KFORGE_FACTOR_HPP
