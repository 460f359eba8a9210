#ifndef KFORGE_GCD_HPP
#define KFORGE_GCD_HPP

#include <algorithm>
#include <tuple>
#include <utility>
#include <vector>

#include "kforge/poly.hpp"

namespace kforge {

/// p = unit * part, with part having coprime integer coefficients and a
/// positive graded-lex leading coefficient.
struct UnitNormal {
  Rational unit;
  Poly part;
};

inline UnitNormal unit_normal(const Poly& p) {
  if (p.is_zero()) return {Rational(0), p};
  Integer den_lcm = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& [m, c] : p.terms()) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational unit(num_gcd, den_lcm);
  unit.canonicalize();
  if (p.leading_coefficient() < 0) unit = -unit;
  Poly part = p * Rational(1 / unit);
  return {unit, std::move(part)};
}

/// Canonical associate: primitive integer coefficients, positive leading coefficient.
inline Poly normalize(const Poly& p) { return unit_normal(p).part; }

/// Leading coefficient of p viewed as a polynomial in x_v.
inline Poly leading_coefficient_in(const Poly& p, std::size_t v) {
  auto cs = coefficients_in(p, v);
  return cs.empty() ? Poly(p.ambient()) : cs.back();
}

struct PseudoDivision {
  Poly quotient;
  Poly remainder;
};

/// lc_v(b)^(deg_v a - deg_v b + 1) * a = quotient * b + remainder, deg_v remainder < deg_v b.
inline PseudoDivision pseudo_divide(const Poly& a, const Poly& b, std::size_t v) {
  if (b.is_zero()) throw PreconditionError("pseudo_divide: zero divisor");
  const std::size_t n = a.ambient();
  const int db = b.degree_in(v);
  Poly q(n);
  Poly r = a;
  if (a.is_zero() || a.degree_in(v) < db) return {q, r};
  const Poly lb = leading_coefficient_in(b, v);
  int e = a.degree_in(v) - db + 1;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    Monomial shift(n);
    shift[v - 1] = static_cast<std::uint32_t>(r.degree_in(v) - db);
    Poly t = leading_coefficient_in(r, v).times_term(shift, 1);
    q = lb * q + t;
    r = lb * r - t * b;
    --e;
  }
  if (e > 0) {
    Poly s = pow(lb, static_cast<unsigned>(e));
    q *= s;
    r *= s;
  }
  return {q, r};
}

namespace detail {

inline Poly divide_or_throw(const Poly& a, const Poly& b, const char* where) {
  auto q = exact_division(a, b);
  if (!q) throw VerificationFailure(std::string(where) + ": expected exact division failed");
  return *std::move(q);
}

inline Poly gcd_nonzero(const Poly& a, const Poly& b);

/// Gcd of the coefficients of p in x_v (a polynomial free of x_v), normalized.
inline Poly content_in(const Poly& p, std::size_t v) {
  auto cs = coefficients_in(p, v);
  Poly g(p.ambient());
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize(c) : gcd_nonzero(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

inline Poly subresultant_gcd(Poly a, Poly b, std::size_t v) {
  const std::size_t n = a.ambient();
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
  Poly g = Poly::constant(n, 1);
  Poly h = Poly::constant(n, 1);
  for (;;) {
    const int delta = a.degree_in(v) - b.degree_in(v);
    Poly r = pseudo_divide(a, b, v).remainder;
    if (r.is_zero()) return divide_or_throw(b, content_in(b, v), "subresultant_gcd");
    if (r.degree_in(v) == 0) return Poly::constant(n, 1);
    a = std::move(b);
    b = divide_or_throw(r, g * pow(h, static_cast<unsigned>(delta)), "subresultant_gcd");
    g = leading_coefficient_in(a, v);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = divide_or_throw(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)),
                          "subresultant_gcd");
    }
  }
}

/// Both arguments nonzero.
inline Poly gcd_nonzero(const Poly& a_in, const Poly& b_in) {
  const std::size_t n = a_in.ambient();
  if (a_in.is_constant() || b_in.is_constant()) return Poly::constant(n, 1);
  Poly a = normalize(a_in);
  Poly b = normalize(b_in);
  if (a == b) return a;

  // Common monomial factor first; the remaining parts share none.
  Monomial ma = a.terms().begin()->first, mb = b.terms().begin()->first;
  for (const auto& [m, c] : a.terms()) ma = gcd(ma, m);
  for (const auto& [m, c] : b.terms()) mb = gcd(mb, m);
  Monomial common = gcd(ma, mb);
  if (!common.is_one() || !ma.is_one() || !mb.is_one()) {
    Poly ar = divide_or_throw(a, Poly::term(ma, 1), "gcd");
    Poly br = divide_or_throw(b, Poly::term(mb, 1), "gcd");
    return normalize(Poly::term(common, 1) * gcd_nonzero(ar, br));
  }

  auto va = variables_of(a), vb = variables_of(b);
  for (auto v : va)
    if (!b.involves(v)) return gcd_nonzero(content_in(a, v), b);
  for (auto v : vb)
    if (!a.involves(v)) return gcd_nonzero(a, content_in(b, v));

  std::size_t best = va.front();
  int best_deg = -1;
  for (auto v : va) {
    int d = std::max(a.degree_in(v), b.degree_in(v));
    if (best_deg < 0 || d < best_deg) {
      best = v;
      best_deg = d;
    }
  }
  Poly ca = content_in(a, best), cb = content_in(b, best);
  Poly c = gcd_nonzero(ca, cb);
  Poly pa = divide_or_throw(a, ca, "gcd"), pb = divide_or_throw(b, cb, "gcd");
  return normalize(c * subresultant_gcd(std::move(pa), std::move(pb), best));
}

} // namespace detail

/// Greatest common divisor, normalized (primitive integer, positive leading coefficient).
inline Poly gcd_poly(const Poly& a, const Poly& b) {
  Poly::check_same(a, b);
  if (a.is_zero() && b.is_zero()) throw PreconditionError("gcd_poly: both arguments are zero");
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  return detail::gcd_nonzero(a, b);
}

/// Content of p in x_v and its primitive part: p = content * primitive.
inline std::pair<Poly, Poly> content_and_primitive(const Poly& p, std::size_t v) {
  if (p.is_zero()) return {p, p};
  auto un = unit_normal(p);
  Poly c = detail::content_in(un.part, v) * un.unit;
  return {c, detail::divide_or_throw(p, c, "content_and_primitive")};
}

/// Resultant of a and b with respect to x_v.
inline Poly resultant(Poly a, Poly b, std::size_t v) {
  Poly::check_same(a, b);
  const std::size_t n = a.ambient();
  if (a.is_zero() || b.is_zero()) return Poly(n);
  auto [ca, pa] = content_and_primitive(a, v);
  auto [cb, pb] = content_and_primitive(b, v);
  int da = a.degree_in(v), db = b.degree_in(v);
  Poly t = pow(ca, static_cast<unsigned>(db)) * pow(cb, static_cast<unsigned>(da));
  a = std::move(pa);
  b = std::move(pb);
  Rational s = 1;
  if (da < db) {
    std::swap(a, b);
    if ((da & 1) && (db & 1)) s = -s;
  }
  Poly g = Poly::constant(n, 1), h = Poly::constant(n, 1);
  while (b.degree_in(v) > 0) {
    int delta = a.degree_in(v) - b.degree_in(v);
    if ((a.degree_in(v) & 1) && (b.degree_in(v) & 1)) s = -s;
    Poly r = pseudo_divide(a, b, v).remainder;
    a = std::move(b);
    if (r.is_zero()) return Poly(n);
    b = detail::divide_or_throw(r, g * pow(h, static_cast<unsigned>(delta)), "resultant");
    g = leading_coefficient_in(a, v);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = detail::divide_or_throw(pow(g, static_cast<unsigned>(delta)),
                                  pow(h, static_cast<unsigned>(delta - 1)), "resultant");
    }
  }
  int dA = a.degree_in(v);
  if (dA == 0) return t * s;  // a constant in v only if the inputs were; handled by pow below
  Poly hl = detail::divide_or_throw(pow(b, static_cast<unsigned>(dA)), pow(h, static_cast<unsigned>(dA - 1)),
                                    "resultant");
  return t * hl * s;
}

/// Cofactor identity s*a + t*b = r with r free of x_v.
struct Bezout {
  Poly s;
  Poly t;
  Poly r;
};

/// Runs the subresultant sequence of a and b in x_v while tracking cofactors,
/// stopping at the first remainder free of x_v. Throws PreconditionError when
/// a and b share a factor involving x_v.
inline Bezout bezout_in_variable(const Poly& a_in, const Poly& b_in, std::size_t v) {
  Poly::check_same(a_in, b_in);
  const std::size_t n = a_in.ambient();
  if (a_in.is_zero() || b_in.is_zero()) throw PreconditionError("bezout_in_variable: zero argument");
  Poly a = a_in, b = b_in;
  Poly sa = Poly::constant(n, 1), ta(n);
  Poly sb(n), tb = Poly::constant(n, 1);
  if (a.degree_in(v) < b.degree_in(v)) {
    std::swap(a, b);
    std::swap(sa, sb);
    std::swap(ta, tb);
  }
  if (b.degree_in(v) == 0) return {sb, tb, b};
  Poly g = Poly::constant(n, 1), h = Poly::constant(n, 1);
  for (;;) {
    const int delta = a.degree_in(v) - b.degree_in(v);
    auto [q, r] = pseudo_divide(a, b, v);
    if (r.is_zero())
      throw PreconditionError("bezout_in_variable: arguments share a factor in the chosen variable");
    Poly mult = pow(leading_coefficient_in(b, v), static_cast<unsigned>(delta + 1));
    Poly sr = mult * sa - q * sb;
    Poly tr = mult * ta - q * tb;
    Poly div = g * pow(h, static_cast<unsigned>(delta));
    r = detail::divide_or_throw(r, div, "bezout_in_variable");
    sr = detail::divide_or_throw(sr, div, "bezout_in_variable");
    tr = detail::divide_or_throw(tr, div, "bezout_in_variable");
    if (r.degree_in(v) == 0) return {sr, tr, r};
    a = std::move(b);
    sa = std::move(sb);
    ta = std::move(tb);
    b = std::move(r);
    sb = std::move(sr);
    tb = std::move(tr);
    g = leading_coefficient_in(a, v);
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = detail::divide_or_throw(pow(g, static_cast<unsigned>(delta)),
                                  pow(h, static_cast<unsigned>(delta - 1)), "bezout_in_variable");
    }
  }
}

} // namespace kforge

#endif // KFORGE_GCD_HPP
