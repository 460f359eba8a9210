#ifndef KFORGE_DETAIL_ZPOLY_HPP
#define KFORGE_DETAIL_ZPOLY_HPP

// Dense univariate polynomials over Z, Z/p (word-sized prime) and Z/m (big
// modulus), with the Berlekamp / Hensel / Zassenhaus pipeline built on them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kforge/error.hpp"

namespace kforge::detail {

using Integer = mpz_class;

/// Coefficients in ascending degree; the zero polynomial is empty.
using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline ZPoly add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  trim(r);
  return r;
}

inline ZPoly scale(const ZPoly& a, const Integer& s) {
  ZPoly r = a;
  for (auto& c : r) c *= s;
  trim(r);
  return r;
}

inline ZPoly derivative(const ZPoly& a) {
  if (a.size() <= 1) return {};
  ZPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<unsigned long>(i);
  trim(r);
  return r;
}

inline Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Divides out the content and makes the leading coefficient positive.
inline ZPoly primitive(const ZPoly& a) {
  if (a.empty()) return a;
  Integer c = content(a);
  if (a.back() < 0) c = -c;
  ZPoly r = a;
  for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

/// Pseudo-remainder of a by b (b nonzero).
inline ZPoly prem(ZPoly a, const ZPoly& b) {
  const int db = degree(b);
  const Integer& lb = b.back();
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    Integer la = a.back();
    for (auto& c : a) c *= lb;
    for (int j = 0; j <= db; ++j) a[j + shift] -= la * b[j];
    trim(a);
  }
  return a;
}

/// Exact quotient a / b over Z, or nullopt when b does not divide a.
inline std::optional<ZPoly> divide(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw PreconditionError("divide: zero divisor");
  if (a.empty()) return ZPoly{};
  if (degree(a) < degree(b)) return std::nullopt;
  ZPoly q(a.size() - b.size() + 1);
  const int db = degree(b);
  while (!a.empty() && degree(a) >= db) {
    if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    const int shift = degree(a) - db;
    Integer c = a.back() / b.back();
    q[shift] = c;
    for (int j = 0; j <= db; ++j) a[j + shift] -= c * b[j];
    trim(a);
  }
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

/// Primitive gcd with positive leading coefficient; gcd(0, 0) is 0.
inline ZPoly gcd(ZPoly a, ZPoly b) {
  a = primitive(a);
  b = primitive(b);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = primitive(prem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive(a);
}

/// Square-free decomposition of a primitive polynomial with positive leading
/// coefficient: returns (part, multiplicity) pairs with nonconstant parts.
inline std::vector<std::pair<ZPoly, unsigned>> squarefree_decomposition(const ZPoly& f) {
  std::vector<std::pair<ZPoly, unsigned>> out;
  if (degree(f) < 1) return out;
  ZPoly fp = derivative(f);
  ZPoly a0 = gcd(f, fp);
  ZPoly b = *divide(f, a0);
  ZPoly c = *divide(fp, a0);
  ZPoly d = sub(c, derivative(b));
  unsigned i = 1;
  while (degree(b) > 0) {
    ZPoly a = d.empty() ? primitive(b) : gcd(b, d);
    if (degree(a) > 0) out.emplace_back(a, i);
    ZPoly nb = *divide(b, a);
    c = d.empty() ? ZPoly{} : *divide(d, a);
    b = std::move(nb);
    d = sub(c, derivative(b));
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Word-sized prime field.

using FpPoly = std::vector<std::int64_t>;

inline std::int64_t fp_reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline std::int64_t fp_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a = fp_reduce(a, p);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * a % p);
    a = static_cast<std::int64_t>((__int128)a * a % p);
    e >>= 1;
  }
  return r;
}

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p) { return fp_pow(a, p - 2, p); }

inline void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_from(const ZPoly& a, std::int64_t p) {
  FpPoly r(a.size());
  Integer pz = static_cast<long>(p);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer t;
    mpz_fdiv_r(t.get_mpz_t(), a[i].get_mpz_t(), pz.get_mpz_t());
    r[i] = t.get_si();
  }
  fp_trim(r);
  return r;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  fp_trim(r);
  return r;
}

inline FpPoly fp_sub(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fp_reduce(r[i] - b[i], p);
  fp_trim(r);
  return r;
}

inline std::pair<FpPoly, FpPoly> fp_divrem(FpPoly a, const FpPoly& b, std::int64_t p) {
  if (b.empty()) throw PreconditionError("fp_divrem: zero divisor");
  const std::size_t db = b.size() - 1;
  const std::int64_t inv = fp_inv(b.back(), p);
  FpPoly q(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const std::int64_t c = a.back() * inv % p;
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) a[j + shift] = fp_reduce(a[j + shift] - c * b[j], p);
    fp_trim(a);
  }
  fp_trim(q);
  return {q, a};
}

inline FpPoly fp_monic(FpPoly a, std::int64_t p) {
  if (a.empty()) return a;
  const std::int64_t inv = fp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::int64_t p) {
  while (!b.empty()) {
    FpPoly r = fp_divrem(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

/// s*a + t*b = gcd (monic).
inline std::tuple<FpPoly, FpPoly, FpPoly> fp_exgcd(FpPoly a, FpPoly b, std::int64_t p) {
  FpPoly s0{1}, s1{}, t0{}, t1{1};
  while (!b.empty()) {
    auto [q, r] = fp_divrem(a, b, p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const std::int64_t inv = fp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {a, s0, t0};
}

inline FpPoly fp_derivative(const FpPoly& a, std::int64_t p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<std::int64_t>(i % p) % p;
  fp_trim(r);
  return r;
}

/// Berlekamp factorization of a monic square-free polynomial over F_p.
inline std::vector<FpPoly> berlekamp(const FpPoly& f, std::int64_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return {f};

  // x^p mod f by repeated squaring
  FpPoly xp{1};
  {
    FpPoly base{0, 1};
    std::int64_t e = p;
    while (e > 0) {
      if (e & 1) xp = fp_divrem(fp_mul(xp, base, p), f, p).second;
      base = fp_divrem(fp_mul(base, base, p), f, p).second;
      e >>= 1;
    }
  }
  // Row i of Q holds x^(i*p) mod f; we store the transpose of Q - I directly.
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
  FpPoly row{1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[j][i] = j < row.size() ? row[j] : 0;
    a[i][i] = fp_reduce(a[i][i] - 1, p);
    row = fp_divrem(fp_mul(row, xp, p), f, p).second;
  }

  // Null space of a by reduction to row echelon form.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    const std::int64_t inv = fp_inv(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t m = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = fp_reduce(a[i][j] - m * a[r][j], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<FpPoly> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    FpPoly v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = fp_reduce(-a[i][free], p);
    fp_trim(v);
    basis.push_back(std::move(v));
  }
  const std::size_t count = basis.size();

  std::vector<FpPoly> factors{f};
  for (const auto& v : basis) {
    if (factors.size() == count) break;
    if (v.size() <= 1) continue;
    for (std::int64_t s = 0; s < p && factors.size() < count; ++s) {
      std::vector<FpPoly> next;
      for (const auto& u : factors) {
        if (u.size() <= 2) {
          next.push_back(u);
          continue;
        }
        FpPoly vs = v;
        vs[0] = fp_reduce(vs[0] - s, p);
        fp_trim(vs);
        FpPoly g = fp_gcd(u, vs, p);
        if (g.size() > 1 && g.size() < u.size()) {
          next.push_back(g);
          next.push_back(fp_monic(fp_divrem(u, g, p).first, p));
        } else {
          next.push_back(u);
        }
      }
      factors = std::move(next);
    }
  }
  std::sort(factors.begin(), factors.end(), [](const FpPoly& x, const FpPoly& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
  });
  return factors;
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a big integer m.

inline ZPoly mod(const ZPoly& a, const Integer& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  trim(r);
  return r;
}

inline ZPoly from_fp(const FpPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<long>(a[i]);
  return r;
}

/// Quotient and remainder modulo m by a monic divisor.
inline std::pair<ZPoly, ZPoly> divrem_monic(ZPoly a, const ZPoly& b, const Integer& m) {
  a = mod(a, m);
  const int db = degree(b);
  ZPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    Integer c = a.back();
    q[shift] = c;
    for (int j = 0; j <= db; ++j) a[j + shift] -= c * b[j];
    a = mod(a, m);
  }
  trim(q);
  return {mod(q, m), a};
}

/// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the same mod m^2.
inline void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Integer& m) {
  const Integer m2 = m * m;
  ZPoly e = mod(sub(f, mul(g, h)), m2);
  auto [q, r] = divrem_monic(mul(s, e), h, m2);
  ZPoly g2 = mod(add(add(g, mul(t, e)), mul(q, g)), m2);
  ZPoly h2 = mod(add(h, r), m2);
  ZPoly b = mod(sub(add(mul(s, g2), mul(t, h2)), ZPoly{Integer(1)}), m2);
  auto [c, d] = divrem_monic(mul(s, b), h2, m2);
  s = mod(sub(s, d), m2);
  t = mod(sub(sub(t, mul(t, b)), mul(c, g2)), m2);
  g = std::move(g2);
  h = std::move(h2);
}

/// Lifts f = lc(f) * prod(factors) (mod p) to monic factors modulo p^(2^steps).
inline std::vector<ZPoly> multifactor_lift(const ZPoly& f, const std::vector<FpPoly>& factors, std::int64_t p,
                                           unsigned steps) {
  Integer modulus = static_cast<long>(p);
  for (unsigned i = 0; i < steps; ++i) modulus *= modulus;
  if (factors.size() == 1) {
    Integer inv;
    Integer lc = f.back();
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t()) == 0)
      throw VerificationFailure("multifactor_lift: leading coefficient not invertible");
    return {mod(scale(f, inv), modulus)};
  }
  const std::size_t k = factors.size() / 2;
  FpPoly a{1}, b{1};
  for (std::size_t i = 0; i < k; ++i) a = fp_mul(a, factors[i], p);
  for (std::size_t i = k; i < factors.size(); ++i) b = fp_mul(b, factors[i], p);
  FpPoly lc_p = fp_from(ZPoly{f.back()}, p);
  FpPoly g0 = fp_mul(a, lc_p, p);
  auto [d, s0, t0] = fp_exgcd(g0, b, p);
  if (d.size() != 1) throw VerificationFailure("multifactor_lift: modular factors not coprime");
  ZPoly g = from_fp(g0), h = from_fp(b), s = from_fp(s0), t = from_fp(t0);
  Integer m = static_cast<long>(p);
  for (unsigned i = 0; i < steps; ++i) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  std::vector<FpPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<FpPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(k), factors.end());
  auto out = multifactor_lift(g, left, p, steps);
  auto rest = multifactor_lift(h, right, p, steps);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline bool is_small_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// Smallest odd prime not dividing lc(f) for which f stays square-free mod p.
inline std::int64_t choose_prime(const ZPoly& f) {
  for (std::int64_t p = 3; p < (std::int64_t{1} << 30); p += 2) {
    if (!is_small_prime(p)) continue;
    FpPoly fp = fp_from(f, p);
    if (fp.size() != f.size()) continue;
    FpPoly g = fp_gcd(fp, fp_derivative(fp, p), p);
    if (g.size() == 1) return p;
  }
  throw VerificationFailure("choose_prime: no suitable prime found");
}

inline ZPoly symmetric_mod(const ZPoly& a, const Integer& m) {
  ZPoly r = mod(a, m);
  Integer half = m / 2;
  for (auto& c : r)
    if (c > half) c -= m;
  trim(r);
  return r;
}

/// Irreducible factors over Z of a primitive square-free polynomial with
/// positive leading coefficient and degree >= 1.
inline std::vector<ZPoly> zassenhaus(ZPoly f) {
  if (degree(f) <= 1) return {f};
  const std::int64_t p = choose_prime(f);
  std::vector<FpPoly> modular = berlekamp(fp_monic(fp_from(f, p), p), p);
  if (modular.size() == 1) return {f};

  // Any factor of f times lc(f) has coefficients below |lc| * 2^deg * ||f||_2.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = abs(f.back()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(degree(f) + 1));
  unsigned steps = 0;
  Integer modulus = static_cast<long>(p);
  while (modulus <= bound) {
    modulus *= modulus;
    ++steps;
  }
  std::vector<ZPoly> lifted = multifactor_lift(f, modular, p, steps);

  std::vector<ZPoly> result;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand{f.back()};
      for (auto i : idx) cand = mod(mul(cand, lifted[i]), modulus);
      cand = primitive(symmetric_mod(cand, modulus));
      if (degree(cand) > 0) {
        if (auto q = divide(f, cand)) {
          result.push_back(cand);
          f = std::move(*q);
          for (std::size_t i = s; i-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[i]));
          found = true;
          break;
        }
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == lifted.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (degree(f) > 0) result.push_back(primitive(f));
  return result;
}

/// Lexicographic order on (degree, coefficients from the top).
inline bool zpoly_less(const ZPoly& a, const ZPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

/// Complete factorization over Z of a primitive polynomial with positive
/// leading coefficient: irreducible factors with multiplicities, sorted.
inline std::vector<std::pair<ZPoly, unsigned>> factor_primitive(const ZPoly& f) {
  std::vector<std::pair<ZPoly, unsigned>> out;
  // strip powers of the variable first
  std::size_t low = 0;
  while (low < f.size() && f[low] == 0) ++low;
  ZPoly g(f.begin() + static_cast<std::ptrdiff_t>(low), f.end());
  if (low > 0) out.emplace_back(ZPoly{Integer(0), Integer(1)}, static_cast<unsigned>(low));
  for (auto& [part, mult] : squarefree_decomposition(g))
    for (auto& irr : zassenhaus(part)) out.emplace_back(std::move(irr), mult);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (zpoly_less(x.first, y.first)) return true;
    if (zpoly_less(y.first, x.first)) return false;
    return x.second < y.second;
  });
  return out;
}

} // namespace kforge::detail

#endif // KFORGE_DETAIL_ZPOLY_HPP
