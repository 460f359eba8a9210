#ifndef KFORGE_POLY_HPP
#define KFORGE_POLY_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "kforge/error.hpp"

namespace kforge {

using Integer = mpz_class;
using Rational = mpq_class;

/// Degree reported for the zero polynomial (stands in for minus infinity).
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

/// Exponent vector of a monomial in a fixed number of variables.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : exps_(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
  }

  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
    return r;
  }

  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
  std::vector<std::uint32_t> exps_;
};

/// Graded-lex comparison with x1 > x2 > ... ; returns <0, 0, >0.
inline int grlex_compare(const Monomial& a, const Monomial& b) {
  auto da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// Sparse polynomial over the rationals in a fixed number of variables x1..xn.
///
/// Terms are kept in descending graded-lex order and never carry a zero
/// coefficient, so two polynomials are equal exactly when their term maps are.
class Poly {
public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  /// The zero polynomial in zero variables; only useful as a placeholder.
  Poly() = default;
  explicit Poly(std::size_t n) : n_(n) {}

  static Poly constant(std::size_t n, const Rational& c) {
    Poly p(n);
    if (c != 0) p.terms_.emplace(Monomial(n), c);
    return p;
  }

  /// The variable x_j, 1-based.
  static Poly variable(std::size_t n, std::size_t j) {
    check_var(n, j);
    Monomial m(n);
    m[j - 1] = 1;
    return term(m, Rational(1));
  }

  static Poly term(const Monomial& m, const Rational& c) {
    Poly p(m.size());
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  std::size_t ambient() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  /// Constant term (zero when absent).
  Rational constant_term() const {
    auto it = terms_.find(Monomial(n_));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; kDegreeOfZero for the zero polynomial.
  int total_degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    return static_cast<int>(terms_.begin()->first.total_degree());
  }

  /// Degree in x_j (1-based); kDegreeOfZero for the zero polynomial.
  int degree_in(std::size_t j) const {
    check_var(n_, j);
    if (terms_.empty()) return kDegreeOfZero;
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[j - 1]);
    return static_cast<int>(d);
  }

  bool involves(std::size_t j) const {
    check_var(n_, j);
    for (const auto& [m, c] : terms_)
      if (m[j - 1] != 0) return true;
    return false;
  }

  /// Leading monomial and coefficient under graded-lex; requires nonzero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  /// Adds c*m to this polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_same(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  Poly& operator-=(const Poly& o) {
    check_same(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Multiplies by the monomial c*m.
  Poly times_term(const Monomial& m, const Rational& c) const {
    Poly r(n_);
    if (c == 0) return r;
    for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  static void check_var(std::size_t n, std::size_t j) {
    if (j < 1 || j > n)
      throw ArityError("variable index " + std::to_string(j) + " outside 1.." + std::to_string(n));
  }

  static void check_same(const Poly& a, const Poly& b) {
    if (a.n_ != b.n_)
      throw ArityError("ambient dimension mismatch: " + std::to_string(a.n_) + " vs " +
                       std::to_string(b.n_));
  }

private:
  std::size_t n_ = 0;
  TermMap terms_;
};

inline Poly pow(const Poly& a, unsigned e) {
  Poly result = Poly::constant(a.ambient(), 1);
  Poly base = a;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

/// Formal partial derivative with respect to x_j (1-based).
inline Poly partial_derivative(const Poly& f, std::size_t j) {
  Poly::check_var(f.ambient(), j);
  Poly r(f.ambient());
  for (const auto& [m, c] : f.terms()) {
    if (m[j - 1] == 0) continue;
    Monomial d = m;
    d[j - 1] -= 1;
    r.add_term(d, c * m[j - 1]);
  }
  return r;
}

/// Composition w(f_1, ..., f_m): w lives in m variables, each f_i in n.
inline Poly substitute(const Poly& w, std::span<const Poly> f) {
  if (w.ambient() != f.size())
    throw ArityError("substitute: w has " + std::to_string(w.ambient()) + " variables but " +
                     std::to_string(f.size()) + " images were given");
  if (f.empty()) return w;
  const std::size_t n = f.front().ambient();
  for (const auto& fi : f)
    if (fi.ambient() != n) throw ArityError("substitute: images live in different rings");

  // powers[i][k] = f_i^k, grown on demand
  std::vector<std::vector<Poly>> powers(f.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(n, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * f[i]);
    return cache[k];
  };

  Poly result(n);
  for (const auto& [m, c] : w.terms()) {
    Poly t = Poly::constant(n, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= power(i, m[i]);
    result += t;
  }
  return result;
}

inline Poly substitute(const Poly& w, const std::vector<Poly>& f) {
  return substitute(w, std::span<const Poly>(f));
}

/// Returns q with a = b*q when b divides a, std::nullopt otherwise.
inline std::optional<Poly> exact_division(const Poly& a, const Poly& b) {
  Poly::check_same(a, b);
  if (b.is_zero()) throw PreconditionError("exact_division: division by the zero polynomial");
  Poly q(a.ambient());
  if (a.is_zero()) return q;
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  Poly r = a;
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    Monomial m = lr / lb;
    Rational c = r.leading_coefficient() / cb;
    q.add_term(m, c);
    r -= b.times_term(m, c);
  }
  return q;
}

/// True when b divides a.
inline bool divides(const Poly& b, const Poly& a) { return exact_division(a, b).has_value(); }

/// Re-homes p into a ring of dimension new_n; variable i+1 becomes target[i] (1-based).
inline Poly embed(const Poly& p, std::size_t new_n, std::span<const std::size_t> target) {
  if (target.size() != p.ambient()) throw ArityError("embed: mapping length mismatch");
  Poly r(new_n);
  for (const auto& [m, c] : p.terms()) {
    Monomial mm(new_n);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Poly::check_var(new_n, target[i]);
      mm[target[i] - 1] += m[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

/// Appends extra variables after x1..xn, keeping the existing indices.
inline Poly extend(const Poly& p, std::size_t new_n) {
  std::vector<std::size_t> target(p.ambient());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = i + 1;
  return embed(p, new_n, target);
}

/// Coefficients of p viewed as a polynomial in x_j: result[k] multiplies x_j^k.
inline std::vector<Poly> coefficients_in(const Poly& p, std::size_t j) {
  int d = p.degree_in(j);
  if (d == kDegreeOfZero) return {};
  std::vector<Poly> out(static_cast<std::size_t>(d) + 1, Poly(p.ambient()));
  for (const auto& [m, c] : p.terms()) {
    Monomial mm = m;
    auto k = mm[j - 1];
    mm[j - 1] = 0;
    out[k].add_term(mm, c);
  }
  return out;
}

/// Inverse of coefficients_in.
inline Poly from_coefficients(const std::vector<Poly>& coeffs, std::size_t j, std::size_t n) {
  Poly r(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& [m, c] : coeffs[k].terms()) {
      Monomial mm = m;
      mm[j - 1] += static_cast<std::uint32_t>(k);
      r.add_term(mm, c);
    }
  return r;
}

/// Indices (1-based) of the variables that occur in p.
inline std::vector<std::size_t> variables_of(const Poly& p) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= p.ambient(); ++j)
    if (p.involves(j)) out.push_back(j);
  return out;
}

} // namespace kforge

#endif // KFORGE_POLY_HPP
