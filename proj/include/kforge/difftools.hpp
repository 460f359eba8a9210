#ifndef KFORGE_DIFFTOOLS_HPP
#define KFORGE_DIFFTOOLS_HPP

#include <optional>
#include <string>
#include <vector>

#include "kforge/gcd.hpp"
#include "kforge/poly.hpp"

namespace kforge {

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Determinant of a square polynomial matrix by fraction-free Bareiss elimination.
inline Poly determinant(PolyMatrix a, std::size_t n) {
  const std::size_t m = a.size();
  if (m == 0) return Poly::constant(n, 1);
  Rational sign = 1;
  Poly prev = Poly::constant(n, 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t i = k + 1;
      while (i < m && a[i][k].is_zero()) ++i;
      if (i == m) return Poly(n);
      std::swap(a[i], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Poly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto q = exact_division(t, prev);
        if (!q) throw VerificationFailure("determinant: Bareiss division was not exact");
        a[i][j] = std::move(*q);
      }
      a[i][k] = Poly(n);
    }
    prev = a[k][k];
  }
  return a[m - 1][m - 1] * sign;
}

/// det[ d f_a / d x_{vars[b]} ]; variable indices are 1-based.
inline Poly jacobian_minor(const std::vector<Poly>& f, const std::vector<std::size_t>& vars) {
  if (f.empty()) throw ArityError("jacobian_minor: empty polynomial list");
  if (f.size() != vars.size())
    throw ArityError("jacobian_minor: " + std::to_string(f.size()) + " polynomials but " +
                     std::to_string(vars.size()) + " variables");
  const std::size_t n = f.front().ambient();
  if (f.size() > n) throw ArityError("jacobian_minor: more polynomials than variables");
  for (const auto& p : f) Poly::check_same(p, f.front());
  PolyMatrix a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto v : vars) a[i].push_back(partial_derivative(f[i], v));
  return determinant(std::move(a), n);
}

/// Full jacobian determinant with respect to x1..xn.
inline Poly jacobian(const std::vector<Poly>& f) {
  std::vector<std::size_t> vars(f.size());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i + 1;
  return jacobian_minor(f, vars);
}

/// The derivation p -> jacobian minor of (f_1, .., f_{slot-1}, p, f_{slot+1}, .., f_m).
struct JacobianSpec {
  std::vector<Poly> polys;
  std::size_t slot = 1;
  std::vector<std::size_t> vars;

  void validate() const {
    if (polys.empty()) throw ArityError("JacobianSpec: no polynomials");
    const std::size_t n = polys.front().ambient();
    if (polys.size() > n) throw ArityError("JacobianSpec: more polynomials than variables");
    if (vars.size() != polys.size()) throw ArityError("JacobianSpec: vars and polys differ in length");
    if (slot < 1 || slot > polys.size()) throw ArityError("JacobianSpec: slot out of range");
    for (auto v : vars) Poly::check_var(n, v);
  }
};

inline Poly apply_derivation(const JacobianSpec& spec, const Poly& p) {
  spec.validate();
  std::vector<Poly> f = spec.polys;
  Poly::check_same(p, f.front());
  f[spec.slot - 1] = p;
  return jacobian_minor(f, spec.vars);
}

/// Every increasing m-subset of 1..n.
inline std::vector<std::vector<std::size_t>> increasing_subsets(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  if (m == 0 || m > n) return out;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i + 1;
  for (;;) {
    out.push_back(idx);
    std::size_t i = m;
    while (i > 0 && idx[i - 1] == n - m + i) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Normalized gcd of all m x m jacobian minors of f; nullopt when every minor vanishes.
inline std::optional<Poly> dgcd(const std::vector<Poly>& f) {
  if (f.empty()) throw ArityError("dgcd: empty polynomial list");
  const std::size_t n = f.front().ambient();
  if (f.size() > n) throw ArityError("dgcd: more polynomials than variables");
  std::optional<Poly> g;
  for (const auto& vars : increasing_subsets(n, f.size())) {
    Poly minor = jacobian_minor(f, vars);
    if (minor.is_zero()) continue;
    g = g ? gcd_poly(*g, minor) : normalize(minor);
  }
  return g;
}

} // namespace kforge

#endif // KFORGE_DIFFTOOLS_HPP
