#ifndef KFORGE_TESTS_SUPPORT_HPP
#define KFORGE_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "kforge/kforge.hpp"

namespace kforge::testing {

inline Poly P(const std::string& text, std::size_t n = 2) { return parse_poly(text, n); }

/// Random polynomial with small integer (occasionally rational) coefficients.
class RandomPolys {
public:
  explicit RandomPolys(std::uint64_t seed) : rng_(seed) {}

  Poly poly(std::size_t n, int max_degree, int max_terms, bool rationals = false) {
    Poly p(n);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      Monomial m(n);
      int budget = uniform(0, max_degree);
      for (int k = 0; k < budget; ++k) m[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))] += 1;
      Rational c(uniform(-5, 5));
      if (c == 0) c = 1;
      if (rationals && uniform(0, 3) == 0) c /= uniform(2, 4);
      p.add_term(m, c);
    }
    return p;
  }

  /// Nonconstant version of poly().
  Poly nonconstant(std::size_t n, int max_degree, int max_terms) {
    for (;;) {
      Poly p = poly(n, max_degree, max_terms);
      if (!p.is_constant()) return p;
    }
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
  std::mt19937_64 rng_;
};

} // namespace kforge::testing

#endif // KFORGE_TESTS_SUPPORT_HPP
