#include <gtest/gtest.h>

#include "support.hpp"

using namespace kforge;
using kforge::testing::P;
using kforge::testing::RandomPolys;

namespace {

Poly X(std::size_t j, std::size_t n = 2) { return Poly::variable(n, j); }

std::size_t parse_error_position(const std::string& text, std::size_t n) {
  try {
    parse_poly(text, n);
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError for " << text;
  return 0;
}

} // namespace

TEST(Parse, SingleMonomial) {
  Poly p = P("x1*x2");
  EXPECT_EQ(p.num_terms(), 1u);
  EXPECT_EQ(p, X(1) * X(2));
}

TEST(Parse, RationalCoefficients) {
  Poly p = P("x1^2 - 2/3*x1*x2 + 1");
  ASSERT_EQ(p.num_terms(), 3u);
  Monomial x1sq(2), x1x2(2);
  x1sq[0] = 2;
  x1x2[0] = 1;
  x1x2[1] = 1;
  EXPECT_EQ(p.coefficient(x1sq), Rational(1));
  EXPECT_EQ(p.coefficient(x1x2), Rational(-2, 3));
  EXPECT_EQ(p.constant_term(), Rational(1));
}

TEST(Parse, PowerOfSum) { EXPECT_EQ(P("(x1+x2)^2"), X(1) * X(1) + Rational(2) * X(1) * X(2) + X(2) * X(2)); }

TEST(Parse, WhitespaceInsignificant) { EXPECT_EQ(P("  x1 *   x2 ^ 2 -  3 "), P("x1*x2^2-3")); }

TEST(Parse, ErrorsCarryPositions) {
  EXPECT_EQ(parse_error_position("x1 + x3", 2), 5u);
  EXPECT_EQ(parse_error_position("x1^-1", 2), 3u);
  EXPECT_THROW(parse_poly("1/0", 1), ParseError);
  EXPECT_THROW(parse_poly("x1 +", 1), ParseError);
  EXPECT_THROW(parse_poly("x1 ) ", 1), ParseError);
  EXPECT_THROW(parse_poly("", 1), ParseError);
  EXPECT_THROW(parse_poly("y1", 1), ParseError);
  EXPECT_THROW(parse_poly("x0", 1), ParseError);
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(to_string(P("x1^2 - 2/3*x1*x2 + 1")), "x1^2 - 2/3*x1*x2 + 1");
  EXPECT_EQ(to_string(Poly(2)), "0");
  EXPECT_EQ(to_string(-X(1)), "-x1");
  EXPECT_EQ(to_string(P("x2 + x1^2")), "x1^2 + x2");
  EXPECT_EQ(to_string(P("-1/2")), "-1/2");
}

TEST(Print, RoundTripOnRandomPolys) {
  RandomPolys gen(11);
  for (int i = 0; i < 200; ++i) {
    Poly p = gen.poly(3, 5, 6, true);
    EXPECT_EQ(parse_poly(to_string(p), 3), p) << to_string(p);
  }
}

TEST(Arith, Examples) {
  EXPECT_TRUE((X(1) + -X(1)).is_zero());
  EXPECT_EQ((X(1) + X(2)) * (X(1) - X(2)), P("x1^2 - x2^2"));
  EXPECT_EQ(pow(X(1) + Poly::constant(2, 1), 3), P("x1^3 + 3*x1^2 + 3*x1 + 1"));
  EXPECT_EQ(pow(X(1), 0), Poly::constant(2, 1));
}

TEST(Arith, AmbientMismatchThrows) {
  EXPECT_THROW(X(1, 2) + X(1, 3), ArityError);
  EXPECT_THROW(X(1, 2) * X(1, 3), ArityError);
}

TEST(Arith, RingAxiomsOnRandomPolys) {
  RandomPolys gen(1);
  for (int i = 0; i < 100; ++i) {
    Poly a = gen.poly(3, 3, 4, true), b = gen.poly(3, 3, 4, true), c = gen.poly(3, 3, 4, true);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Degree, ZeroAndConstants) {
  EXPECT_EQ(Poly(2).total_degree(), kDegreeOfZero);
  EXPECT_EQ(Poly::constant(2, 5).total_degree(), 0);
  EXPECT_EQ(P("x1^2*x2 + x2").total_degree(), 3);
  EXPECT_EQ(P("x1^2*x2 + x2").degree_in(1), 2);
}

TEST(Substitute, Examples) {
  std::vector<Poly> f{X(1), X(1) * X(2)};
  EXPECT_EQ(substitute(X(1), f), X(1));
  EXPECT_EQ(substitute(P("x1^2 + x2^2"), f), P("x1^2 + x1^2*x2^2"));
  Poly w = P("3*x1^2*x2 - x2 + 7");
  EXPECT_EQ(substitute(w, std::vector<Poly>{X(1), X(2)}), w);
}

TEST(Substitute, ArityMismatchThrows) {
  EXPECT_THROW(substitute(X(1, 3), std::vector<Poly>{X(1), X(2)}), ArityError);
}

TEST(Substitute, IsAHomomorphism) {
  RandomPolys gen(2);
  for (int i = 0; i < 40; ++i) {
    std::vector<Poly> f{gen.poly(2, 2, 3), gen.poly(2, 2, 3)};
    Poly a = gen.poly(2, 2, 3), b = gen.poly(2, 2, 3);
    EXPECT_EQ(substitute(a + b, f), substitute(a, f) + substitute(b, f));
    EXPECT_EQ(substitute(a * b, f), substitute(a, f) * substitute(b, f));
  }
}

TEST(Derivative, Examples) {
  EXPECT_EQ(partial_derivative(P("x1^2*x2"), 1), P("2*x1*x2"));
  EXPECT_EQ(partial_derivative(P("x1^2*x2"), 2), P("x1^2"));
  EXPECT_TRUE(partial_derivative(P("7/3"), 1).is_zero());
  EXPECT_THROW(partial_derivative(P("x1"), 3), ArityError);
}

TEST(Derivative, Leibniz) {
  RandomPolys gen(3);
  for (int i = 0; i < 100; ++i) {
    Poly a = gen.poly(3, 4, 5, true), b = gen.poly(3, 4, 5, true);
    std::size_t j = static_cast<std::size_t>(gen.uniform(1, 3));
    EXPECT_EQ(partial_derivative(a * b, j), partial_derivative(a, j) * b + a * partial_derivative(b, j));
  }
}

TEST(Derivative, ChainRule) {
  RandomPolys gen(4);
  for (int i = 0; i < 40; ++i) {
    Poly w = gen.poly(2, 3, 4);
    std::vector<Poly> f{gen.poly(3, 2, 3), gen.poly(3, 2, 3)};
    std::size_t j = static_cast<std::size_t>(gen.uniform(1, 3));
    Poly rhs(3);
    for (std::size_t k = 0; k < 2; ++k) rhs += substitute(partial_derivative(w, k + 1), f) * partial_derivative(f[k], j);
    EXPECT_EQ(partial_derivative(substitute(w, f), j), rhs);
  }
}

TEST(Division, Examples) {
  auto q = exact_division(P("x1^2*x2^2 - x1^3"), P("x1^2"));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, P("x2^2 - x1"));
  EXPECT_FALSE(exact_division(P("x1"), P("x1^2")));
  auto z = exact_division(Poly(2), P("x1 + 1"));
  ASSERT_TRUE(z);
  EXPECT_TRUE(z->is_zero());
  EXPECT_THROW(exact_division(P("x1"), Poly(2)), PreconditionError);
}

TEST(Division, RoundTripOnPlantedProducts) {
  RandomPolys gen(5);
  for (int i = 0; i < 100; ++i) {
    Poly a = gen.poly(3, 3, 4, true), b = gen.nonconstant(3, 3, 4);
    auto q = exact_division(a * b, b);
    ASSERT_TRUE(q);
    EXPECT_EQ(*q, a);
    Poly c = a * b + Poly::constant(3, 1);
    if (auto r = exact_division(c, b)) {
      EXPECT_EQ(*r * b, c);
    }
  }
}
