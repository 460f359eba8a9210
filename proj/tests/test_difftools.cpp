#include <gtest/gtest.h>

#include "support.hpp"

using namespace kforge;
using kforge::testing::P;
using kforge::testing::RandomPolys;

TEST(JacobianMinor, Examples) {
  EXPECT_EQ(jacobian_minor({P("x1"), P("x1*x2")}, {1, 2}), P("x1"));
  EXPECT_EQ(jacobian({P("x1", 3), P("x2", 3), P("x3", 3)}), P("1", 3));
  EXPECT_EQ(jacobian({P("x1 + x2"), P("x1*x2")}), P("x1 - x2"));
}

TEST(JacobianMinor, ArityErrors) {
  EXPECT_THROW(jacobian_minor({P("x1"), P("x2")}, {1}), ArityError);
  EXPECT_THROW(jacobian_minor({P("x1"), P("x2")}, {1, 3}), ArityError);
  EXPECT_THROW(jacobian_minor({P("x1", 1), P("x1", 1)}, {1, 1}), ArityError);
  EXPECT_THROW(jacobian_minor({}, {}), ArityError);
}

TEST(JacobianMinor, AntisymmetryAndRepeatedVariables) {
  RandomPolys gen(41);
  for (int i = 0; i < 30; ++i) {
    std::vector<Poly> f{gen.poly(3, 3, 4), gen.poly(3, 3, 4)};
    EXPECT_EQ(jacobian_minor(f, {1, 3}), -jacobian_minor(f, {3, 1}));
    EXPECT_TRUE(jacobian_minor(f, {2, 2}).is_zero());
  }
}

TEST(JacobianMinor, BareissMatchesCofactorExpansion) {
  RandomPolys gen(42);
  for (int i = 0; i < 20; ++i) {
    std::vector<Poly> f{gen.poly(3, 2, 3), gen.poly(3, 2, 3), gen.poly(3, 2, 3)};
    auto d = [&](std::size_t a, std::size_t b) { return partial_derivative(f[a], b + 1); };
    Poly expected = d(0, 0) * (d(1, 1) * d(2, 2) - d(1, 2) * d(2, 1)) - d(0, 1) * (d(1, 0) * d(2, 2) - d(1, 2) * d(2, 0)) +
                    d(0, 2) * (d(1, 0) * d(2, 1) - d(1, 1) * d(2, 0));
    EXPECT_EQ(jacobian(f), expected);
  }
}

TEST(Derivation, Examples) {
  JacobianSpec spec{{P("x1"), P("x1*x2")}, 2, {1, 2}};
  EXPECT_TRUE(apply_derivation(spec, P("x1")).is_zero());
  EXPECT_EQ(apply_derivation(spec, P("x1*x2")), P("x1"));
  EXPECT_EQ(apply_derivation(spec, P("x2")), P("1"));
}

TEST(Derivation, SlotValidation) {
  EXPECT_THROW(apply_derivation({{P("x1")}, 2, {1}}, P("x1")), ArityError);
  EXPECT_THROW(apply_derivation({{P("x1")}, 1, {1, 2}}, P("x1")), ArityError);
}

TEST(Derivation, AxiomsAndChainRule) {
  RandomPolys gen(43);
  for (int i = 0; i < 25; ++i) {
    JacobianSpec spec{{gen.poly(3, 2, 3), gen.poly(3, 2, 3)}, static_cast<std::size_t>(gen.uniform(1, 2)), {1, 3}};
    auto d = [&](const Poly& p) { return apply_derivation(spec, p); };
    Poly a = gen.poly(3, 3, 3), b = gen.poly(3, 3, 3);
    EXPECT_EQ(d(a + b), d(a) + d(b));
    EXPECT_EQ(d(a * b), d(a) * b + a * d(b));
    EXPECT_TRUE(d(Poly::constant(3, Rational(5, 2))).is_zero());
    // kills the other polynomial, and sends the slot one to the minor itself
    EXPECT_TRUE(d(spec.polys[2 - spec.slot]).is_zero());
    EXPECT_EQ(d(spec.polys[spec.slot - 1]), jacobian_minor(spec.polys, spec.vars));

    Poly w = gen.poly(2, 3, 3);
    std::vector<Poly> args{a, b};
    Poly rhs(3);
    for (std::size_t k = 0; k < 2; ++k) rhs += substitute(partial_derivative(w, k + 1), args) * d(args[k]);
    EXPECT_EQ(d(substitute(w, args)), rhs);
  }
}

TEST(Dgcd, Examples) {
  EXPECT_EQ(dgcd({P("x1^2*x2")}), P("x1"));
  EXPECT_EQ(dgcd({P("x1"), P("x1*x2")}), P("x1"));
  EXPECT_EQ(dgcd({P("x1")}), P("1"));
  EXPECT_FALSE(dgcd({P("3")}).has_value());
  EXPECT_FALSE(dgcd({P("x1 + x2"), P("(x1 + x2)^2")}).has_value());
}

TEST(Dgcd, SingleAndFullIdentities) {
  RandomPolys gen(44);
  for (int i = 0; i < 25; ++i) {
    Poly f = gen.nonconstant(3, 4, 4);
    Poly g(3);
    for (std::size_t j = 1; j <= 3; ++j) {
      Poly d = partial_derivative(f, j);
      if (!d.is_zero()) g = g.is_zero() ? normalize(d) : gcd_poly(g, d);
    }
    EXPECT_EQ(*dgcd({f}), g);

    std::vector<Poly> fs{gen.poly(3, 3, 3), gen.poly(3, 3, 3), gen.poly(3, 3, 3)};
    Poly j = jacobian(fs);
    if (j.is_zero()) {
      EXPECT_FALSE(dgcd(fs).has_value());
    } else {
      EXPECT_EQ(*dgcd(fs), normalize(j));
    }
  }
}
