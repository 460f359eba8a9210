#include <gtest/gtest.h>

#include "support.hpp"

using namespace kforge;
using kforge::testing::P;
using kforge::testing::RandomPolys;

namespace {

std::vector<Poly> gens_of(const GroebnerBasis& gb) { return gb.gens; }

/// x, y named x1, x2; tag variables y1, y2 are x3, x4.
Poly Q(const std::string& s) { return P(s, 4); }

} // namespace

TEST(Buchberger, PrincipalIdeal) {
  for (auto order : {MonomialOrder::lex(), MonomialOrder::grlex()})
    EXPECT_EQ(gens_of(buchberger({P("x1")}, order)), std::vector<Poly>{P("x1")});
}

TEST(Buchberger, LinearBackSubstitution) {
  auto gb = buchberger({P("x1 - 1"), P("x2 - x1")}, MonomialOrder::lex());
  EXPECT_EQ(gens_of(gb), (std::vector<Poly>{P("x1 - 1"), P("x2 - 1")}));
}

TEST(Buchberger, CircleAndDiagonal) {
  auto gb = buchberger({P("x1^2 + x2^2 - 1"), P("x1 - x2")}, MonomialOrder::lex());
  EXPECT_EQ(gens_of(gb), (std::vector<Poly>{P("x1 - x2"), P("2*x2^2 - 1")}));
}

TEST(Buchberger, RejectsEmptyInput) {
  EXPECT_THROW(buchberger({}, MonomialOrder::grlex()), PreconditionError);
  EXPECT_THROW(buchberger({Poly(2), Poly(2)}, MonomialOrder::grlex()), PreconditionError);
}

TEST(Buchberger, UnitIdeal) {
  auto gb = buchberger({P("x1*x2 - 1"), P("x1")}, MonomialOrder::grlex());
  EXPECT_EQ(gens_of(gb), std::vector<Poly>{P("1")});
}

TEST(Buchberger, Deterministic) {
  std::vector<Poly> gens{P("x1^2*x2 - x2^3 + 1", 3), P("x1*x3 - x2^2", 3), P("x3^2 - x1 + x2", 3)};
  auto a = buchberger(gens, MonomialOrder::grlex());
  auto b = buchberger(gens, MonomialOrder::grlex());
  EXPECT_EQ(a.gens, b.gens);
}

TEST(Buchberger, GeneratorsReduceToZero) {
  RandomPolys gen(31);
  for (int i = 0; i < 8; ++i) {
    std::vector<Poly> gens{gen.nonconstant(3, 2, 3), gen.nonconstant(3, 2, 3)};
    auto gb = buchberger(gens, MonomialOrder::grlex());
    for (const auto& g : gens) EXPECT_TRUE(ideal_contains(gb, g));
    for (const auto& g : gb.gens) EXPECT_GT(g.leading_coefficient(), 0);
  }
}

TEST(NormalForm, Examples) {
  GroebnerBasis x = buchberger({P("x1")}, MonomialOrder::grlex());
  EXPECT_TRUE(normal_form(P("x1^2*x2"), x).is_zero());
  EXPECT_EQ(normal_form(P("x1 + 1"), x), P("1"));
  GroebnerBasis diag = buchberger({P("x1 - x2")}, MonomialOrder::lex());
  EXPECT_EQ(normal_form(P("x2^2 - x1"), diag), P("x2^2 - x2"));
}

TEST(NormalForm, Congruence) {
  RandomPolys gen(32);
  GroebnerBasis gb = buchberger({P("x1^2 - x2", 3), P("x2*x3 - 1", 3)}, MonomialOrder::grlex());
  for (int i = 0; i < 30; ++i) {
    Poly p = gen.poly(3, 3, 4), q = gen.poly(3, 2, 3), r = gen.poly(3, 3, 4);
    EXPECT_EQ(normal_form(p * q + r, gb), normal_form(normal_form(p, gb) * q + r, gb));
  }
}

TEST(Elimination, ContractionOfTheExampleIdeal) {
  // x | f1 and x | f2 for f = (x, xy), so both tag variables lie in the contraction.
  auto gb = elimination_ideal({Q("x1"), Q("x3 - x1"), Q("x4 - x1*x2")}, {3, 4});
  EXPECT_EQ(gb.ambient, 2u);
  EXPECT_EQ(gens_of(gb), (std::vector<Poly>{P("x1"), P("x2")}));
}

TEST(Elimination, CoincidingImages) {
  auto gb = elimination_ideal({Q("x3 - x1"), Q("x4 - x1")}, {3, 4});
  EXPECT_EQ(gens_of(gb), std::vector<Poly>{P("x1 - x2")});
}

TEST(Elimination, IndependentImagesGiveZeroIdeal) {
  auto gb = elimination_ideal({Q("x3 - x1"), Q("x4 - x2")}, {3, 4});
  EXPECT_TRUE(gb.gens.empty());
}

TEST(Elimination, Soundness) {
  // implicitization of (t^2, t^3): every generator must lie in the full ideal
  std::vector<Poly> gens{P("x2 - x1^2", 3), P("x3 - x1^3", 3)};
  auto elim = elimination_ideal(gens, {2, 3});
  ASSERT_EQ(elim.gens.size(), 1u);
  EXPECT_EQ(elim.gens[0], P("x1^3 - x2^2"));
  auto full = buchberger(gens, MonomialOrder::grlex());
  for (const auto& g : elim.gens) {
    std::vector<std::size_t> pos{2, 3};
    EXPECT_TRUE(ideal_contains(full, embed(g, 3, pos)));
  }
}

TEST(Elimination, RejectsBadKeepSets) {
  EXPECT_THROW(elimination_ideal({P("x1")}, {}), PreconditionError);
  EXPECT_THROW(elimination_ideal({P("x1")}, {1, 2}), PreconditionError);
  EXPECT_THROW(elimination_ideal({P("x1")}, {3}), ArityError);
}

TEST(Membership, Examples) {
  auto e = subalgebra_membership(P("x1"), {P("x1 + x2"), P("x2")});
  ASSERT_TRUE(e);
  EXPECT_EQ(*e, P("x1 - x2"));
  auto f1 = subalgebra_membership(P("x1^2 + x2"), {P("x1^2 + x2"), P("x1*x2")});
  ASSERT_TRUE(f1);
  EXPECT_EQ(*f1, P("x1"));
  EXPECT_FALSE(subalgebra_membership(P("x2"), {P("x1"), P("x1*x2")}));
}

TEST(Membership, SoundnessOnRandomTargets) {
  RandomPolys gen(33);
  std::vector<Poly> f{P("x1 + x2^2"), P("x2")};
  for (int i = 0; i < 20; ++i) {
    Poly w = gen.poly(2, 3, 4);
    Poly target = substitute(w, f);
    auto e = subalgebra_membership(target, f);
    ASSERT_TRUE(e) << to_string(target);
    EXPECT_EQ(substitute(*e, f), target);
  }
}

TEST(Orders, BlockOrderRanksEliminatedBlockFirst) {
  auto ord = MonomialOrder::block(3, {1});
  Monomial a(3), b(3);
  a[0] = 1;
  b[1] = 5;
  EXPECT_GT(ord.compare(a, b), 0);
  EXPECT_LT(MonomialOrder::grlex().compare(a, b), 0);
  EXPECT_GT(MonomialOrder::lex().compare(a, b), 0);
}
