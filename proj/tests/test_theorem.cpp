#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "support.hpp"

using namespace kforge;
using kforge::testing::P;
using kforge::testing::RandomPolys;

namespace {

const std::vector<Poly> kExample{P("x1"), P("x1*x2")};
const std::vector<Poly> kIdentity{P("x1"), P("x2")};

bool contains(const std::vector<Poly>& v, const Poly& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

/// Direct oracle: every monomial of degree <= d whose image is divisible by g^e.
std::vector<Poly> divisible_monomials(const std::vector<Poly>& f, const Poly& g, unsigned e, unsigned d) {
  std::vector<Poly> out;
  Poly ge = pow(g, e);
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; a + b <= d; ++b) {
      Monomial m(2);
      m[0] = a;
      m[1] = b;
      Poly w = Poly::term(m, 1);
      if (divides(ge, substitute(w, f))) out.push_back(w);
    }
  return out;
}

} // namespace

TEST(AnnihilatorKernel, DegreeOneFirstPower) {
  auto basis = annihilator_kernel({kExample, P("x1"), 1, 6}, 1);
  EXPECT_TRUE(contains(basis, P("x1")));
  EXPECT_TRUE(contains(basis, P("x2")));
  for (const auto& w : basis) EXPECT_FALSE(w.is_constant());
}

TEST(AnnihilatorKernel, SquareNeedsDegreeTwo) {
  EXPECT_TRUE(annihilator_kernel({kExample, P("x1"), 2, 6}, 1).empty());
  auto basis = annihilator_kernel({kExample, P("x1"), 2, 6}, 2);
  EXPECT_EQ(basis.size(), 3u);
  for (const auto& w : {P("x1^2"), P("x1*x2"), P("x2^2")}) EXPECT_TRUE(contains(basis, w));
}

TEST(AnnihilatorKernel, MonomialImagesMatchDirectCheck) {
  // for monomial maps the kernel is spanned by monomials
  for (unsigned e : {1u, 2u}) {
    auto basis = annihilator_kernel({kExample, P("x1"), e, 6}, 3);
    auto direct = divisible_monomials(kExample, P("x1"), e, 3);
    EXPECT_EQ(basis.size(), direct.size());
    for (const auto& w : direct) EXPECT_TRUE(contains(basis, w)) << to_string(w);
  }
}

TEST(AnnihilatorKernel, ValidatesQuery) {
  EXPECT_THROW(annihilator_kernel({kExample, P("x1^2"), 1, 6}, 2), PreconditionError);
  EXPECT_THROW(annihilator_kernel({kExample, P("x1"), 3, 6}, 2), PreconditionError);
  EXPECT_THROW(annihilator_kernel({kExample, P("x1"), 1, 6}, 0), PreconditionError);
  EXPECT_THROW(annihilator_kernel({{P("x1", 3)}, P("x1"), 1, 6}, 1), ArityError);
}

TEST(AnnihilatorKernel, AgreesWithElimination) {
  for (const auto& [f, g] : std::vector<std::pair<std::vector<Poly>, Poly>>{
           {kExample, P("x1")}, {{P("x1 + x2"), P("x1*x2")}, P("x1 - x2")}, {{P("x1"), P("x2^3 + x1*x2")}, P("3*x2^2 + x1")}}) {
    for (unsigned e : {1u, 2u}) {
      auto agree = check_kernel_against_elimination({f, g, e, 4}, 4);
      EXPECT_TRUE(agree.kernel_in_elimination);
      EXPECT_TRUE(agree.elimination_in_kernel);
    }
  }
}

TEST(IrreducibleAnnihilator, Examples) {
  auto first = find_irreducible_annihilator({kExample, P("x1"), 1, 6});
  ASSERT_TRUE(first.witness);
  EXPECT_EQ(*first.witness, P("x1"));
  auto second = find_irreducible_annihilator({kExample, P("x1"), 2, 6});
  ASSERT_TRUE(second.witness);
  EXPECT_EQ(*second.witness, P("x1^2 + x2^2"));
  EXPECT_EQ(second.searched_up_to, 2u);
  EXPECT_TRUE(divides(P("x1^2"), substitute(*second.witness, kExample)));
  auto none = find_irreducible_annihilator({kIdentity, P("x1"), 2, 4});
  EXPECT_FALSE(none.witness);
  EXPECT_EQ(none.searched_up_to, 4u);
}

TEST(IrreducibleAnnihilator, SeededOrderStillFindsSoundWitness) {
  SearchOptions opts;
  opts.seed = 12345;
  auto r = find_irreducible_annihilator({{P("x1"), P("x2^4 + 4*x1*x2")}, P("x2^3 + x1"), 2, 6}, opts);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(is_irreducible(*r.witness));
  EXPECT_TRUE(divides(pow(P("x2^3 + x1"), 2), substitute(*r.witness, {P("x1"), P("x2^4 + 4*x1*x2")})));
}

TEST(RowDependence, Examples) {
  auto s = jacobian_row_dependence(kExample, P("x1"));
  ASSERT_TRUE(s);
  // proportional to (y, -1)
  EXPECT_EQ((*s)[0] * P("-1") - (*s)[1] * P("x2"), Poly(2));
  EXPECT_FALSE(jacobian_row_dependence(kIdentity, P("x1")));
  // zero jacobian: the rows are dependent over any quotient
  EXPECT_TRUE(jacobian_row_dependence({P("x1^2"), P("x1")}, P("x1")));
  EXPECT_THROW(jacobian_row_dependence(kExample, P("x1^2")), PreconditionError);
}

TEST(RowDependence, HoldsExactlyWhenGDividesJacobian) {
  RandomPolys gen(51);
  const std::vector<Poly> gs{P("x1"), P("x2"), P("x1 - x2"), P("x1^2 + x2"), P("x1 + x2 + 1")};
  for (int i = 0; i < 30; ++i) {
    std::vector<Poly> f{gen.poly(2, 3, 3), gen.poly(2, 3, 3)};
    for (const auto& g : gs) {
      auto s = jacobian_row_dependence(f, g);
      EXPECT_EQ(s.has_value(), divides(g, jacobian(f)));
      if (!s) continue;
      for (std::size_t j = 1; j <= 2; ++j)
        EXPECT_TRUE(divides(g, (*s)[0] * partial_derivative(f[0], j) + (*s)[1] * partial_derivative(f[1], j)));
    }
  }
}

TEST(CombineCoprime, Examples) {
  auto r = combine_coprime(P("x1^2"), P("x2^3"), 0);
  EXPECT_EQ(r.w1, P("1"));
  EXPECT_EQ(r.w2, P("x1^2 + x2^3"));
  auto p = combine_coprime(P("x1*x2^2", 3), P("x1^2*x3^3", 3), 1);
  EXPECT_EQ(p.w1, P("x1", 3));
  EXPECT_EQ(p.w1 * p.w2, P("x1*x2^2 + x1^2*x3^3", 3));
  EXPECT_TRUE(is_irreducible(p.w2));
  EXPECT_THROW(combine_coprime(P("x1^3"), P("x2^3"), 0), PreconditionError);
  EXPECT_THROW(combine_coprime(P("x1^2*x2"), P("x2^3"), 0), PreconditionError);
  EXPECT_THROW(combine_coprime(P("x1^2", 1), P("x1", 1), 0), PreconditionError);
}

TEST(BezoutCofactor, Examples) {
  auto a = bezout_cofactor(P("x1^2 + x2"), 1);
  EXPECT_EQ(a.v1, P("2"));
  EXPECT_EQ(a.v2, P("-x1"));
  EXPECT_EQ(a.v, P("2*x2"));
  auto b = bezout_cofactor(P("x1*x2 - 1"), 1);
  EXPECT_EQ(b.v1 * P("x1*x2 - 1") + b.v2 * P("x2"), b.v);
  EXPECT_FALSE(b.v.involves(1));
  auto c = bezout_cofactor(P("x1"), 1);
  EXPECT_EQ(c.v1, P("0"));
  EXPECT_EQ(c.v2, P("1"));
  EXPECT_EQ(c.v, P("1"));
  EXPECT_THROW(bezout_cofactor(P("x2"), 1), PreconditionError);
  EXPECT_THROW(bezout_cofactor(P("x1^2"), 1), PreconditionError);
}

TEST(Theorem, ExampleInstance) {
  auto rep = verify_theorem2(kExample, P("x1"), 4);
  EXPECT_EQ(rep.jacobian, P("x1"));
  EXPECT_TRUE(rep.jac_divisible);
  EXPECT_EQ(rep.verdict, Verdict::EquivalenceConfirmed);
  ASSERT_TRUE(rep.witness_w);
  EXPECT_EQ(*rep.witness_degree, 2);
}

TEST(Theorem, VacuousDirection) {
  auto rep = verify_theorem2(kIdentity, P("x1"), 4);
  EXPECT_FALSE(rep.jac_divisible);
  EXPECT_FALSE(rep.witness_w);
  EXPECT_EQ(rep.verdict, Verdict::EquivalenceConfirmed);
  auto tri = verify_theorem2({P("x1 + x2^2"), P("x2")}, P("x1^2 + x2"), 3);
  EXPECT_EQ(tri.jacobian, P("1"));
  EXPECT_EQ(tri.verdict, Verdict::EquivalenceConfirmed);
}

TEST(Theorem, CapReachedIsReportedHonestly) {
  // the only witnesses for this fold have degree 4
  auto rep = verify_theorem2({P("x1"), P("x2^4 + 4*x1*x2")}, P("x2^3 + x1"), 3);
  EXPECT_TRUE(rep.jac_divisible);
  EXPECT_EQ(rep.verdict, Verdict::InconclusiveCapReached);
  EXPECT_EQ(rep.searched_up_to, 3u);
}

TEST(Keller, JacobianCondition) {
  EXPECT_TRUE(check_jacobian_condition({2, {P("x1"), P("x2 + x1^2")}}).is_keller);
  auto sq = check_jacobian_condition({2, {P("x1^2"), P("x2")}});
  EXPECT_FALSE(sq.is_keller);
  EXPECT_EQ(sq.jacobian, P("2*x1"));
  auto deg = check_jacobian_condition({2, {P("x1"), P("x1")}});
  EXPECT_FALSE(deg.is_keller);
  EXPECT_TRUE(deg.jacobian.is_zero());
  EXPECT_THROW(check_jacobian_condition({2, {P("x1")}}), ArityError);
}

TEST(Keller, SquarefreeAudit) {
  auto rep = squarefree_image_audit({2, {P("x1"), P("x2 + x1^2")}}, {P("x1"), P("x2"), P("x1^2 + x2^2")});
  ASSERT_EQ(rep.audit.size(), 3u);
  for (const auto& e : rep.audit) EXPECT_TRUE(e.image_squarefree);
  EXPECT_TRUE(rep.violations.empty());
  auto bad = squarefree_image_audit({2, {P("x1^2"), P("x2")}}, {P("x1")});
  EXPECT_FALSE(bad.audit[0].image_squarefree);
  EXPECT_TRUE(bad.violations.empty());
  EXPECT_THROW(squarefree_image_audit(Endo::identity(2), {P("x1^2")}), PreconditionError);
  auto id = squarefree_image_audit(Endo::identity(2), irreducible_corpus(2, 25));
  for (const auto& e : id.audit) EXPECT_TRUE(e.image_squarefree);
}

TEST(Keller, NonSquarefreeWitness) {
  auto a = non_squarefree_witness({2, {P("x1^2"), P("x2")}}, 6);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->w, P("x1"));
  EXPECT_EQ(a->g, P("x1"));
  auto b = non_squarefree_witness({2, kExample}, 6);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->g, P("x1"));
  EXPECT_EQ(b->w, P("x1^2 + x2^2"));
  EXPECT_THROW(non_squarefree_witness({2, {P("x1 + x2^2"), P("x2")}}, 6), PreconditionError);
  auto z = non_squarefree_witness({2, {P("x1 + x2"), P("(x1 + x2)^2")}}, 4);
  ASSERT_TRUE(z);
  EXPECT_FALSE(image_is_squarefree(substitute(z->w, {P("x1 + x2"), P("(x1 + x2)^2")})));
}

TEST(Automorphism, Examples) {
  auto tri = is_automorphism({2, {P("x1"), P("x2 + x1^2")}});
  ASSERT_EQ(tri.status, AutomorphismStatus::Automorphism);
  EXPECT_EQ(tri.inverse->images, (std::vector<Poly>{P("x1"), P("x2 - x1^2")}));
  EXPECT_EQ(is_automorphism({2, {P("x1^2"), P("x2")}}).status, AutomorphismStatus::NotSurjective);
  EXPECT_EQ(is_automorphism({2, kExample}).status, AutomorphismStatus::NotSurjective);
  EXPECT_EQ(is_automorphism({2, {P("x1"), P("x1")}}).status, AutomorphismStatus::NotInjective);
  auto id = is_automorphism(Endo::identity(3));
  ASSERT_TRUE(id.inverse);
  EXPECT_EQ(*id.inverse, Endo::identity(3));
}

TEST(Automorphism, RoundTripOnCompositions) {
  Endo a{2, {P("x1"), P("x2 + x1^2")}}, b{2, {P("x1 + x2^3"), P("x2")}}, c{2, {P("x1 + 2*x2 + 1"), P("x2 - 3")}};
  Endo phi = a.compose(b).compose(c);
  auto r = is_automorphism(phi);
  ASSERT_EQ(r.status, AutomorphismStatus::Automorphism);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(substitute(r.inverse->images[i], phi.images), P(i ? "x2" : "x1"));
  EXPECT_TRUE(check_jacobian_condition(phi).is_keller);
}

TEST(Corpus, DeterministicAndIrreducible) {
  auto a = irreducible_corpus(2, 25), b = irreducible_corpus(2, 25);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 25u);
  for (const auto& w : a) EXPECT_TRUE(is_irreducible(w));
  EXPECT_EQ(irreducible_corpus(3, 25).size(), 25u);
}

TEST(SingleFunction, PartialsVersusSquareDivisibility) {
  // f = W(h): g | all partials of f iff g^2 | W(f) for an irreducible univariate W
  const std::vector<std::pair<Poly, Poly>> cases{
      {P("(x1^2 + x2)^2 + 1"), P("x1^2 + x2")},
      {P("(x1*x2 - 1)^3"), P("x1*x2 - 1")},
      {P("x1^2 + x2^2"), P("x1")},
  };
  for (const auto& [f, g] : cases) {
    bool all_partials = divides(g, partial_derivative(f, 1)) && divides(g, partial_derivative(f, 2));
    auto r = find_irreducible_annihilator({{f}, g, 2, 6});
    EXPECT_EQ(all_partials, r.witness.has_value()) << to_string(f);
  }
}

TEST(Endo, ValidationAndComposition) {
  EXPECT_THROW((Endo{0, {}}).validate(), ArityError);
  EXPECT_THROW((Endo{2, {P("x1"), P("x1", 3)}}).validate(), ArityError);
  Endo a{2, {P("x1 + x2"), P("x2")}};
  EXPECT_EQ(a.apply(P("x1*x2")), P("x1*x2 + x2^2"));
  EXPECT_EQ(a.compose(Endo::identity(2)), a);
}

TEST(Catalog, RowDependenceMatchesDivisibility) {
  namespace fs = std::filesystem;
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(KFORGE_CATALOG_DIR)) {
    if (entry.path().extension() != ".inst") continue;
    InstanceFile inst = load_instance(entry.path().string());
    ASSERT_TRUE(inst.g);
    EXPECT_EQ(jacobian_row_dependence(inst.f, *inst.g).has_value(), divides(*inst.g, jacobian(inst.f)))
        << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 20u);
}
