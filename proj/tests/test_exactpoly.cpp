#include "gdconf/exactpoly/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace gdconf::exactpoly;

namespace {

const VarSet V{"d", "lambda", "mu", "x"};

FormalPoly var(std::string_view n) { return FormalPoly::variable(V, n); }
FormalPoly c(long v) { return FormalPoly::constant(V, Rational(v)); }

FormalPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2), nterms(0, 4);
  FormalPoly p(V);
  int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Exponent e{};
    for (std::size_t i = 0; i < 4; ++i) e[i] = static_cast<std::uint16_t>(ex(rng));
    p += FormalPoly::monomial(V, e, Rational(coef(rng)));
  }
  return p;
}

}  // namespace

TEST(Rational, ParsesLiteralsInLowestTerms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("0/7").get_den(), 1);
  EXPECT_EQ(parse_rational(" 12 "), Rational(12));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Rational, NoOverflow) {
  Rational r = 1;
  for (int i = 0; i < 200; ++i) r *= Rational(3, 2);
  Integer three, two;
  mpz_ui_pow_ui(three.get_mpz_t(), 3, 200);
  mpz_ui_pow_ui(two.get_mpz_t(), 2, 200);
  EXPECT_EQ(r.get_num(), three);
  EXPECT_EQ(r.get_den(), two);
}

TEST(PolyMul, DifferenceOfSquares) {
  auto p = (var("d") + var("lambda")) * (var("d") - var("lambda"));
  EXPECT_EQ(p, var("d").pow(2) - var("lambda").pow(2));
}

TEST(PolyMul, IdentityAndHandExpansion) {
  auto p = var("x") * c(3) + var("mu");
  EXPECT_EQ(p * c(1), p);
  EXPECT_EQ((var("x") + var("lambda")) * var("x"), var("x").pow(2) + var("lambda") * var("x"));
}

TEST(PolyMul, VariableSetMismatchThrows) {
  VarSet other{"d", "lambda"};
  EXPECT_THROW(poly_mul(var("d"), FormalPoly::variable(other, "d")), VariableError);
}

TEST(PolySubstitute, SkewSubstitution) {
  auto minus_d_minus_l = -var("d") - var("lambda");
  auto p = var("d") + c(2) * var("lambda");
  EXPECT_EQ(poly_substitute(p, "lambda", minus_d_minus_l), -var("d") - c(2) * var("lambda"));
}

TEST(PolySubstitute, IdentityAndBinomial) {
  auto p = var("x").pow(3) * var("lambda") + c(5);
  EXPECT_EQ(poly_substitute(p, "lambda", var("lambda")), p);
  EXPECT_EQ(poly_substitute(var("x").pow(2), "x", var("x") + var("lambda")),
            var("x").pow(2) + c(2) * var("lambda") * var("x") + var("lambda").pow(2));
}

TEST(PolySubstitute, UnknownVariableThrows) { EXPECT_THROW(poly_substitute(var("d"), "nu", var("d")), VariableError); }

TEST(PolyProperties, RingLawsAndSubstitutionHomomorphism) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = random_poly(rng), q = random_poly(rng), r = random_poly(rng), e = random_poly(rng);
    EXPECT_EQ(p * (q * r), (p * q) * r);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(poly_substitute(p * q, "lambda", e), poly_substitute(p, "lambda", e) * poly_substitute(q, "lambda", e));
  }
}

TEST(PolyPrinting, DeterministicOrder) {
  auto p = var("d") + c(2) * var("lambda") - Rational(1, 2) * var("x").pow(2);
  EXPECT_EQ(p.to_string(), "d + 2*lambda - 1/2*x^2");
  EXPECT_EQ(FormalPoly(V).to_string(), "0");
}

TEST(Linsolve, TrivialSystems) {
  // a + b = 0, a - b = 0 as constant VecPolys of dimension 1
  VarSet W{"lambda"};
  auto k = [&](long v) { return VecPoly::unit(W, 1, 0, FormalPoly::constant(W, Rational(v))); };
  std::vector<LinearEquation> sys{{k(1), k(1)}, {k(1), k(-1)}};
  EXPECT_TRUE(vecpoly_linsolve(sys, 2).empty());
  EXPECT_EQ(vecpoly_linsolve(std::span<const LinearEquation>{}, 2).size(), 2u);
}

TEST(Linsolve, PolynomialCoefficientsSplitByMonomial) {
  // a*lambda + b*lambda = 0 and a + c*lambda = 0 -> only (0,0,0)
  VarSet W{"lambda"};
  auto L = FormalPoly::variable(W, "lambda");
  auto one = FormalPoly::constant(W, Rational(1));
  auto v = [&](const FormalPoly& p) { return VecPoly::unit(W, 1, 0, p); };
  std::vector<LinearEquation> sys{{v(L), v(L), VecPoly(W, 1)}, {v(one), VecPoly(W, 1), v(L)}};
  EXPECT_TRUE(vecpoly_linsolve(sys, 3).empty());
}

TEST(Kernel, RankOneMatrix) {
  auto ker = kernel({{1, 2}, {2, 4}}, 2);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0], (RationalVector{2, -1}));
}

TEST(RowEchelon, ReduceAndMembership) {
  RowEchelon ech(3);
  EXPECT_TRUE(ech.insert(std::map<std::size_t, Rational>{{0, 2}, {1, 4}}));
  EXPECT_TRUE(ech.insert(std::map<std::size_t, Rational>{{1, 1}, {2, Rational(1, 3)}}));
  EXPECT_FALSE(ech.insert(std::map<std::size_t, Rational>{{0, 1}, {1, 3}, {2, Rational(1, 3)}}));
  EXPECT_TRUE(ech.contains({{0, 1}, {1, 2}}));
  auto r = ech.reduce({{0, 1}});
  // e0 = (e0 + 2e1) - 2(e1 + e2/3) + 2/3 e2
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r.at(2), Rational(2, 3));
  EXPECT_EQ(ech.free_columns(), std::vector<std::size_t>{2});
}

TEST(Kernel, RandomMatricesAnnihilated) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RationalVector> M(3, RationalVector(5));
    for (auto& r : M)
      for (auto& q : r) q = v(rng);
    auto ker = kernel(M, 5);
    EXPECT_EQ(ker.size() + rank(M), 5u);
    for (const auto& k : ker)
      for (const auto& r : M) {
        Rational s = 0;
        for (std::size_t i = 0; i < 5; ++i) s += r[i] * k[i];
        EXPECT_EQ(s, 0);
      }
  }
}
