#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schwinger/density_matrix.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/pauli.hpp"

using namespace schwinger;

TEST(PauliTerm, RejectsBadInput) {
  EXPECT_THROW(PauliTerm(1.0, "XA"), ConfigError);
  EXPECT_THROW(PauliTerm(std::nan(""), "XZ"), ConfigError);
  EXPECT_THROW(PauliTerm::from_complex({1.0, 0.5}, "Z"), ConfigError);
  EXPECT_NO_THROW(PauliTerm::from_complex({1.0, 0.0}, "Z"));
  PauliSum s(2);
  EXPECT_THROW(s.add(PauliTerm(1.0, "XYZ")), DimensionError);
}

TEST(PauliTerm, OneBasedAccess) {
  const PauliTerm t = PauliTerm::pair(4, 1, 'X', 3, 'Z', 0.5);
  EXPECT_EQ(t.ops(), "XIZI");
  EXPECT_EQ(t.at(1), 'X');
  EXPECT_EQ(t.at(3), 'Z');
  EXPECT_FALSE(t.is_identity());
  EXPECT_TRUE(PauliTerm::identity(3, 2.0).is_identity());
}

TEST(Canonicalize, MergesDuplicates) {
  PauliSum s(1, {PauliTerm(2.0, "Z"), PauliTerm(3.0, "Z")});
  const PauliSum c = canonicalize(s);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_DOUBLE_EQ(c.terms()[0].coefficient(), 5.0);
}

TEST(Canonicalize, CancelsToEmpty) {
  PauliSum s(1, {PauliTerm(1.0, "X"), PauliTerm(-1.0, "X")});
  EXPECT_TRUE(canonicalize(s).empty());
}

TEST(Canonicalize, LexicographicOrder) {
  PauliSum s(2, {PauliTerm(1.0, "ZZ"), PauliTerm(1.0, "XI")});
  const PauliSum c = canonicalize(s);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.terms()[0].ops(), "XI");
  EXPECT_EQ(c.terms()[1].ops(), "ZZ");
}

TEST(ToDense, SpecExamples) {
  Matrix z = to_dense(PauliSum(1, {PauliTerm(1.0, "Z")}));
  Matrix expect_z(2, 2);
  expect_z << 1, 0, 0, -1;
  EXPECT_LT(oracle::max_abs(z - expect_z), 1e-15);

  Matrix xx = to_dense(PauliSum(2, {PauliTerm(1.0, "XX")}));
  Matrix anti = Matrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) anti(k, 3 - k) = 1.0;
  EXPECT_LT(oracle::max_abs(xx - anti), 1e-15);

  Matrix zz = to_dense(PauliSum(2, {PauliTerm(0.5, "ZI"), PauliTerm(0.5, "IZ")}));
  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 1, 0, 0, -1;
  EXPECT_LT(oracle::max_abs(zz - diag), 1e-15);
}

TEST(ToDense, SizeLimit) {
  PauliSum s(5, {PauliTerm(1.0, "ZZZZZ")});
  EXPECT_THROW(to_dense(s, 4), SizeLimitError);
}

TEST(ToDense, MatchesKroneckerOracleAndIsHermitian) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 4;
    const PauliSum s = oracle::random_sum(n, 1 + trial % 9, rng);
    const Matrix d = to_dense(s);
    EXPECT_LT(oracle::max_abs(d - oracle::dense(s)), 1e-12);
    EXPECT_LT(oracle::max_abs(d - d.adjoint()), 1e-12);
    EXPECT_LT(oracle::max_abs(to_dense(canonicalize(s)) - d), 1e-12);
  }
}

TEST(Expectation, SpecExamples) {
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  EXPECT_NEAR(expectation(PauliSum(2, {PauliTerm(1.0, "ZI")}), rho), 1.0, 1e-15);

  std::mt19937_64 rng(3);
  const auto mixed = DensityMatrix::maximally_mixed(3);
  for (int k = 0; k < 20; ++k) {
    PauliSum s = oracle::random_sum(3, 6, rng);
    PauliSum traceless(3);
    for (const auto& t : s.terms()) {
      if (!t.is_identity()) traceless.add(t);
    }
    EXPECT_NEAR(expectation(traceless, mixed), 0.0, 1e-14);
  }
}

TEST(Expectation, MatchesDenseTraceOnRandomStates) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const PauliSum s = oracle::random_sum(n, 7, rng);
    const Matrix rho = oracle::random_density(n, rng);
    const double want = (oracle::dense(s) * rho).trace().real();
    EXPECT_NEAR(expectation(s, rho), want, 1e-10);
  }
}

TEST(TermDump, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const PauliSum s = canonicalize(oracle::random_sum(3, 8, rng));
    const PauliSum back = parse_terms(to_text(s));
    ASSERT_EQ(back.size(), s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
      EXPECT_EQ(back.terms()[k].ops(), s.terms()[k].ops());
      EXPECT_EQ(back.terms()[k].coefficient(), s.terms()[k].coefficient());
    }
  }
}

TEST(TermDump, Format) {
  EXPECT_EQ(to_text(PauliSum(6, {PauliTerm(0.5, "ZZIIII")})), "0.5 ZZIIII\n");
  EXPECT_THROW(parse_terms("0.5 ZQ\n"), ConfigError);
  EXPECT_THROW(parse_terms("abc ZZ\n"), ConfigError);
}
