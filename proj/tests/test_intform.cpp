#include <gtest/gtest.h>

#include <random>

#include "lielat/errors.hpp"
#include "lielat/intform.hpp"
#include "oracles.hpp"

using namespace lielat;

namespace {

Matrix<mpz_class> to_matrix(const std::vector<std::vector<mpz_class>>& v) {
  Matrix<mpz_class> m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i][j];
  return m;
}

std::vector<std::vector<mpz_class>> random_symmetric(std::mt19937_64& gen, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = dist(gen);
  return m;
}

}  // namespace

TEST(FactoredInteger, FactorAndRender) {
  EXPECT_EQ(FactoredInteger::factor(1).to_string(), "1");
  EXPECT_EQ(FactoredInteger::factor(-12).to_string(), "-2^2*3");
  EXPECT_EQ(FactoredInteger::factor(mpz_class("1606938044258990275541962092341162602522202993782792835301376")).to_string(),
            "2^200");
  EXPECT_EQ(FactoredInteger::factor(1000003).to_string(), "1000003");
  EXPECT_THROW(FactoredInteger::factor(0), DomainError);
  const FactoredInteger f = FactoredInteger::factor(mpz_class(2) * 2 * 3 * 1000003);
  EXPECT_EQ(f.exponent(2), 2);
  EXPECT_EQ(f.exponent(1000003), 1);
  EXPECT_EQ(f.exponent(5), 0);
}

TEST(FactoredInteger, FactorsBeyondTrialDivision) {
  // Two primes above the trial-division bound.
  const mpz_class p("1000000007"), q("998244353");
  const FactoredInteger f = FactoredInteger::factor(p * q * p * 12);
  EXPECT_EQ(f.exponent(1000000007), 2);
  EXPECT_EQ(f.exponent(998244353), 1);
  EXPECT_EQ(f.value(), p * q * p * 12);
  EXPECT_EQ(FactoredInteger::factor(mpz_class("151411071860395537")).value(), mpz_class("151411071860395537"));
  // A prime that does not fit in 64 bits cannot be a key.
  EXPECT_THROW(FactoredInteger::factor(mpz_class("340282366920938463463374607431768211507")), UnsupportedError);
}

TEST(FactoredInteger, ParseGrammar) {
  EXPECT_EQ(FactoredInteger::parse("2^26*3^36").to_string(), "2^26*3^36");
  EXPECT_EQ(FactoredInteger::parse(" 3^7 * 2^6 ").to_string(), "2^6*3^7");
  EXPECT_EQ(FactoredInteger::parse("2*2*3").to_string(), "2^2*3");
  EXPECT_EQ(FactoredInteger::parse("1"), FactoredInteger());
  EXPECT_EQ(FactoredInteger::parse("-2^3").sign(), -1);
  EXPECT_EQ(FactoredInteger::parse("2^200").value(), mpz_class(1) << 200);
  for (const char* bad : {"", "2^", "^3", "2^x", "4^2", "6", "1*2", "2**3", "abc", "2^3*", "0", "-"})
    EXPECT_THROW(FactoredInteger::parse(bad), std::invalid_argument) << bad;
}

TEST(FactoredInteger, RoundTripsThroughText) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    long v = dist(gen);
    if (v == 0) continue;
    const FactoredInteger f = FactoredInteger::factor(v);
    EXPECT_EQ(FactoredInteger::parse(f.to_string()), f);
    EXPECT_EQ(f.value(), v);
    // Primes strictly increasing, exponents nonzero.
    std::uint64_t last = 0;
    for (const auto& [p, e] : f.factors()) {
      EXPECT_GT(p, last);
      EXPECT_NE(e, 0);
      last = p;
    }
  }
}

TEST(FactoredInteger, NegativeExponents) {
  FactoredInteger f = FactoredInteger::parse("2^3*3");
  f.multiply_prime_power(2, -5);
  EXPECT_EQ(f.exponent(2), -2);
  EXPECT_FALSE(f.integral());
  EXPECT_EQ(f.rational_value(), mpq_class(3, 4));
  EXPECT_THROW(f.value(), DomainError);
  f.multiply_prime_power(2, 2);
  EXPECT_TRUE(f.integral());
  EXPECT_EQ(f.to_string(), "3");
  EXPECT_EQ((FactoredInteger::parse("2^3") * FactoredInteger::parse("-2*5")).to_string(), "-2^4*5");
}

TEST(IntegerForm, IdentityAndDiagonal) {
  Matrix<long long> id(2, 2);
  id(0, 0) = id(1, 1) = 1;
  EXPECT_EQ(determinant(IntegerForm::from_ints(id))->to_string(), "1");
  Matrix<long long> d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 4;
  const auto div = elementary_divisors(IntegerForm::from_ints(d));
  EXPECT_EQ(div, (std::vector<mpz_class>{2, 4}));
  Matrix<long long> d2(2, 2);
  d2(0, 0) = 4;
  d2(1, 1) = 6;
  EXPECT_EQ(elementary_divisors(IntegerForm::from_ints(d2)), (std::vector<mpz_class>{2, 12}));
}

TEST(IntegerForm, SingularIsReportedNotThrown) {
  Matrix<long long> m(3, 3, 1);
  const IntegerForm f = IntegerForm::from_ints(m);
  EXPECT_FALSE(determinant(f).has_value());
  const auto div = elementary_divisors(f);
  EXPECT_EQ(div, (std::vector<mpz_class>{1, 0, 0}));
}

TEST(IntegerForm, NonIntegralRefusesDivisors) {
  Matrix<mpz_class> m(1, 1, 1);
  const IntegerForm f(m, 2, 1);
  EXPECT_THROW(elementary_divisors(f), PreconditionError);
  // det of [[1/2]] = 2^-1.
  EXPECT_EQ(determinant(f)->exponent(2), -1);
  EXPECT_EQ(f.entry(0, 0), mpq_class(1, 2));
}

TEST(IntegerForm, DenominatorsClearedInDeterminant) {
  // (1/p) * [[2, 1], [1, 2]] at p = 3: det = 3 / 9.
  Matrix<mpz_class> m(2, 2);
  m(0, 0) = m(1, 1) = 2;
  m(0, 1) = m(1, 0) = 1;
  const auto d = determinant(IntegerForm(m, 3, 1));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->exponent(3), -1);
  EXPECT_EQ(d->rational_value(), mpq_class(1, 3));
}

TEST(IntegerForm, SymmetryCheck) {
  Matrix<long long> m(2, 2);
  m(0, 1) = 1;
  EXPECT_FALSE(IntegerForm::from_ints(m).symmetric());
  m(1, 0) = 1;
  EXPECT_TRUE(IntegerForm::from_ints(m).symmetric());
}

// Property: fraction-free elimination agrees with cofactor expansion.
TEST(IntegerFormProperty, BareissMatchesCofactorExpansion) {
  std::mt19937_64 gen(0xdec0de);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto m = random_symmetric(gen, n, -6, 6);
    EXPECT_EQ(bareiss_determinant(to_matrix(m)), oracle::cofactor_det(m)) << "trial " << trial;
  }
}

// Property: Smith diagonal agrees with the gcd-of-minors characterization,
// divides successively, and multiplies to |det|.
TEST(IntegerFormProperty, SmithMatchesMinorGcds) {
  std::mt19937_64 gen(0x5317);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    auto m = random_symmetric(gen, n, -9, 9);
    // Bias towards non-trivial divisors.
    if (trial % 3 == 0)
      for (auto& row : m)
        for (auto& x : row) x *= 2;
    const auto got = smith_diagonal(to_matrix(m));
    EXPECT_EQ(got, oracle::smith_by_minors(m)) << "trial " << trial;
    for (std::size_t k = 1; k < got.size(); ++k)
      if (got[k - 1] != 0) { EXPECT_EQ(got[k] % got[k - 1], 0); }
    const mpz_class det = oracle::cofactor_det(m);
    mpz_class prod = 1;
    for (const auto& d : got) prod *= d;
    EXPECT_EQ(prod, abs(det));
  }
}

TEST(IntegerFormProperty, DeterminantEqualsDivisorProductOnLargerForms) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + trial;
    const auto m = random_symmetric(gen, n, -3, 3);
    const IntegerForm f(to_matrix(m));
    const auto det = determinant(f);
    const auto div = elementary_divisors(f);
    if (!det) {
      EXPECT_EQ(div.back(), 0);
      continue;
    }
    mpz_class prod = 1;
    for (const auto& d : div) prod *= d;
    EXPECT_EQ(prod, abs(bareiss_determinant(to_matrix(m))));
    EXPECT_EQ(det->abs().value(), prod);
  }
}

TEST(IntegerFormProperty, PositiveDefiniteHasPositiveDeterminant) {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    // B^T B + I is positive definite.
    const std::size_t n = 2 + trial % 6;
    std::vector<std::vector<mpz_class>> b(n, std::vector<mpz_class>(n)), g(n, std::vector<mpz_class>(n, 0));
    for (auto& row : b)
      for (auto& x : row) x = dist(gen);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) g[i][j] += b[k][i] * b[k][j];
        if (i == j) g[i][j] += 1;
      }
    const IntegerForm f(to_matrix(g));
    EXPECT_EQ(determinant(f)->sign(), 1);
    for (const auto& d : elementary_divisors(f)) EXPECT_GT(d, 0);
  }
}

TEST(IntegerForm, DivisorProfile) {
  const auto prof = divisor_profile({1, 1, 2, 2, 2, 4});
  EXPECT_EQ(prof.at(1), 2u);
  EXPECT_EQ(prof.at(2), 3u);
  EXPECT_EQ(prof.at(4), 1u);
}
