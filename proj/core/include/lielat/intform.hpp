#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lielat/matrix.hpp"

namespace lielat {

/// sign * prod p^e over a finite set of primes.
///
/// Exponents are nonzero but may be negative: determinants of lattices that
/// are not contained in the standard one carry negative powers of the
/// scaling prime.
class FactoredInteger {
 public:
  FactoredInteger() = default;  // the value 1

  /// Factors a nonzero integer: trial division up to 10^6, then Pollard-Brent
  /// rho on what is left. Throws DomainError on 0 and UnsupportedError if a
  /// prime factor does not fit in 64 bits.
  static FactoredInteger factor(const mpz_class& value);
  /// Parses "2^26*3^36", "3^7 * 2^6", "1", "-2^3". Every base is a prime (or
  /// the lone term 1); repeated primes merge and exponent 1 may be omitted;
  /// whitespace is ignored. Throws std::invalid_argument on malformed input.
  static FactoredInteger parse(std::string_view text);

  int sign() const { return sign_; }
  const std::map<std::uint64_t, int>& factors() const { return factors_; }
  int exponent(std::uint64_t prime) const;

  /// Multiplies in p^e (e may be negative).
  void multiply_prime_power(std::uint64_t prime, int exponent);
  FactoredInteger abs() const;
  FactoredInteger operator*(const FactoredInteger& other) const;

  bool integral() const;
  /// Exact value; throws DomainError when some exponent is negative.
  mpz_class value() const;
  mpq_class rational_value() const;

  /// Canonical rendering: primes ascending, "p^e" joined by '*', exponent 1
  /// omitted, "1" for the empty product, leading '-' for negative sign.
  std::string to_string() const;

  bool operator==(const FactoredInteger&) const = default;

 private:
  int sign_ = 1;
  std::map<std::uint64_t, int> factors_;
};

/// Symmetric bilinear form given by a Gram matrix numerator / prime^denominator_exponent.
/// Plain integral forms have denominator_exponent 0.
class IntegerForm {
 public:
  IntegerForm() = default;
  explicit IntegerForm(Matrix<mpz_class> gram, std::uint64_t prime = 0, int denominator_exponent = 0);
  static IntegerForm from_ints(const Matrix<long long>& gram);

  std::size_t dim() const { return numer_.rows(); }
  const Matrix<mpz_class>& numerator() const { return numer_; }
  std::uint64_t prime() const { return prime_; }
  int denominator_exponent() const { return denom_exp_; }
  bool integral() const { return denom_exp_ == 0; }
  bool symmetric() const;

  /// Entry as an exact rational.
  mpq_class entry(std::size_t i, std::size_t j) const;

 private:
  Matrix<mpz_class> numer_;
  std::uint64_t prime_ = 0;
  int denom_exp_ = 0;
};

/// Exact determinant by fraction-free (Bareiss) elimination over big integers.
mpz_class bareiss_determinant(Matrix<mpz_class> m);

/// Determinant of the form, factored. Denominators are cleared and their
/// exponent subtracted, so the scaling prime may carry a negative exponent.
/// Returns std::nullopt for a singular form.
std::optional<FactoredInteger> determinant(const IntegerForm& form);

/// Smith normal form diagonal d_1 | d_2 | ... | d_n, all nonnegative.
/// A singular form yields trailing zeros. Requires an integral form
/// (throws PreconditionError otherwise).
std::vector<mpz_class> elementary_divisors(const IntegerForm& form);
std::vector<mpz_class> smith_diagonal(Matrix<mpz_class> m);

/// Multiplicity of each distinct divisor value, ascending.
std::map<mpz_class, std::size_t> divisor_profile(const std::vector<mpz_class>& divisors);

}  // namespace lielat
