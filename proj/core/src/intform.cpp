#include "lielat/intform.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lielat/errors.hpp"

namespace lielat {

// ---------------------------------------------------------------------------
// FactoredInteger

namespace {

bool probably_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

// Brent's variant of Pollard rho. n is odd, composite and has no factor
// below the trial-division bound.
mpz_class pollard_brent(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, ys, q = 1, g = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class r = v * v + c;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
      return r;
    };
    constexpr unsigned long kBlock = 128;
    for (unsigned long r = 1; g == 1; r *= 2) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      for (unsigned long k = 0; k < r && g == 1; k += kBlock) {
        ys = y;
        for (unsigned long i = 0; i < std::min(kBlock, r - k); ++i) {
          y = f(y);
          q = q * ::abs(mpz_class(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {  // block overshot: back up one step at a time
      do {
        ys = f(ys);
        const mpz_class diff = ::abs(mpz_class(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const mpz_class& n, std::map<std::uint64_t, int>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    if (!n.fits_ulong_p()) throw UnsupportedError("prime factor wider than 64 bits: " + n.get_str());
    out[n.get_ui()] += 1;
    return;
  }
  const mpz_class d = pollard_brent(n);
  split(d, out);
  split(mpz_class(n / d), out);
}

}  // namespace

FactoredInteger FactoredInteger::factor(const mpz_class& value) {
  if (value == 0) throw DomainError("cannot factor 0");
  FactoredInteger out;
  out.sign_ = value < 0 ? -1 : 1;
  mpz_class rest = ::abs(value);
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long p = 2; p <= kTrialLimit && mpz_class(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.factors_[p] = e;
  }
  split(rest, out.factors_);
  return out;
}

FactoredInteger FactoredInteger::parse(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto fail = [&]() { throw std::invalid_argument("cannot parse factored integer '" + std::string(text) + "'"); };
  if (s.empty()) fail();
  FactoredInteger out;
  std::size_t pos = 0;
  if (s[0] == '-') { out.sign_ = -1; pos = 1; }
  if (pos >= s.size()) fail();
  while (pos <= s.size()) {
    std::size_t end = s.find('*', pos);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) fail();
    const std::size_t caret = term.find('^');
    const std::string base = term.substr(0, caret);
    std::string exp = caret == std::string::npos ? "1" : term.substr(caret + 1);
    auto all_digits = [](const std::string& t, bool allow_minus) {
      if (t.empty()) return false;
      std::size_t i = (allow_minus && t[0] == '-') ? 1 : 0;
      if (i >= t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (!all_digits(base, false) || !all_digits(exp, true) || exp.size() > 9) fail();
    const mpz_class b(base);
    const int e = std::stoi(exp);
    if (b == 1) {
      if (s.size() - (out.sign_ < 0 ? 1 : 0) != term.size()) fail();  // "1" only as the whole product
    } else {
      if (!b.fits_ulong_p() || !probably_prime(b)) fail();
      out.multiply_prime_power(b.get_ui(), e);
    }
    pos = end + 1;
  }
  return out;
}

int FactoredInteger::exponent(std::uint64_t prime) const {
  auto it = factors_.find(prime);
  return it == factors_.end() ? 0 : it->second;
}

void FactoredInteger::multiply_prime_power(std::uint64_t prime, int exponent) {
  if (exponent == 0) return;
  int& e = factors_[prime];
  e += exponent;
  if (e == 0) factors_.erase(prime);
}

FactoredInteger FactoredInteger::abs() const {
  FactoredInteger out = *this;
  out.sign_ = 1;
  return out;
}

FactoredInteger FactoredInteger::operator*(const FactoredInteger& other) const {
  FactoredInteger out = *this;
  out.sign_ *= other.sign_;
  for (const auto& [p, e] : other.factors_) out.multiply_prime_power(p, e);
  return out;
}

bool FactoredInteger::integral() const {
  for (const auto& [p, e] : factors_)
    if (e < 0) return false;
  return true;
}

mpz_class FactoredInteger::value() const {
  if (!integral()) throw DomainError("factored value " + to_string() + " is not an integer");
  mpz_class v = sign_;
  for (const auto& [p, e] : factors_) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
    v *= pe;
  }
  return v;
}

mpq_class FactoredInteger::rational_value() const {
  mpz_class num = sign_, den = 1;
  for (const auto& [p, e] : factors_) {
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
    (e < 0 ? den : num) *= pe;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string FactoredInteger::to_string() const {
  std::ostringstream out;
  if (sign_ < 0) out << '-';
  if (factors_.empty()) {
    out << '1';
    return out.str();
  }
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) out << '*';
    out << p;
    if (e != 1) out << '^' << e;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// IntegerForm

IntegerForm::IntegerForm(Matrix<mpz_class> gram, std::uint64_t prime, int denominator_exponent)
    : numer_(std::move(gram)), prime_(prime), denom_exp_(denominator_exponent) {
  if (numer_.rows() != numer_.cols()) throw DimensionMismatch("Gram matrix must be square");
  if (denom_exp_ < 0) throw std::invalid_argument("denominator exponent must be nonnegative");
  if (denom_exp_ > 0 && prime_ < 2) throw std::invalid_argument("a scaled form needs a prime");
}

IntegerForm IntegerForm::from_ints(const Matrix<long long>& gram) {
  Matrix<mpz_class> m(gram.rows(), gram.cols());
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) m(i, j) = static_cast<long>(gram(i, j));
  return IntegerForm(std::move(m));
}

bool IntegerForm::symmetric() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (numer_(i, j) != numer_(j, i)) return false;
  return true;
}

mpq_class IntegerForm::entry(std::size_t i, std::size_t j) const {
  mpz_class den = 1;
  if (denom_exp_ > 0) mpz_ui_pow_ui(den.get_mpz_t(), prime_, static_cast<unsigned long>(denom_exp_));
  mpq_class q(numer_(i, j), den);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------------------
// Determinant

mpz_class bareiss_determinant(Matrix<mpz_class> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(piv, k);
      sign = -sign;
    }
    const mpz_class pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const mpz_class lead = a(i, k);
      if (lead == 0) {
        for (std::size_t j = k + 1; j < n; ++j) {
          mpz_class& x = a(i, j);
          if (x == 0) continue;
          x *= pivot;
          mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        }
      } else {
        for (std::size_t j = k + 1; j < n; ++j) {
          mpz_class& x = a(i, j);
          x *= pivot;
          if (a(k, j) != 0) {
            tmp = lead * a(k, j);
            x -= tmp;
          }
          mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        }
      }
      a(i, k) = 0;
    }
    prev = pivot;
  }
  return sign * a(n - 1, n - 1);
}

std::optional<FactoredInteger> determinant(const IntegerForm& form) {
  const mpz_class d = bareiss_determinant(form.numerator());
  if (d == 0) return std::nullopt;
  FactoredInteger f = FactoredInteger::factor(d);
  if (form.denominator_exponent() > 0)
    f.multiply_prime_power(form.prime(), -form.denominator_exponent() * static_cast<int>(form.dim()));
  return f;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void row_axpy(Matrix<mpz_class>& a, std::size_t target, std::size_t source, const mpz_class& q,
              const std::vector<std::size_t>& cols) {
  for (std::size_t j : cols) mpz_submul(a(target, j).get_mpz_t(), q.get_mpz_t(), a(source, j).get_mpz_t());
}

void col_axpy(Matrix<mpz_class>& a, std::size_t target, std::size_t source, const mpz_class& q,
              const std::vector<std::size_t>& rows) {
  for (std::size_t i : rows) mpz_submul(a(i, target).get_mpz_t(), q.get_mpz_t(), a(i, source).get_mpz_t());
}

}  // namespace

std::vector<mpz_class> smith_diagonal(Matrix<mpz_class> a) {
  const std::size_t n = a.rows(), m = a.cols();
  const std::size_t k = std::min(n, m);
  std::vector<mpz_class> diag;
  diag.reserve(k);
  mpz_class q;
  for (std::size_t t = 0; t < k; ++t) {
    bool found_any = false;
    while (true) {
      // Pivot: smallest nonzero entry of the trailing block.
      std::size_t pi = 0, pj = 0;
      bool have = false;
      for (std::size_t i = t; i < n && !(have && abs(a(pi, pj)) == 1); ++i)
        for (std::size_t j = t; j < m; ++j) {
          if (a(i, j) == 0) continue;
          if (!have || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
            have = true;
            if (abs(a(i, j)) == 1) break;
          }
        }
      if (!have) break;
      found_any = true;
      a.swap_rows(t, pi);
      a.swap_cols(t, pj);

      bool clean = true;
      std::vector<std::size_t> cols, rows;
      for (std::size_t j = t; j < m; ++j)
        if (a(t, j) != 0) cols.push_back(j);
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_axpy(a, i, t, q, cols);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t i = t; i < n; ++i)
        if (a(i, t) != 0) rows.push_back(i);
      for (std::size_t j = t + 1; j < m; ++j) {
        if (a(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_axpy(a, j, t, q, rows);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column t are clear; enforce divisibility of the remainder.
      bool divides = true;
      if (abs(a(t, t)) != 1) {
        for (std::size_t i = t + 1; i < n && divides; ++i)
          for (std::size_t j = t + 1; j < m; ++j)
            if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
              for (std::size_t c = t; c < m; ++c) a(t, c) += a(i, c);
              divides = false;
              break;
            }
      }
      if (divides) break;
    }
    if (!found_any) {
      diag.resize(k, 0);
      return diag;
    }
    diag.push_back(abs(a(t, t)));
  }
  return diag;
}

std::vector<mpz_class> elementary_divisors(const IntegerForm& form) {
  if (!form.integral())
    throw PreconditionError("elementary divisors need an integral form; clear denominators first");
  return smith_diagonal(form.numerator());
}

std::map<mpz_class, std::size_t> divisor_profile(const std::vector<mpz_class>& divisors) {
  std::map<mpz_class, std::size_t> out;
  for (const mpz_class& d : divisors) ++out[d];
  return out;
}

}  // namespace lielat
