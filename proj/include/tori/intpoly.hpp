#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tori/error.hpp"

namespace tori {

/// Dense univariate polynomial over Z, coefficients in ascending order.
/// The zero polynomial has an empty coefficient vector and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> ascending);
  IntPoly(std::initializer_list<long> ascending);

  static IntPoly monomial(const mpz_class& c, int k);
  static IntPoly constant(const mpz_class& c) { return monomial(c, 0); }
  static IntPoly x() { return monomial(1, 1); }
  /// Parses "1,3,5,5,5,3,1" (ascending). Accepts the unicode minus sign.
  static IntPoly parse(std::string_view text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& operator[](int i) const;
  const mpz_class& leading() const;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  mpz_class content() const;
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  /// t^deg p(1/t).
  IntPoly reversed() const;
  /// p(-t).
  IntPoly negated_variable() const;
  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;
  /// Sign of p at a rational point, computed without fractions.
  int sign_at(const mpq_class& x) const;
  IntPoly compose(const IntPoly& q) const;

  std::string to_string() const;
  std::string pretty(char var = 't') const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& k);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator-(const IntPoly& a);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& k) { return a *= k; }
  friend IntPoly operator*(const mpz_class& k, IntPoly a) { return a *= k; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  /// Order by degree, then lexicographically on ascending coefficients.
  friend bool operator<(const IntPoly& a, const IntPoly& b);

 private:
  void trim();
  std::vector<mpz_class> c_;
};

IntPoly pow(const IntPoly& p, unsigned e);

/// Polynomial with rational coefficients, stored as numerator / denominator
/// with gcd(content(numerator), denominator) = 1 and denominator > 0.
class RatPoly {
 public:
  RatPoly() : den_(1) {}
  RatPoly(IntPoly num, mpz_class den = 1);
  explicit RatPoly(const std::vector<mpq_class>& ascending);

  const IntPoly& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  int degree() const { return num_.degree(); }
  bool is_zero() const { return num_.is_zero(); }
  mpq_class operator[](int i) const { return mpq_class(num_[i], den_); }
  std::vector<mpq_class> coeffs() const;

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend bool operator==(const RatPoly& a, const RatPoly& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  IntPoly num_;
  mpz_class den_;
};

/// Quotient and remainder over Q.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

/// Exact division over Z; throws InvariantViolation if b does not divide a.
IntPoly divexact(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);
/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly prem(const IntPoly& a, const IntPoly& b);
/// Primitive gcd with positive leading coefficient (times gcd of contents).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);

mpz_class resultant(const IntPoly& a, const IntPoly& b);
mpz_class discriminant(const IntPoly& p);

/// Number of distinct real roots in the open interval (lo, hi).
int sturm_count(const IntPoly& p, const mpq_class& lo, const mpq_class& hi);
/// Number of distinct real roots.
int real_root_count(const IntPoly& p);
/// Integer B with every complex root of magnitude < B.
mpz_class cauchy_bound(const IntPoly& p);

bool is_reciprocal(const IntPoly& p);
/// For reciprocal p of degree 2k, the q of degree k with p(t) = t^k q(t + 1/t).
IntPoly trace_polynomial(const IntPoly& p);
/// Inverse of trace_polynomial: t^k q(t + 1/t).
IntPoly from_trace(const IntPoly& q);

struct FactorList {
  mpq_class unit{1};
  std::vector<std::pair<IntPoly, int>> factors;

  IntPoly expand() const;
  std::vector<int> degree_multiset() const;
  bool is_irreducible() const { return factors.size() == 1 && factors[0].second == 1; }
};

/// Complete factorization over Z (Zassenhaus). Factors are primitive with
/// positive leading coefficient, sorted by (degree, coefficients).
FactorList factor_over_z(const IntPoly& p);
bool is_irreducible(const IntPoly& p);

struct BezoutCertificate {
  IntPoly h1, h2;
  mpz_class n;
};

/// Integers polynomials h1, h2 and a nonzero integer N with F1 h1 + F2 h2 = N.
BezoutCertificate ext_gcd_rational(const IntPoly& f1, const IntPoly& f2);

/// Polynomial whose roots are the squares of the roots of p.
IntPoly graeffe(const IntPoly& p);

}  // namespace tori
