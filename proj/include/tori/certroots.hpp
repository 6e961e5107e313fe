#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tori/intpoly.hpp"

namespace tori {

// ------------------------------------------------------------ dyadics

/// 2^e as an exact rational.
mpq_class pow2(long e);
/// floor(log2 q) for q > 0.
long floor_log2(const mpq_class& q);
/// Smallest dyadic with `bits` significant bits that is >= q (q >= 0).
mpq_class dyadic_upper(const mpq_class& q, int bits = 64);
/// Largest dyadic with `bits` significant bits that is <= q; 0 for q <= 0.
mpq_class dyadic_lower(const mpq_class& q, int bits);
/// Nearest dyadic with `bits` significant bits.
mpq_class dyadic_nearest(const mpq_class& q, int bits);
/// Dyadic bounds on sqrt(q) for q >= 0.
mpq_class sqrt_upper(const mpq_class& q);
mpq_class sqrt_lower(const mpq_class& q);
/// Decimal rendering with the given number of significant digits.
std::string decimal(const mpq_class& q, int digits = 20);

struct RealInterval {
  mpq_class lo, hi;

  mpq_class width() const { return hi - lo; }
  mpq_class mid() const { return (lo + hi) / 2; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
  bool overlaps(const RealInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  std::string str(int digits = 20) const;
};

/// Closed disc with dyadic center and dyadic radius.
struct ComplexBall {
  mpq_class re, im, rad;

  static ComplexBall exact(const mpq_class& re, const mpq_class& im = 0);
  bool intersects(const ComplexBall& o) const;
  /// Every point of o lies in *this.
  bool contains(const ComplexBall& o) const;
  bool may_contain_zero() const;
  ComplexBall conj() const { return ComplexBall{re, -im, rad}; }
  /// Enclosure of |z| over the disc.
  RealInterval abs() const;
  std::string str(int digits = 20) const;
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall mul(const ComplexBall& a, const ComplexBall& b, int bits);
ComplexBall scale(const ComplexBall& a, const mpz_class& k);
/// Rounds the center to `bits` significant bits, widening the radius.
ComplexBall round_ball(const ComplexBall& a, int bits);
/// Enclosure of {1/z}; requires 0 outside the disc.
ComplexBall inverse_enclosure(const ComplexBall& a);
/// Enclosure of p over the disc.
ComplexBall eval(const IntPoly& p, const ComplexBall& z, int bits);
/// Ball coefficients (ascending) of prod (t - r_i).
std::vector<ComplexBall> poly_from_roots(const std::vector<ComplexBall>& roots, int bits);
/// The unique integer polynomial inside the coefficient balls, if every ball
/// has radius below 1/2 and contains an integer on the real axis.
std::optional<IntPoly> round_integer_poly(const std::vector<ComplexBall>& coeffs);

// ------------------------------------------------------------ root systems

enum class ModulusClass { Gt1, Eq1, Lt1 };
const char* modulus_name(ModulusClass m);

/// Certified isolation of all complex roots of a squarefree integer polynomial.
/// Each ball holds exactly one root; the balls are pairwise disjoint.
struct RootSystem {
  IntPoly poly;
  mpq_class eps;
  int precision_bits = 128;
  std::vector<ComplexBall> roots;
  /// conj[i] = j when conj(root i) = root j.
  std::vector<int> conj;
  /// recip[i] = j when 1/root i = root j; -1 when 1/root i is not a root.
  std::vector<int> recip;
  std::vector<ModulusClass> modulus;

  std::size_t size() const { return roots.size(); }
  /// Re-isolates at a smaller radius, keeping the labels.
  RootSystem refine(const mpq_class& new_eps) const;
  /// Same system with roots relabeled: new root i is old root order[i].
  RootSystem permuted(const std::vector<int>& order) const;
};

/// Initial working precision used when a caller passes 0; adaptive doubling starts here.
int default_precision_bits();
void set_default_precision_bits(int bits);

/// Radii are at most eps; re-running with eps/2 yields balls nested in these.
RootSystem isolate_roots(const IntPoly& p, const mpq_class& eps, int precision_bits = 0);

/// Labels the six roots of a special sextic as z1..z6: z1 on the unit circle with
/// Im > 0, z2 = conj z1, z3 outside with Im > 0, z4 = 1/z3, z5 = conj z4,
/// z6 = conj z3. Throws NotSpecial when the root pattern does not fit.
RootSystem canonical_special_order(const RootSystem& rs);

/// A value built from roots: product, sum, integer-weighted sum, or
/// product + w * sum with a single weight w.
struct RootExpr {
  enum class Kind { Product, Sum, Linear, ProductSum };
  Kind kind = Kind::Product;
  std::vector<int> idx;
  std::vector<long> weights;

  static RootExpr product(std::vector<int> i) { return {Kind::Product, std::move(i), {}}; }
  static RootExpr sum(std::vector<int> i) { return {Kind::Sum, std::move(i), {}}; }
  static RootExpr linear(std::vector<int> i, std::vector<long> w) { return {Kind::Linear, std::move(i), std::move(w)}; }
  static RootExpr product_sum(std::vector<int> i, long w) { return {Kind::ProductSum, std::move(i), {w}}; }
};

ComplexBall eval(const RootExpr& e, const std::vector<ComplexBall>& roots, int bits);

/// Working bit count adequate for balls of radius eps.
int working_bits(const mpq_class& eps);

/// Assigns each value to the irreducible factor it is a root of. The values
/// must be the complete root multiset of targets.expand(); each factor of
/// degree d and multiplicity m receives d*m values.
std::vector<std::size_t> certify_value_match(const RootSystem& roots, const std::vector<RootExpr>& values,
                                             const FactorList& targets);

}  // namespace tori
