#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tori/certroots.hpp"
#include "tori/exactlin.hpp"
#include "tori/intpoly.hpp"

namespace tori {

/// How the reciprocal pair of the chosen off-circle roots meets conjugation.
/// RecipEqualsConj: a·conj(c) = c·conj(a); RecipCrossesConj: a·c = 1.
enum class Subcase { RecipEqualsConj, RecipCrossesConj };
const char* subcase_name(Subcase s);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SpecialClassification {
  bool is_special = false;
  /// monic, degree 6, p(0)=1, irreducible, reciprocal, trace-root pattern.
  std::vector<Check> reasons;
  std::optional<IntPoly> trace_poly;
  /// Enclosure of the unique real root of the trace cubic.
  std::optional<RealInterval> real_trace_root_interval;
  /// Subcase of the default triple (z1, z3, z4); see subcase_of_triple.
  std::optional<Subcase> subcase;
  /// Canonically labeled roots z1..z6 when special.
  std::optional<RootSystem> roots;
};

SpecialClassification classify_special(const IntPoly& p);

/// Subcase for a triple {i, j, k} of canonical labels (1-based) taking one
/// label from each of {1,2}, {3,6}, {4,5}.
Subcase subcase_of_triple(int i, int j, int k);

struct SalemCertificate {
  bool is_salem = false;
  int degree = 0;
  std::optional<IntPoly> trace_poly;
  int count_gt2 = 0;
  int count_in_m2_2 = 0;
  /// Enclosure of the root > 1.
  std::optional<RealInterval> lambda;
  std::string reason;
};

SalemCertificate is_salem(const IntPoly& p, const mpq_class& width = pow2(-64));

/// Enclosure of width <= width of the unique root of p in (lo, hi), where p
/// changes sign between the endpoints.
RealInterval bisect_root(const IntPoly& p, mpq_class lo, mpq_class hi, const mpq_class& width);

/// Trace form of the cyclotomic polynomial Phi_n, n >= 3.
IntPoly cyclotomic_trace(int n);
IntPoly cyclotomic(int n);
/// Degree-m integer polynomial with m distinct real roots in (-2, 2).
IntPoly gm_block(int m);

/// A Salem polynomial of degree two_k. Throws OddDegreeRequested for odd or
/// nonpositive input and SearchExhausted when no a <= a_max works.
IntPoly gross_mcmullen(int two_k, int a_max = 10000);

struct DegreeReport {
  /// lambda_0 .. lambda_n.
  std::vector<RealInterval> lambdas;
  /// Pairs (p, q), p < q, with lambda_p = lambda_q certified exactly.
  std::vector<std::pair<int, int>> exact_equalities;
  /// Whether lambda_1 is a Salem number, when that is decidable here.
  std::optional<bool> salem_first;
  /// Modulus class counts of the eigenvalues of A with multiplicity.
  int count_gt1 = 0, count_eq1 = 0, count_lt1 = 0;
};

/// Dynamical degrees of the automorphism of a complex n-torus acting on H_1 by A.
DegreeReport dynamical_degrees(const IntMatrix& a, int n, const mpq_class& width = pow2(-40));

/// Whether |alpha|^2 is a Salem number, alpha a root of p of maximal modulus.
/// Requires p monic of even degree with p(0) = +-1; an irreducible sextic must
/// classify special. Throws ClassificationRequired otherwise.
bool first_dynamical_degree_salem(const IntPoly& p);

/// Minimal polynomial of |alpha|^2 as used by first_dynamical_degree_salem.
IntPoly first_degree_minimal_polynomial(const IntPoly& p);

}  // namespace tori
