#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tori/certroots.hpp"
#include "tori/exactlin.hpp"
#include "tori/galois.hpp"
#include "tori/intpoly.hpp"
#include "tori/salem.hpp"

namespace tori {

/// Three canonical labels (0-based, ascending), one from each conjugate pair
/// {z1,z2}, {z3,z6}, {z4,z5}: the holomorphic eigenvalues.
using Triple = std::array<int, 3>;

struct TripleInfo {
  Triple triple;
  /// Product of the three roots is exactly 1.
  bool ap = false;
  /// The product when it is +1 or -1, otherwise 0. For -1 the condition holds for f^2.
  int product = 0;
  /// Multiplicative order of the product when it is a root of unity, otherwise 0.
  int unity_order = 0;
  Subcase subcase;
};

/// The 8 admissible triples in lexicographic order.
std::vector<TripleInfo> admissible_triples(const IntPoly& p);

/// Throws InadmissibleTriple unless t takes one label from each conjugate pair.
Triple normalize_triple(const std::array<int, 3>& t);

/// Standard model: L = Z[t]/(p) with f_* the companion matrix.
struct TorusModel {
  IntPoly poly;
  IntMatrix action;
  Triple triple;
  RootSystem roots;
  bool ap_flag = false;
  /// Triple product when it is +1 or -1, otherwise 0.
  int triple_product = 0;
  /// Order of the triple product as a root of unity, 0 if it is not one.
  int unity_order = 0;
  Subcase subcase;
  DegreeReport degrees;
};

TorusModel standard_construction(const IntPoly& p, const Triple& t);

enum class HodgeType { H11, H20, H02 };
const char* hodge_name(HodgeType h);

/// (1,1) when exactly one index of the pair lies in the triple, (2,0) when both, (0,2) when neither.
HodgeType hodge_type(const std::array<int, 2>& pair, const Triple& t);

struct PicardReport {
  int rho = 0;
  /// Galois orbits of pairs consisting only of (1,1) pairs.
  std::vector<PairOrbit> ns_orbits;
  /// All pair orbits, the certificate for rho.
  std::vector<PairOrbit> orbits;
  std::vector<std::pair<std::array<int, 2>, HodgeType>> hodge_types;
  bool projective = false;
};

PicardReport picard_number(const TorusModel& m, int c_max = 100);
/// Same count from a precomputed pair-orbit partition.
PicardReport picard_from_orbits(const std::vector<PairOrbit>& orbits, const Triple& t);

/// For a 3-torus automorphism with lambda_1 = lambda_2 > 1: an equivariant
/// fibration exists iff the characteristic polynomial is reducible.
bool fibration_exists(const IntPoly& p);

enum class FibrationRoute { CoprimeFactors, KernelOfPower, None };
const char* route_name(FibrationRoute r);

struct FibrationSubmodule {
  Lattice lattice;
  std::size_t rank = 0;
  /// Characteristic polynomial of the action restricted to the submodule.
  IntPoly induced_char_poly;
  /// Characteristic polynomial of the induced action on L / M.
  IntPoly quotient_char_poly;
  /// Dimension of the base X / Z_M.
  int base_dimension = 0;
};

struct FibrationReport {
  /// Unset when the lattice action alone does not decide.
  std::optional<bool> exists;
  FibrationRoute route = FibrationRoute::None;
  IntPoly char_poly;
  IntPoly minimal_polynomial;
  std::vector<FibrationSubmodule> submodules;
  std::optional<BezoutCertificate> bezout;
  std::string reason;
};

/// Equivariant fibrations from the minimal polynomial m of a unimodular action.
/// Coprime factors of m give two submodules; m = q^k with k >= 2 gives Ker q(A).
/// When m is irreducible and equal to the characteristic polynomial there is no
/// fibration. Throws NoDecomposition when m is irreducible but repeated in the
/// characteristic polynomial, where the criterion is one-sided.
FibrationReport build_fibrations(const IntMatrix& a);

/// X = E^{2k} with f_* = companion(S) tensor I_2 for a Salem polynomial S of degree 2k.
struct ProductTorusExample {
  int dimension = 0;
  IntPoly salem_poly;
  IntMatrix action;
  DegreeReport degrees;
  /// Enclosure of alpha^2 for the Salem number alpha.
  RealInterval alpha_squared;
  IntPoly char_poly;
  IntPoly minimal_polynomial;
  /// Distinct eigenvalues of the holomorphic part companion(S).
  int holomorphic_eigenvalues = 0;
  /// lambda_1 = ... = lambda_{2k-1} exactly.
  bool degrees_equal = false;
  /// Minimal polynomial irreducible with 2k distinct holomorphic eigenvalues.
  bool no_fibration = false;
};

ProductTorusExample product_torus_example(int two_k);

}  // namespace tori
