#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tori/certroots.hpp"
#include "tori/intpoly.hpp"
#include "tori/perm.hpp"

namespace tori {

/// Resolvent names used in predictions and evidence.
inline constexpr const char* kWedge2 = "wedge2";
inline constexpr const char* kWedge3 = "wedge3";
inline constexpr const char* kPairSum = "pair_sum";
inline constexpr const char* kPrimitiveTriple = "primitive_triple";
inline constexpr const char* kBlockQuotient = "block_quotient";

struct Prediction {
  std::string resolvent;
  /// Admissible sorted factor-degree lists (with multiplicity); the first
  /// assumes distinct values on distinct objects.
  std::vector<std::vector<int>> alternatives;
};

struct CandidateGroup {
  std::string label;
  std::vector<Perm> generators;
  Group elements;
  int order = 0;
  /// How the group was obtained.
  std::string derivation;
  std::vector<Prediction> predictions;

  const Prediction& prediction(const std::string& resolvent) const;
};

/// H6, G12, G24, H24, G48 in that order. G24 keeps its literal generators;
/// H24 is found by search over the subgroups of the wreath product.
const std::vector<CandidateGroup>& candidate_groups();

/// Predictions for an arbitrary subgroup of the wreath product.
std::vector<Prediction> predict(const Group& g);

using PairOrbit = std::vector<std::array<int, 2>>;

struct PairOrbitOptions {
  int c_max = 100;
  /// Use the collision resolvent even when the exterior square separates.
  bool force_collision_resolvent = false;
};

/// Partition of the 15 index pairs (0-based canonical labels) into Galois
/// orbits, sorted by (size, first pair).
std::vector<PairOrbit> pair_orbit_partition(const IntPoly& p, const PairOrbitOptions& opt = {});

struct Evidence {
  std::string resolvent;
  std::vector<int> degrees;
  /// Candidate labels whose prediction admits the observed degrees.
  std::vector<std::string> consistent;
};

struct GaloisReport {
  std::string class_label;
  /// Candidates consistent with every observed resolvent.
  std::vector<std::string> ambiguity;
  int order = 0;
  std::vector<PairOrbit> pair_orbits;
  std::vector<Evidence> evidence;
  /// The Galois group acting on the canonical labels z1..z6.
  Group group;
  /// A transversal triple with product 1, when one exists.
  std::optional<std::array<int, 3>> ap_triple;
  /// Parameter c of the primitive-triple resolvent.
  long resolvent_c = 0;
};

/// Degree-48 resolvent prod over the wreath product of
/// (t - (z_s(1) + c z_s(3) + c^2 z_s(5))), with the smallest c >= 1 making it squarefree.
IntPoly primitive_triple_resolvent(const RootSystem& canonical, int c_max, long* c_used = nullptr);

/// Galois group of the splitting field as a group of permutations of the
/// canonical labels, read off the factor of the primitive-triple resolvent
/// that vanishes at the identity labeling.
Group galois_group(const RootSystem& canonical, int c_max = 100, long* c_used = nullptr);

GaloisReport galois_class(const IntPoly& p, int c_max = 100);

}  // namespace tori
