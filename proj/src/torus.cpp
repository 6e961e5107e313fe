#include "tori/torus.hpp"

#include <algorithm>

namespace tori {

namespace {

// Conjugate pairs of the canonical labels.
constexpr std::array<std::array<int, 2>, 3> kConjPairs{{{0, 1}, {2, 5}, {3, 4}}};

RootSystem special_roots(const IntPoly& p) {
  SpecialClassification cls = classify_special(p);
  if (!cls.is_special) throw Error(Errc::NotSpecial, "polynomial is not special");
  return *cls.roots;
}

// Order n when q is the cyclotomic polynomial Phi_n, otherwise 0.
int cyclotomic_index(const IntPoly& q) {
  // phi(n) <= 20 forces n <= 66.
  for (int n = 1; n <= 66; ++n)
    if (q == cyclotomic(n)) return n;
  return 0;
}

// For all 20 triples, the multiplicative order of z_i z_j z_k when it is a root of
// unity (0 otherwise), certified against the factors of the exterior-cube char poly.
std::vector<int> triple_orders(const RootSystem& z, const IntPoly& p) {
  FactorList w3 = factor_over_z(char_poly(wedge_power(companion(p), 3)));
  std::vector<RootExpr> vals;
  for (const auto& s : k_subsets(6, 3)) vals.push_back(RootExpr::product(s));
  std::vector<int> out;
  for (std::size_t f : certify_value_match(z, vals, w3)) {
    out.push_back(cyclotomic_index(w3.factors[f].first));
  }
  return out;
}

int order_of(const std::vector<int>& orders, const Triple& t) {
  const auto subsets = k_subsets(6, 3);
  const std::vector<int> key{t[0], t[1], t[2]};
  return orders[static_cast<std::size_t>(std::find(subsets.begin(), subsets.end(), key) - subsets.begin())];
}

int sign_of_order(int n) { return n == 1 ? 1 : n == 2 ? -1 : 0; }

Subcase subcase_of(const Triple& t) { return subcase_of_triple(t[0] + 1, t[1] + 1, t[2] + 1); }

}  // namespace

Triple normalize_triple(const std::array<int, 3>& t) {
  Triple s = t;
  std::sort(s.begin(), s.end());
  for (const auto& cp : kConjPairs) {
    int hits = 0;
    for (int x : s) hits += x == cp[0] || x == cp[1];
    if (hits != 1) throw Error(Errc::InadmissibleTriple, "triple must take one label from each conjugate pair");
  }
  return s;
}

std::vector<TripleInfo> admissible_triples(const IntPoly& p) {
  const RootSystem z = special_roots(p);
  const std::vector<int> orders = triple_orders(z, p);
  std::vector<TripleInfo> out;
  for (int a : kConjPairs[0])
    for (int b : kConjPairs[1])
      for (int c : kConjPairs[2]) {
        TripleInfo ti;
        ti.triple = normalize_triple({a, b, c});
        ti.unity_order = order_of(orders, ti.triple);
        ti.product = sign_of_order(ti.unity_order);
        ti.ap = ti.product == 1;
        ti.subcase = subcase_of(ti.triple);
        out.push_back(ti);
      }
  std::sort(out.begin(), out.end(), [](const TripleInfo& x, const TripleInfo& y) { return x.triple < y.triple; });
  return out;
}

TorusModel standard_construction(const IntPoly& p, const Triple& t) {
  TorusModel m;
  m.roots = special_roots(p);
  m.triple = normalize_triple(t);
  m.poly = p;
  m.action = companion(p);
  m.unity_order = order_of(triple_orders(m.roots, p), m.triple);
  m.triple_product = sign_of_order(m.unity_order);
  m.ap_flag = m.triple_product == 1;
  m.subcase = subcase_of(m.triple);
  m.degrees = dynamical_degrees(m.action, 3);
  const auto& eq = m.degrees.exact_equalities;
  if (std::find(eq.begin(), eq.end(), std::make_pair(1, 2)) == eq.end() || m.degrees.lambdas[1].hi <= 1)
    throw Error(Errc::InvariantViolation, "special model must have lambda_1 = lambda_2 > 1");
  return m;
}

const char* hodge_name(HodgeType h) {
  switch (h) {
    case HodgeType::H11: return "(1,1)";
    case HodgeType::H20: return "(2,0)";
    case HodgeType::H02: return "(0,2)";
  }
  return "?";
}

HodgeType hodge_type(const std::array<int, 2>& pair, const Triple& t) {
  int in = 0;
  for (int x : pair) in += std::count(t.begin(), t.end(), x) > 0;
  return in == 1 ? HodgeType::H11 : in == 2 ? HodgeType::H20 : HodgeType::H02;
}

PicardReport picard_number(const TorusModel& m, int c_max) {
  return picard_from_orbits(pair_orbit_partition(m.poly, {c_max, false}), m.triple);
}

PicardReport picard_from_orbits(const std::vector<PairOrbit>& orbits, const Triple& t) {
  PicardReport r;
  r.orbits = orbits;
  for (const auto& pr : index_pairs()) r.hodge_types.emplace_back(pr, hodge_type(pr, t));
  for (const auto& orb : r.orbits) {
    bool all11 = std::all_of(orb.begin(), orb.end(),
                             [&](const std::array<int, 2>& pr) { return hodge_type(pr, t) == HodgeType::H11; });
    if (!all11) continue;
    r.ns_orbits.push_back(orb);
    r.rho += static_cast<int>(orb.size());
  }
  r.projective = r.rho == 9;
  return r;
}

bool fibration_exists(const IntPoly& p) { return !is_irreducible(p); }

const char* route_name(FibrationRoute r) {
  switch (r) {
    case FibrationRoute::CoprimeFactors: return "coprime_factors";
    case FibrationRoute::KernelOfPower: return "kernel_of_power";
    case FibrationRoute::None: return "none";
  }
  return "?";
}

namespace {

FibrationSubmodule make_submodule(const IntMatrix& a, const Lattice& m) {
  if (!(image(a, m) == m)) throw Error(Errc::InvariantViolation, "submodule is not mapped onto itself");
  if (!(saturate(m) == m)) throw Error(Errc::InvariantViolation, "submodule is not primitive");
  FibrationSubmodule s;
  s.lattice = m;
  s.rank = m.rank();
  s.induced_char_poly = char_poly(restricted_action(a, m));
  s.quotient_char_poly = char_poly(quotient_action(a, m));
  s.base_dimension = static_cast<int>((a.rows() - s.rank) / 2);
  return s;
}

}  // namespace

FibrationReport build_fibrations(const IntMatrix& a) {
  if (!a.is_square() || a.rows() % 2) throw Error(Errc::DimensionMismatch, "expected a 2n x 2n matrix");
  if (abs(det(a)) != 1) throw Error(Errc::NotUnimodular, "|det A| must be 1");
  const std::size_t dim = a.rows();
  FibrationReport r;
  r.char_poly = char_poly(a);
  r.minimal_polynomial = minimal_polynomial(a);
  FactorList fm = factor_over_z(r.minimal_polynomial);

  if (fm.factors.size() >= 2) {
    r.route = FibrationRoute::CoprimeFactors;
    // F1 collects the first irreducible factor of m inside the characteristic polynomial.
    const IntPoly& q = fm.factors[0].first;
    IntPoly f1{1}, rest = r.char_poly;
    while (divides(q, rest)) {
      f1 = f1 * q;
      rest = divexact(rest, q);
    }
    const IntPoly f2 = rest;
    BezoutCertificate b = ext_gcd_rational(f1, f2);
    r.bezout = b;
    const IntPoly gens[2] = {f2 * b.h2, f1 * b.h1};
    const IntPoly expect[2] = {f1, f2};
    std::size_t total = 0;
    for (int i = 0; i < 2; ++i) {
      Lattice m = saturate(Lattice::span(evaluate(gens[i], a)));
      FibrationSubmodule s = make_submodule(a, m);
      if (s.induced_char_poly != expect[i] || s.induced_char_poly * s.quotient_char_poly != r.char_poly)
        throw Error(Errc::InvariantViolation, "induced characteristic polynomials do not split the action");
      total += s.rank;
      r.submodules.push_back(s);
    }
    if (total != dim) throw Error(Errc::InvariantViolation, "submodule ranks do not add up");
    r.exists = true;
    r.reason = "minimal polynomial has coprime factors";
    return r;
  }

  const auto& [q, k] = fm.factors[0];
  if (k >= 2) {
    r.route = FibrationRoute::KernelOfPower;
    Lattice m = saturate(Lattice::span(integer_kernel(evaluate(q, a))));
    if (m.rank() == 0 || m.rank() >= dim) throw Error(Errc::InvariantViolation, "kernel has trivial rank");
    FibrationSubmodule s = make_submodule(a, m);
    if (s.induced_char_poly * s.quotient_char_poly != r.char_poly)
      throw Error(Errc::InvariantViolation, "induced characteristic polynomials do not split the action");
    r.submodules.push_back(s);
    r.exists = true;
    r.reason = "minimal polynomial is a power q^k with k >= 2; M = Ker q(f)";
    return r;
  }

  if (r.minimal_polynomial == r.char_poly) {
    // All eigenvalues are simple and Galois conjugate, so no proper admissible submodule exists.
    r.route = FibrationRoute::None;
    r.exists = false;
    r.reason = "minimal polynomial is irreducible and equals the characteristic polynomial";
    return r;
  }
  throw Error(Errc::NoDecomposition,
              "minimal polynomial is irreducible but repeated; the minimal-polynomial criterion is only sufficient "
              "(-id on X x X has m = t + 1 and still fibres over a factor)");
}

ProductTorusExample product_torus_example(int two_k) {
  if (two_k < 4 || two_k % 2) throw Error(Errc::OddDegreeRequested, "dimension must be even and at least 4");
  ProductTorusExample ex;
  ex.dimension = two_k;
  ex.salem_poly = gross_mcmullen(two_k);
  ex.action = kron(companion(ex.salem_poly), IntMatrix::identity(2));
  ex.degrees = dynamical_degrees(ex.action, two_k);
  SalemCertificate cert = is_salem(ex.salem_poly);
  if (!cert.is_salem || !cert.lambda) throw Error(Errc::InvariantViolation, "generator did not return a Salem polynomial");
  ex.alpha_squared = RealInterval{cert.lambda->lo * cert.lambda->lo, cert.lambda->hi * cert.lambda->hi};
  ex.char_poly = char_poly(ex.action);
  ex.minimal_polynomial = minimal_polynomial(ex.action);
  ex.holomorphic_eigenvalues = squarefree_part(ex.salem_poly).degree();

  const auto& eq = ex.degrees.exact_equalities;
  ex.degrees_equal = true;
  for (int q = 2; q <= two_k - 1; ++q)
    ex.degrees_equal &= std::find(eq.begin(), eq.end(), std::make_pair(1, q)) != eq.end();
  ex.degrees_equal &= ex.degrees.lambdas[1].overlaps(ex.alpha_squared);
  ex.no_fibration = is_irreducible(ex.minimal_polynomial) && ex.holomorphic_eigenvalues == two_k;
  return ex;
}

}  // namespace tori
