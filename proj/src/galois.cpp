#include "tori/galois.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tori/exactlin.hpp"
#include "tori/salem.hpp"

namespace tori {

namespace {

const Perm kTau = parse_cycles("(12)(36)(45)");

bool is_block_pair(const std::array<int, 2>& pr) { return pr[0] / 2 == pr[1] / 2; }

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Orbits of g on the objects, as lists of object indices.
std::vector<std::vector<int>> orbit_lists(const std::vector<int>& ids) {
  std::map<int, std::vector<int>> m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [k, v] : m) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> point_orbits(const Group& g) {
  std::vector<int> id(6, -1);
  int next = 0;
  for (int i = 0; i < 6; ++i) {
    if (id[i] >= 0) continue;
    for (const auto& x : g) id[x[i]] = next;
    ++next;
  }
  return orbit_lists(id);
}

// Factor-degree patterns one orbit can produce: the value of an object with
// stabilizer S generates a field fixed by some K with S <= K <= G, giving a
// factor of degree [G:K] repeated. The generic pattern comes first.
std::vector<std::vector<int>> orbit_patterns(const Group& g, const std::vector<int>& obj, int size) {
  auto key = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  Group stab;
  for (const auto& x : g) {
    std::vector<int> img;
    for (int i : obj) img.push_back(x[i]);
    if (key(img) == key(obj)) stab.push_back(x);
  }
  std::set<int, std::greater<>> degrees;
  for (const auto& k : wreath48_subgroups())
    if (is_subgroup(stab, k) && is_subgroup(k, g)) degrees.insert(static_cast<int>(g.size() / k.size()));
  std::vector<std::vector<int>> out;
  for (int d : degrees) out.push_back(std::vector<int>(size / d, d));
  return out;
}

// Sorted concatenations of one pattern per orbit, generic combination first.
std::vector<std::vector<int>> combine(const std::vector<int>& fixed, const std::vector<std::vector<std::vector<int>>>& opts) {
  std::vector<std::vector<int>> acc{fixed};
  for (const auto& o : opts) {
    std::vector<std::vector<int>> next;
    for (const auto& a : acc)
      for (const auto& pat : o) {
        auto x = a;
        x.insert(x.end(), pat.begin(), pat.end());
        next.push_back(x);
      }
    acc = std::move(next);
  }
  std::vector<std::vector<int>> out;
  for (auto& a : acc) {
    a = sorted(a);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

}  // namespace

std::vector<Prediction> predict(const Group& g) {
  const auto pairs = index_pairs();
  const auto triples = transversal_triples();
  std::vector<Prediction> out;

  // Exterior square: reciprocal pairs give 1; other pairs give one factor per orbit.
  std::vector<std::vector<std::vector<int>>> w2, ps, w3;
  for (const auto& orb : orbit_lists(pair_orbits(g))) {
    const auto& pr = pairs[orb[0]];
    auto pats = orbit_patterns(g, {pr[0], pr[1]}, static_cast<int>(orb.size()));
    ps.push_back(pats);
    if (!is_block_pair(pr)) w2.push_back(pats);
  }
  out.push_back({kWedge2, combine({1, 1, 1}, w2)});

  // Exterior cube: a triple meeting a block twice has the value of its third root.
  std::vector<int> w3_fixed;
  for (const auto& orb : point_orbits(g)) w3_fixed.insert(w3_fixed.end(), 2, static_cast<int>(orb.size()));
  for (const auto& orb : orbit_lists(triple_orbits(g))) {
    const auto& t = triples[orb[0]];
    w3.push_back(orbit_patterns(g, {t[0], t[1], t[2]}, static_cast<int>(orb.size())));
  }
  out.push_back({kWedge3, combine(w3_fixed, w3)});
  out.push_back({kPairSum, combine({}, ps)});
  out.push_back({kBlockQuotient, {{block_quotient_order(g)}}});
  out.push_back({kPrimitiveTriple, {std::vector<int>(48 / g.size(), static_cast<int>(g.size()))}});
  return out;
}

const Prediction& CandidateGroup::prediction(const std::string& resolvent) const {
  for (const auto& p : predictions)
    if (p.resolvent == resolvent) return p;
  throw Error(Errc::InvariantViolation, "no prediction for " + resolvent);
}

namespace {

CandidateGroup make_candidate(const std::string& label, const std::vector<std::string>& gens, const std::string& how) {
  CandidateGroup c;
  c.label = label;
  for (const auto& g : gens) c.generators.push_back(parse_cycles(g));
  c.elements = closure(c.generators);
  c.order = static_cast<int>(c.elements.size());
  c.derivation = how;
  c.predictions = predict(c.elements);
  return c;
}

CandidateGroup search_h24(const Group& g12, const Group& g24) {
  std::vector<Group> hits;
  for (const auto& h : wreath48_subgroups())
    if (h.size() == 24 && is_subgroup(g12, h) && !conjugate_in_s6(h, g24)) hits.push_back(h);
  std::string how = "order-24 subgroup of the wreath product containing G12, not conjugate to G24";
  if (hits.empty()) {
    // No order-24 subgroup contains G12; take the transitive order-24 subgroup
    // with full block quotient that contains complex conjugation.
    for (const auto& h : wreath48_subgroups())
      if (h.size() == 24 && is_transitive(h) && block_quotient_order(h) == 6 && contains(h, kTau) &&
          !conjugate_in_s6(h, g24))
        hits.push_back(h);
    how = "unique transitive order-24 subgroup of the wreath product with block quotient S3 containing (12)(36)(45)";
  }
  if (hits.size() != 1) throw Error(Errc::InvariantViolation, "H24 search did not give a unique subgroup");
  CandidateGroup c;
  c.label = "H24";
  c.elements = hits[0];
  c.generators = minimal_generators(c.elements);
  c.order = 24;
  c.derivation = how;
  c.predictions = predict(c.elements);
  return c;
}

}  // namespace

const std::vector<CandidateGroup>& candidate_groups() {
  static const std::vector<CandidateGroup> cands = [] {
    std::vector<CandidateGroup> v;
    v.push_back(make_candidate("H6", {"(135)(246)", "(12)(36)(45)"}, "generators as stated"));
    v.push_back(make_candidate("G12", {"(135)(246)", "(13)(24)", "(12)(34)(56)"}, "generators as stated"));
    v.push_back(make_candidate("G24", {"(12)", "(135)(246)"}, "generators as stated"));
    CandidateGroup h24 = search_h24(v[1].elements, v[2].elements);
    v.push_back(h24);
    v.push_back(make_candidate("G48", {"(12)", "(13)(24)", "(135)(246)"}, "generators as stated"));
    if (v.back().elements != wreath48()) throw Error(Errc::InvariantViolation, "G48 is not the wreath product");
    return v;
  }();
  return cands;
}

// ------------------------------------------------------------ pair orbits

namespace {

std::vector<PairOrbit> group_pairs(const std::vector<std::size_t>& owner) {
  const auto pairs = index_pairs();
  std::map<std::size_t, PairOrbit> m;
  for (std::size_t i = 0; i < pairs.size(); ++i) m[owner[i]].push_back(pairs[i]);
  std::vector<PairOrbit> out;
  for (auto& [f, o] : m) out.push_back(o);
  std::sort(out.begin(), out.end(), [](const PairOrbit& a, const PairOrbit& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a[0] < b[0];
  });
  return out;
}

RootSystem canonical_roots(const IntPoly& p) {
  SpecialClassification cls = classify_special(p);
  if (!cls.is_special) throw Error(Errc::NotSpecial, "polynomial is not special");
  return *cls.roots;
}

}  // namespace

std::vector<PairOrbit> pair_orbit_partition(const IntPoly& p, const PairOrbitOptions& opt) {
  const RootSystem z = canonical_roots(p);
  const IntMatrix a = companion(p);
  const auto pairs = index_pairs();
  if (!opt.force_collision_resolvent) {
    FactorList w2 = factor_over_z(char_poly(wedge_power(a, 2)));
    std::vector<RootExpr> vals;
    for (const auto& pr : pairs) vals.push_back(RootExpr::product({pr[0], pr[1]}));
    std::vector<std::size_t> owner = certify_value_match(z, vals, w2);
    bool collision = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [f, m] = w2.factors[owner[i]];
      if (f == IntPoly{-1, 1}) {
        if (!is_block_pair(pairs[i])) throw Error(Errc::InvariantViolation, "non-reciprocal pair with product 1");
      } else if (m > 1) {
        collision = true;
      }
    }
    if (!collision) return group_pairs(owner);
  }
  // zi zj + c (zi + zj) separates pairs whose products collide.
  const IntMatrix w = wedge_power(a, 2), s = additive_compound(a);
  for (int c = 1; c <= opt.c_max; ++c) {
    IntPoly cp = char_poly(w + mpz_class(c) * s);
    if (!is_squarefree(cp)) continue;
    FactorList f = factor_over_z(cp);
    std::vector<RootExpr> vals;
    for (const auto& pr : pairs) vals.push_back(RootExpr::product_sum({pr[0], pr[1]}, c));
    return group_pairs(certify_value_match(z, vals, f));
  }
  throw Error(Errc::CollisionUnresolved, "no c up to the bound separates the pair values");
}

// ------------------------------------------------------------ primitive-triple resolvent

namespace {

std::vector<RootExpr> triple_values(long c) {
  std::vector<RootExpr> vals;
  for (const auto& s : wreath48()) vals.push_back(RootExpr::linear({s[0], s[2], s[4]}, {1, c, c * c}));
  return vals;
}

IntPoly resolvent_for(const RootSystem& z, long c) {
  const auto vals = triple_values(c);
  RootSystem rs = z;
  const mpq_class floor = pow2(-4096);
  while (true) {
    const int bits = working_bits(rs.eps) + 64;
    std::vector<ComplexBall> balls;
    for (const auto& v : vals) balls.push_back(eval(v, rs.roots, bits));
    if (auto r = round_integer_poly(poly_from_roots(balls, bits))) return *r;
    if (rs.eps <= floor) throw Error(Errc::PrecisionExhausted, "resolvent coefficients did not round");
    rs = rs.refine(rs.eps / pow2(64));
  }
}

}  // namespace

IntPoly primitive_triple_resolvent(const RootSystem& canonical, int c_max, long* c_used) {
  for (long c = 1; c <= c_max; ++c) {
    IntPoly r = resolvent_for(canonical, c);
    if (is_squarefree(r)) {
      if (c_used) *c_used = c;
      return r;
    }
  }
  throw Error(Errc::CollisionUnresolved, "no c up to the bound gives a squarefree triple resolvent");
}

namespace {

struct GroupData {
  Group group;
  long c = 0;
  std::vector<int> degrees;
};

GroupData galois_group_data(const RootSystem& z, int c_max) {
  GroupData d;
  IntPoly r = primitive_triple_resolvent(z, c_max, &d.c);
  FactorList f = factor_over_z(r);
  d.degrees = f.degree_multiset();
  const auto& w = wreath48();
  std::vector<std::size_t> owner = certify_value_match(z, triple_values(d.c), f);
  const std::size_t id = static_cast<std::size_t>(std::find(w.begin(), w.end(), perm_identity()) - w.begin());
  for (std::size_t i = 0; i < w.size(); ++i)
    if (owner[i] == owner[id]) d.group.push_back(w[i]);
  if (closure(d.group) != d.group) throw Error(Errc::InvariantViolation, "resolvent factor does not give a group");
  return d;
}

}  // namespace

Group galois_group(const RootSystem& canonical, int c_max, long* c_used) {
  GroupData d = galois_group_data(canonical, c_max);
  if (c_used) *c_used = d.c;
  return d.group;
}

// ------------------------------------------------------------ classification

GaloisReport galois_class(const IntPoly& p, int c_max) {
  const RootSystem z = canonical_roots(p);
  const IntMatrix a = companion(p);
  GaloisReport rep;
  rep.pair_orbits = pair_orbit_partition(p, {c_max, false});

  GroupData gd = galois_group_data(z, c_max);
  rep.group = gd.group;
  rep.order = static_cast<int>(gd.group.size());
  rep.resolvent_c = gd.c;

  FactorList w3 = factor_over_z(char_poly(wedge_power(a, 3)));
  mpz_class disc = discriminant(trace_polynomial(p));
  std::vector<std::pair<std::string, std::vector<int>>> observed{
      {kWedge2, factor_over_z(char_poly(wedge_power(a, 2))).degree_multiset()},
      {kWedge3, w3.degree_multiset()},
      {kPairSum, factor_over_z(char_poly(additive_compound(a))).degree_multiset()},
      {kBlockQuotient, {disc > 0 && mpz_perfect_square_p(disc.get_mpz_t()) ? 3 : 6}},
      {kPrimitiveTriple, gd.degrees},
  };
  const auto& cands = candidate_groups();
  std::set<std::string> all;
  for (const auto& c : cands) all.insert(c.label);
  for (const auto& [name, deg] : observed) {
    Evidence e{name, deg, {}};
    for (const auto& c : cands) {
      const auto& alts = c.prediction(name).alternatives;
      if (std::find(alts.begin(), alts.end(), deg) != alts.end())
        e.consistent.push_back(c.label);
      else
        all.erase(c.label);
    }
    rep.evidence.push_back(e);
  }
  for (const auto& c : cands)
    if (all.count(c.label)) rep.ambiguity.push_back(c.label);

  for (const auto& c : cands)
    if (conjugate_in_s6(c.elements, rep.group)) rep.class_label = c.label;
  if (rep.class_label.empty()) throw Error(Errc::NoCandidateMatches, "Galois group is not conjugate to a candidate");
  if (!all.count(rep.class_label))
    throw Error(Errc::InvariantViolation, "resolvent degrees disagree with the computed group");

  // The exact pair partition must be the orbit partition of the computed group.
  std::vector<std::size_t> ids;
  for (int id : pair_orbits(rep.group)) ids.push_back(static_cast<std::size_t>(id));
  if (group_pairs(ids) != rep.pair_orbits)
    throw Error(Errc::InvariantViolation, "pair orbits disagree with the computed group");

  // Transversal triples with product 1.
  std::vector<RootExpr> triples;
  for (const auto& s : k_subsets(6, 3)) triples.push_back(RootExpr::product(s));
  std::vector<std::size_t> owner = certify_value_match(z, triples, w3);
  const auto subsets = k_subsets(6, 3);
  for (std::size_t i = 0; i < subsets.size() && !rep.ap_triple; ++i) {
    const auto& s = subsets[i];
    bool transversal = s[0] / 2 != s[1] / 2 && s[1] / 2 != s[2] / 2 && s[0] / 2 != s[2] / 2;
    if (transversal && w3.factors[owner[i]].first == IntPoly{-1, 1}) rep.ap_triple = std::array<int, 3>{s[0], s[1], s[2]};
  }
  if (rep.ap_triple && rep.class_label != "H6" && rep.class_label != "G12")
    throw Error(Errc::InvariantViolation, "a triple with product 1 forces H6 or G12");
  return rep;
}

}  // namespace tori
