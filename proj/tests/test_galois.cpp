#include <doctest.h>

#include <algorithm>
#include <set>

#include "tori/galois.hpp"
#include "tori/salem.hpp"

using namespace tori;

namespace {

const IntPoly kP1{1, 3, 5, 5, 5, 3, 1};
const IntPoly kP2{1, -5, 13, -11, 13, -5, 1};
const IntPoly kP3{1, 1, 3, 1, 3, 1, 1};

const CandidateGroup& candidate(const std::string& label) {
  for (const auto& c : candidate_groups())
    if (c.label == label) return c;
  throw std::runtime_error("missing candidate " + label);
}

std::vector<int> sizes(const std::vector<PairOrbit>& orbits) {
  std::vector<int> s;
  for (const auto& o : orbits) s.push_back(static_cast<int>(o.size()));
  std::sort(s.begin(), s.end());
  return s;
}

const std::vector<int>& observed(const GaloisReport& r, const std::string& name) {
  for (const auto& e : r.evidence)
    if (e.resolvent == name) return e.degrees;
  throw std::runtime_error("missing evidence " + name);
}

// Independent enumeration: closures of all pairs and triples of block-preserving permutations.
std::set<std::set<Perm>> all_subgroups() {
  std::vector<Perm> w;
  Perm s = perm_identity();
  do {
    if (s[0] / 2 == s[1] / 2 && s[2] / 2 == s[3] / 2 && s[4] / 2 == s[5] / 2) w.push_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  auto gen = [](std::vector<Perm> g) {
    std::set<Perm> h{perm_identity()};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Perm> cur(h.begin(), h.end());
      for (const auto& a : cur)
        for (const auto& b : g) grew |= h.insert(compose(a, b)).second;
    }
    return h;
  };
  std::set<std::set<Perm>> out;
  std::set<std::set<Perm>> two;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i; j < w.size(); ++j) two.insert(gen({w[i], w[j]}));
  out = two;
  for (const auto& h : two)
    for (const auto& x : w)
      if (!h.count(x)) {
        std::vector<Perm> g(h.begin(), h.end());
        g.push_back(x);
        out.insert(gen(g));
      }
  return out;
}

std::set<std::set<std::array<int, 2>>> as_partition(const std::vector<PairOrbit>& orbits) {
  std::set<std::set<std::array<int, 2>>> out;
  for (const auto& o : orbits) out.insert(std::set<std::array<int, 2>>(o.begin(), o.end()));
  return out;
}

std::set<std::set<std::array<int, 2>>> partition_of(const std::set<Perm>& h) {
  std::set<std::set<std::array<int, 2>>> out;
  for (const auto& pr : index_pairs()) {
    std::set<std::array<int, 2>> orb;
    for (const auto& x : h) {
      int a = x[pr[0]], b = x[pr[1]];
      orb.insert({std::min(a, b), std::max(a, b)});
    }
    out.insert(orb);
  }
  return out;
}

}  // namespace

TEST_CASE("candidate groups") {
  const auto& c = candidate_groups();
  REQUIRE(c.size() == 5);
  const auto& h6 = candidate("H6");
  CHECK(h6.order == 6);
  CHECK(h6.elements == closure({parse_cycles("(135)(246)"), parse_cycles("(12)(36)(45)")}));
  CHECK(candidate("G12").order == 12);
  CHECK(candidate("G24").order == 24);
  CHECK(candidate("H24").order == 24);
  CHECK(candidate("G48").order == 48);
  CHECK(h6.prediction(kWedge2).alternatives[0] == std::vector<int>{1, 1, 1, 3, 3, 6});
  CHECK(orbit_sizes(pair_orbits(h6.elements)) == std::vector<int>{3, 3, 3, 6});
  CHECK(orbit_sizes(pair_orbits(candidate("G12").elements)) == std::vector<int>{3, 6, 6});
  CHECK(orbit_sizes(pair_orbits(candidate("G48").elements)) == std::vector<int>{3, 12});

  for (const auto& g : c) {
    CHECK(is_transitive(g.elements));
    CHECK(is_subgroup(g.elements, wreath48()));
    CHECK(closure(g.generators) == g.elements);
  }
  // G24 acts on the blocks through C3 only; the others surject onto S3.
  CHECK(block_quotient_order(candidate("G24").elements) == 3);
  for (const char* l : {"H6", "G12", "H24", "G48"}) CHECK(block_quotient_order(candidate(l).elements) == 6);
  CHECK_FALSE(conjugate_in_s6(candidate("G24").elements, candidate("H24").elements));
  // The block-quotient test separates the two order-24 classes.
  CHECK(candidate("G24").prediction(kBlockQuotient).alternatives !=
        candidate("H24").prediction(kBlockQuotient).alternatives);
}

TEST_CASE("permutation helpers") {
  CHECK(cycle_string(parse_cycles("(135)(246)")) == "(135)(246)");
  CHECK(cycle_string(perm_identity()) == "()");
  CHECK(perm_order(parse_cycles("(12)(345)")) == 6);
  CHECK_THROWS_AS(parse_cycles("(12"), Error);
  CHECK_THROWS_AS(parse_cycles("(17)"), Error);
  CHECK(wreath48().size() == 48);
  CHECK(wreath48_subgroups().size() == all_subgroups().size());
}

TEST_CASE("pair orbit partitions") {
  CHECK(sizes(pair_orbit_partition(kP1)) == std::vector<int>{3, 3, 3, 6});
  CHECK(sizes(pair_orbit_partition(kP2)) == std::vector<int>{3, 6, 6});
  CHECK(sizes(pair_orbit_partition(kP3)) == std::vector<int>{3, 12});
  for (const auto& p : {kP1, kP2, kP3}) {
    auto direct = pair_orbit_partition(p);
    auto forced = pair_orbit_partition(p, {100, true});
    CHECK(as_partition(direct) == as_partition(forced));
    // The reciprocal pairs always form one orbit.
    bool found = false;
    for (const auto& o : direct)
      found |= as_partition({o}) == as_partition({PairOrbit{{0, 1}, {2, 3}, {4, 5}}});
    CHECK(found);
  }
  CHECK_THROWS_AS(pair_orbit_partition(IntPoly{1, 0, 1}), Error);
}

TEST_CASE("galois classes of the three examples") {
  GaloisReport r1 = galois_class(kP1);
  CHECK(r1.class_label == "H6");
  CHECK(r1.order == 6);
  CHECK(r1.ambiguity == std::vector<std::string>{"H6"});
  REQUIRE(r1.ap_triple.has_value());
  CHECK(*r1.ap_triple == std::array<int, 3>{0, 2, 4});

  GaloisReport r2 = galois_class(kP2);
  CHECK(r2.class_label == "G12");
  CHECK(r2.order == 12);
  CHECK(r2.ambiguity == std::vector<std::string>{"G12"});
  CHECK(r2.ap_triple.has_value());

  GaloisReport r3 = galois_class(kP3);
  CHECK(r3.class_label == "G48");
  CHECK(r3.order == 48);
  CHECK(r3.ambiguity == std::vector<std::string>{"G48"});
  CHECK_FALSE(r3.ap_triple.has_value());

  for (const auto* r : {&r1, &r2, &r3}) {
    CHECK(contains(r->group, parse_cycles("(12)(36)(45)")));
    CHECK(observed(*r, kBlockQuotient) == std::vector<int>{6});
    for (const auto& o : r->pair_orbits) CHECK(r->order % static_cast<int>(o.size()) == 0);
  }
  CHECK_THROWS_AS(galois_class(IntPoly{1, 0, 0, 1, 0, 0, 1}), Error);
}

TEST_CASE("brute-force oracle agrees with the reported class") {
  const auto subs = all_subgroups();
  for (const auto& p : {kP1, kP2, kP3}) {
    GaloisReport r = galois_class(p);
    const Perm tau = parse_cycles("(12)(36)(45)");
    const auto pairs = as_partition(r.pair_orbits);
    const auto& w3 = observed(r, kWedge3);
    const auto& prim = observed(r, kPrimitiveTriple);
    std::vector<Group> survivors;
    for (const auto& h : subs) {
      Group g(h.begin(), h.end());
      if (!is_transitive(g) || !h.count(tau)) continue;
      if (partition_of(h) != pairs) continue;
      const auto preds = predict(g);
      bool ok = true;
      for (const auto& pr : preds) {
        if (pr.resolvent == kWedge3) ok &= std::count(pr.alternatives.begin(), pr.alternatives.end(), w3) > 0;
        if (pr.resolvent == kPrimitiveTriple) ok &= pr.alternatives[0] == prim;
        if (pr.resolvent == kBlockQuotient) ok &= pr.alternatives[0] == observed(r, kBlockQuotient);
      }
      if (ok) survivors.push_back(g);
    }
    REQUIRE_FALSE(survivors.empty());
    CHECK(std::count(survivors.begin(), survivors.end(), r.group) == 1);
    for (const auto& g : survivors) CHECK(conjugate_in_s6(g, candidate(r.class_label).elements));
  }
}

TEST_CASE("determinism") {
  GaloisReport a = galois_class(kP2), b = galois_class(kP2);
  CHECK(a.class_label == b.class_label);
  CHECK(a.group == b.group);
  CHECK(a.pair_orbits == b.pair_orbits);
  REQUIRE(a.evidence.size() == b.evidence.size());
  for (std::size_t i = 0; i < a.evidence.size(); ++i) {
    CHECK(a.evidence[i].resolvent == b.evidence[i].resolvent);
    CHECK(a.evidence[i].degrees == b.evidence[i].degrees);
    CHECK(a.evidence[i].consistent == b.evidence[i].consistent);
  }
}

TEST_CASE("exterior square prediction on a special corpus") {
  int special = 0;
  std::set<std::string> seen;
  for (int b = -2; b <= 2; ++b)
    for (int c = -2; c <= 2; ++c)
      for (int d = -2; d <= 2; ++d) {
        IntPoly p = from_trace(IntPoly{d, c, b, 1});
        if (!classify_special(p).is_special) continue;
        ++special;
        GaloisReport r = galois_class(p);
        seen.insert(r.class_label);
        CHECK(observed(r, kWedge2) == candidate(r.class_label).prediction(kWedge2).alternatives[0]);
        CHECK(r.order == static_cast<int>(r.group.size()));
        CHECK(r.class_label != "G24");
        if (r.ap_triple) CHECK((r.class_label == "H6" || r.class_label == "G12"));
      }
  CHECK(special > 5);
  CHECK(seen.count("G48") == 1);
}
