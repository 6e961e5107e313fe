#include <doctest.h>

#include <algorithm>
#include <map>

#include "tori/torus.hpp"

using namespace tori;

namespace {

const IntPoly kP1{1, 3, 5, 5, 5, 3, 1};
const IntPoly kP2{1, -5, 13, -11, 13, -5, 1};
const IntPoly kP3{1, 1, 3, 1, 3, 1, 1};

int ap_count(const std::vector<TripleInfo>& ts) {
  return static_cast<int>(std::count_if(ts.begin(), ts.end(), [](const TripleInfo& t) { return t.ap; }));
}

Triple conjugate_triple(const Triple& t) {
  const int conj[6] = {1, 0, 5, 4, 3, 2};
  return normalize_triple({conj[t[0]], conj[t[1]], conj[t[2]]});
}

IntMatrix block_upper(const IntMatrix& c) {
  const std::size_t n = c.rows();
  IntMatrix m = IntMatrix::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = c(i, j);
      m(n + i, n + j) = c(i, j);
      m(i, n + j) = i == j ? 1 : 0;
    }
  return m;
}

std::vector<IntPoly> special_corpus(int bound) {
  std::vector<IntPoly> out;
  for (int b = -bound; b <= bound; ++b)
    for (int c = -bound; c <= bound; ++c)
      for (int d = -bound; d <= bound; ++d) {
        IntPoly p = from_trace(IntPoly{d, c, b, 1});
        if (classify_special(p).is_special) out.push_back(p);
      }
  return out;
}

}  // namespace

TEST_CASE("admissible triples") {
  auto t1 = admissible_triples(kP1);
  REQUIRE(t1.size() == 8);
  CHECK(ap_count(t1) == 2);
  CHECK(ap_count(admissible_triples(kP2)) == 2);
  CHECK(ap_count(admissible_triples(kP3)) == 0);
  for (const auto& t : t1) {
    // Conjugate triples share the product-one property.
    auto it = std::find_if(t1.begin(), t1.end(), [&](const TripleInfo& u) { return u.triple == conjugate_triple(t.triple); });
    REQUIRE(it != t1.end());
    CHECK(it->ap == t.ap);
  }
  CHECK(t1.front().triple == Triple{0, 2, 3});
  CHECK_THROWS_AS(admissible_triples(IntPoly{1, 0, 0, 1, 0, 0, 1}), Error);
}

TEST_CASE("standard construction") {
  TorusModel m = standard_construction(kP1, {0, 2, 4});
  CHECK(m.ap_flag);
  CHECK(m.action == companion(kP1));
  CHECK(char_poly(m.action) == kP1);
  CHECK(m.degrees.lambdas[1].lo > mpq_class(232471, 100000));
  CHECK(m.degrees.lambdas[1].hi < mpq_class(232473, 100000));
  CHECK(m.degrees.lambdas[1].lo == m.degrees.lambdas[2].lo);
  CHECK(m.degrees.lambdas[1].hi == m.degrees.lambdas[2].hi);

  TorusModel m3 = standard_construction(kP3, {0, 2, 3});
  CHECK_FALSE(m3.ap_flag);
  CHECK(m3.subcase == Subcase::RecipCrossesConj);

  CHECK_THROWS_AS(standard_construction(IntPoly{1, 0, 0, 1, 0, 0, 1}, {0, 2, 3}), Error);
  try {
    standard_construction(kP1, {0, 1, 2});
    FAIL("expected InadmissibleTriple");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InadmissibleTriple);
  }
}

TEST_CASE("hodge types") {
  const Triple t{0, 2, 4};
  CHECK(hodge_type({2, 5}, t) == HodgeType::H11);
  CHECK(hodge_type({0, 2}, t) == HodgeType::H20);
  CHECK(hodge_type({1, 5}, t) == HodgeType::H02);
  // For the product-one triple all three reciprocal pairs are (1,1).
  for (std::array<int, 2> pr : {std::array<int, 2>{0, 1}, {2, 3}, {4, 5}}) CHECK(hodge_type(pr, t) == HodgeType::H11);
  int h11 = 0;
  for (const auto& pr : index_pairs()) h11 += hodge_type(pr, t) == HodgeType::H11;
  CHECK(h11 == 9);
}

TEST_CASE("picard numbers of the examples") {
  PicardReport r1 = picard_number(standard_construction(kP1, {0, 2, 4}));
  CHECK(r1.rho == 9);
  CHECK(r1.projective);

  std::map<int, int> rho1;
  for (const auto& t : admissible_triples(kP1))
    if (!t.ap) ++rho1[picard_number(standard_construction(kP1, t.triple)).rho];
  CHECK(rho1[3] > 0);
  CHECK(rho1.count(9) == 0);

  for (const auto& t : admissible_triples(kP2))
    if (t.ap) {
      PicardReport r = picard_number(standard_construction(kP2, t.triple));
      CHECK(r.rho == 9);
      CHECK(r.projective);
    }

  PicardReport r3 = picard_number(standard_construction(kP3, {0, 2, 3}));
  CHECK(r3.rho == 0);
  CHECK_FALSE(r3.projective);
  for (const auto& t : admissible_triples(kP3)) {
    int rho = picard_number(standard_construction(kP3, t.triple)).rho;
    // Only the reciprocal pairs can be algebraic for the full wreath product.
    CHECK((rho == 0 || rho == 3));
    CHECK((rho == 3) == (t.subcase == Subcase::RecipEqualsConj));
  }
}

TEST_CASE("fibration criterion") {
  CHECK_FALSE(fibration_exists(kP1));
  CHECK_FALSE(fibration_exists(kP3));
  CHECK(fibration_exists(IntPoly{1, -3, 1} * IntPoly{1, 1, 1, 1, 1}));
}

TEST_CASE("building fibrations") {
  SUBCASE("coprime factors") {
    IntMatrix a = direct_sum(companion(IntPoly{1, -3, 1}), companion(IntPoly{1, 1, 1, 1, 1}));
    FibrationReport r = build_fibrations(a);
    CHECK(r.route == FibrationRoute::CoprimeFactors);
    REQUIRE(r.exists.has_value());
    CHECK(*r.exists);
    REQUIRE(r.submodules.size() == 2);
    std::vector<std::size_t> ranks{r.submodules[0].rank, r.submodules[1].rank};
    std::sort(ranks.begin(), ranks.end());
    CHECK(ranks == std::vector<std::size_t>{2, 4});
    CHECK(r.submodules[0].rank + r.submodules[1].rank == 6);
    for (const auto& s : r.submodules) {
      CHECK(s.induced_char_poly * s.quotient_char_poly == r.char_poly);
      CHECK(image(a, s.lattice) == s.lattice);
      CHECK(saturate(s.lattice) == s.lattice);
      CHECK(s.base_dimension == 3 - static_cast<int>(s.rank) / 2);
      // Block structure: each submodule is a coordinate block.
      IntMatrix e(6, s.rank);
      std::size_t off = s.rank == 2 ? 0 : 2;
      for (std::size_t i = 0; i < s.rank; ++i) e(off + i, i) = 1;
      CHECK(s.lattice == Lattice::span(e));
    }
    std::vector<IntPoly> induced{r.submodules[0].induced_char_poly, r.submodules[1].induced_char_poly};
    CHECK(std::count(induced.begin(), induced.end(), IntPoly{1, -3, 1}) == 1);
    CHECK(std::count(induced.begin(), induced.end(), IntPoly{1, 1, 1, 1, 1}) == 1);
    REQUIRE(r.bezout.has_value());
  }
  SUBCASE("kernel of a power") {
    IntMatrix a = block_upper(companion(IntPoly{1, 0, 1}));
    FibrationReport r = build_fibrations(a);
    CHECK(r.route == FibrationRoute::KernelOfPower);
    REQUIRE(r.submodules.size() == 1);
    CHECK(r.submodules[0].rank == 2);
    IntMatrix e(4, 2);
    e(0, 0) = 1;
    e(1, 1) = 1;
    CHECK(r.submodules[0].lattice == Lattice::span(e));
  }
  SUBCASE("irreducible minimal polynomial") {
    IntMatrix minus = IntMatrix::identity(6);
    for (std::size_t i = 0; i < 6; ++i) minus(i, i) = -1;
    try {
      build_fibrations(minus);
      FAIL("expected NoDecomposition");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoDecomposition);
    }
    FibrationReport r = build_fibrations(companion(kP1));
    REQUIRE(r.exists.has_value());
    CHECK_FALSE(*r.exists);
    CHECK(r.route == FibrationRoute::None);
  }
  CHECK_THROWS_AS(build_fibrations(IntMatrix{{2, 0}, {0, 1}}), Error);
}

TEST_CASE("product torus examples") {
  ProductTorusExample e4 = product_torus_example(4);
  CHECK(e4.salem_poly == IntPoly{1, -5, 7, -5, 1});
  CHECK(e4.minimal_polynomial == e4.salem_poly);
  CHECK(e4.char_poly == e4.salem_poly * e4.salem_poly);
  CHECK(e4.degrees_equal);
  CHECK(e4.no_fibration);
  CHECK(e4.holomorphic_eigenvalues == 4);
  for (int p = 1; p <= 3; ++p) CHECK(e4.degrees.lambdas[p].overlaps(e4.alpha_squared));
  CHECK(e4.alpha_squared.lo > mpq_class(10999, 1000));
  CHECK(e4.alpha_squared.hi < mpq_class(11000, 1000));
  REQUIRE(e4.degrees.salem_first.has_value());
  CHECK(*e4.degrees.salem_first);

  ProductTorusExample e6 = product_torus_example(6);
  CHECK(e6.degrees_equal);
  CHECK(e6.no_fibration);
  CHECK(e6.action.rows() == 12);
  for (int p = 2; p <= 5; ++p) CHECK(e6.degrees.lambdas[p].lo == e6.degrees.lambdas[1].lo);
  CHECK_THROWS_AS(product_torus_example(5), Error);
  CHECK_THROWS_AS(product_torus_example(2), Error);
}

TEST_CASE("corpus invariants") {
  int minus_one_projective = 0;
  for (const auto& p : special_corpus(2)) {
    CHECK_FALSE(fibration_exists(p));
    std::string label = galois_class(p).class_label;
    std::map<Triple, int> rho;
    for (const auto& t : admissible_triples(p)) {
      TorusModel m = standard_construction(p, t.triple);
      PicardReport r = picard_number(m);
      rho[t.triple] = r.rho;
      CHECK((r.rho == 0 || r.rho == 3 || r.rho == 9));
      CHECK(r.projective == (r.rho == 9));
      // Picard number 9 needs the product condition for some iterate of f.
      CHECK(t.product == (t.unity_order == 1 ? 1 : t.unity_order == 2 ? -1 : 0));
      if (r.rho == 9) CHECK(t.unity_order != 0);
      if (r.rho == 9 && !t.ap) ++minus_one_projective;
      if (t.unity_order != 0) CHECK((label == "H6" || label == "G12"));
    }
    for (const auto& [t, r] : rho) CHECK(rho.at(conjugate_triple(t)) == r);

    // Duality lambda_p(f) = lambda_{n-p}(f^-1).
    IntMatrix a = companion(p);
    DegreeReport d = dynamical_degrees(a, 3), di = dynamical_degrees(unimodular_inverse(a), 3);
    for (int q = 0; q <= 3; ++q) CHECK(d.lambdas[q].overlaps(di.lambdas[3 - q]));
  }
  // t^6 - t^5 + 2t^4 - 3t^3 + 2t^2 - t + 1 has a triple with product -1 and Picard number 9.
  CHECK(minus_one_projective > 0);
}

TEST_CASE("triple product of order six") {
  // Two triples have product a primitive sixth root of unity; f^6 satisfies the product condition.
  const IntPoly p{1, 0, 6, 2, 6, 0, 1};
  int order_six = 0;
  for (const auto& t : admissible_triples(p)) {
    CHECK(t.unity_order != 1);
    if (t.unity_order != 6) continue;
    ++order_six;
    CHECK(t.product == 0);
    PicardReport r = picard_number(standard_construction(p, t.triple));
    CHECK(r.rho == 9);
    CHECK(r.projective);
  }
  CHECK(order_six == 2);
  CHECK(galois_class(p).class_label == "G12");
}
