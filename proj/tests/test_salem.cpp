#include <doctest.h>

#include <algorithm>
#include <random>

#include "tori/salem.hpp"

using namespace tori;

namespace {

const IntPoly kP1{1, 3, 5, 5, 5, 3, 1};
const IntPoly kP2{1, -5, 13, -11, 13, -5, 1};
const IntPoly kP3{1, 1, 3, 1, 3, 1, 1};
const IntPoly kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

bool has_pair(const DegreeReport& r, int p, int q) {
  return std::find(r.exact_equalities.begin(), r.exact_equalities.end(), std::make_pair(p, q)) !=
         r.exact_equalities.end();
}

// Product of random elementary row operations and sign flips.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n, int steps) {
  IntMatrix m = IntMatrix::identity(n);
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1), c(-2, 2);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    e(i, j) = c(rng);
    m = e * m;
  }
  return m;
}

}  // namespace

TEST_CASE("special classification") {
  SpecialClassification a = classify_special(kP1);
  CHECK(a.is_special);
  REQUIRE(a.trace_poly);
  CHECK(*a.trace_poly == IntPoly{-1, 2, 3, 1});
  REQUIRE(a.real_trace_root_interval);
  CHECK(a.real_trace_root_interval->lo > -2);
  CHECK(a.real_trace_root_interval->hi < 2);
  CHECK(a.real_trace_root_interval->width() <= pow2(-64));
  REQUIRE(a.roots);
  CHECK(a.roots->modulus[0] == ModulusClass::Eq1);
  CHECK(a.subcase == Subcase::RecipCrossesConj);
  CHECK(a.reasons.size() == 6);

  SpecialClassification b = classify_special(IntPoly{1, 0, 0, 1, 0, 0, 1});
  CHECK_FALSE(b.is_special);
  CHECK_FALSE(b.reasons.back().passed);
  CHECK(b.reasons.back().detail.find("3 in (-2,2)") != std::string::npos);

  SpecialClassification c = classify_special(IntPoly{-2, 0, 0, 0, 0, 0, 1});
  CHECK_FALSE(c.is_special);
  CHECK_FALSE(c.reasons[2].passed);

  CHECK(classify_special(kP2).is_special);
  CHECK(classify_special(kP3).is_special);
  CHECK_FALSE(classify_special(IntPoly{1, -3, 1} * IntPoly{1, 1, 1, 1, 1}).is_special);
  CHECK_FALSE(classify_special(IntPoly{1, 3, 5, 5, 5, 3, 2}).is_special);
}

TEST_CASE("subcase of a triple") {
  CHECK(subcase_of_triple(1, 3, 4) == Subcase::RecipCrossesConj);
  CHECK(subcase_of_triple(2, 6, 5) == Subcase::RecipCrossesConj);
  CHECK(subcase_of_triple(1, 3, 5) == Subcase::RecipEqualsConj);
  CHECK(subcase_of_triple(4, 6, 2) == Subcase::RecipEqualsConj);
  CHECK_THROWS_AS(subcase_of_triple(1, 2, 3), Error);
  CHECK_THROWS_AS(subcase_of_triple(1, 3, 6), Error);
}

TEST_CASE("salem certificates") {
  SalemCertificate l = is_salem(kLehmer);
  CHECK(l.is_salem);
  CHECK(l.count_gt2 == 1);
  CHECK(l.count_in_m2_2 == 4);
  REQUIRE(l.lambda);
  CHECK(l.lambda->contains(mpq_class(117628, 100000)) == false);
  CHECK(l.lambda->lo > mpq_class(1176280, 1000000));
  CHECK(l.lambda->hi < mpq_class(1176281, 1000000));

  SalemCertificate q = is_salem(IntPoly{1, -3, 1});
  CHECK(q.is_salem);
  CHECK(q.degree == 2);
  REQUIRE(q.lambda);
  // (3 + sqrt 5) / 2 = 2.6180339887...
  CHECK(q.lambda->lo > mpq_class(26180339887, 10000000000));
  CHECK(q.lambda->hi < mpq_class(26180339888, 10000000000));

  CHECK_FALSE(is_salem(kP1).is_salem);
  CHECK_FALSE(is_salem(IntPoly{1, -2, 1}).is_salem);
  CHECK_FALSE(is_salem(IntPoly{-1, -1, 0, 1}).is_salem);
  CHECK_FALSE(is_salem(IntPoly{1, -3, 1} * IntPoly{1, -3, 1}).is_salem);
  CHECK_FALSE(is_salem(IntPoly{1, 1, 1}).is_salem);
}

TEST_CASE("gross-mcmullen generator") {
  CHECK(gross_mcmullen(2) == IntPoly{1, -3, 1});
  CHECK(gross_mcmullen(4) == IntPoly{1, -5, 7, -5, 1});
  CHECK(trace_polynomial(gross_mcmullen(4)) == IntPoly{5, -5, 1});
  CHECK_THROWS_AS(gross_mcmullen(5), Error);
  CHECK_THROWS_AS(gross_mcmullen(0), Error);
  for (int d = 2; d <= 16; d += 2) {
    IntPoly p = gross_mcmullen(d);
    CHECK(p.degree() == d);
    SalemCertificate c = is_salem(p);
    CHECK(c.is_salem);
    if (d <= 12) {
      // Powers of Salem numbers are Salem; the squares have the same degree.
      SalemCertificate s = is_salem(graeffe(p));
      CHECK(s.is_salem);
      REQUIRE(s.lambda);
      REQUIRE(c.lambda);
      CHECK(s.lambda->lo <= c.lambda->hi * c.lambda->hi);
      CHECK(s.lambda->hi >= c.lambda->lo * c.lambda->lo);
    }
  }
  for (int m = 0; m <= 12; ++m) {
    IntPoly c = gm_block(m);
    CHECK(c.degree() == m);
    CHECK(is_squarefree(c));
  }
  CHECK(gm_block(4) == IntPoly{-2, 0, 1} * IntPoly{-3, 0, 1});
  CHECK(gm_block(3) == IntPoly{0, -2, 0, 1});
  CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
  CHECK(cyclotomic_trace(5) == IntPoly{-1, 1, 1});
}

TEST_CASE("dynamical degrees") {
  DegreeReport id = dynamical_degrees(IntMatrix::identity(6), 3);
  for (const auto& l : id.lambdas) {
    CHECK(l.lo == 1);
    CHECK(l.hi == 1);
  }
  CHECK(has_pair(id, 0, 1));
  CHECK(has_pair(id, 1, 2));
  CHECK(id.salem_first == false);

  DegreeReport r = dynamical_degrees(companion(kP1), 3);
  REQUIRE(r.lambdas.size() == 4);
  CHECK(r.lambdas[0].lo == 1);
  CHECK(r.lambdas[3].hi == 1);
  CHECK(has_pair(r, 1, 2));
  CHECK(has_pair(r, 0, 3));
  CHECK_FALSE(has_pair(r, 0, 1));
  // alpha * conj(alpha) is the real root of t^3 - 3t^2 + 2t - 1.
  RealInterval w = bisect_root(IntPoly{-1, 2, -3, 1}, 2, 3, pow2(-80));
  for (int p : {1, 2}) {
    CHECK(r.lambdas[p].overlaps(w));
    CHECK(r.lambdas[p].width() <= mpq_class(1, 1000000000));
    CHECK(r.lambdas[p].lo > mpq_class(232471, 100000));
    CHECK(r.lambdas[p].hi < mpq_class(232472, 100000));
  }
  CHECK(r.salem_first == false);
  CHECK(r.count_gt1 == 2);
  CHECK(r.count_eq1 == 2);

  IntMatrix m = kron(companion(IntPoly{1, -5, 7, -5, 1}), IntMatrix::identity(2));
  DegreeReport e = dynamical_degrees(m, 4);
  SalemCertificate s = is_salem(IntPoly{1, -5, 7, -5, 1}, pow2(-80));
  RealInterval a2{s.lambda->lo * s.lambda->lo, s.lambda->hi * s.lambda->hi};
  CHECK(has_pair(e, 1, 2));
  CHECK(has_pair(e, 2, 3));
  CHECK(has_pair(e, 1, 3));
  CHECK(has_pair(e, 0, 4));
  for (int p : {1, 2, 3}) {
    CHECK(e.lambdas[p].overlaps(a2));
    CHECK(e.lambdas[p].width() <= mpq_class(1, 1000000));
  }
  CHECK(e.lambdas[4].lo == 1);
  CHECK(e.salem_first == true);

  CHECK_THROWS_AS(dynamical_degrees(IntMatrix{{2, 0}, {0, 1}}, 1), Error);
  CHECK_THROWS_AS(dynamical_degrees(IntMatrix::identity(4), 3), Error);
}

TEST_CASE("log-concavity of dynamical degrees") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 12; ++i) {
    int n = 2 + i % 2;
    IntMatrix a = random_unimodular(rng, 2 * n, 10);
    DegreeReport r = dynamical_degrees(a, n);
    for (int p = 1; p < n; ++p) CHECK(r.lambdas[p].hi * r.lambdas[p].hi >= r.lambdas[p - 1].lo * r.lambdas[p + 1].lo);
    CHECK(has_pair(r, 0, n));
    for (const auto& l : r.lambdas) CHECK(l.hi >= 1);
    // Agrees with the spectral radius of the exterior power computed directly.
    for (int p = 1; p < n; ++p) {
      RootSystem rs = isolate_roots(squarefree_part(char_poly(wedge_power(a, 2 * p))), pow2(-50));
      RealInterval rad{0, 0};
      for (const auto& b : rs.roots) {
        rad.lo = std::max(rad.lo, b.abs().lo);
        rad.hi = std::max(rad.hi, b.abs().hi);
      }
      CHECK(rad.overlaps(r.lambdas[p]));
    }
  }
}

TEST_CASE("first dynamical degree and salem numbers") {
  CHECK(first_degree_minimal_polynomial(kP1) == IntPoly{-1, 2, -3, 1});
  CHECK_FALSE(first_dynamical_degree_salem(kP1));
  CHECK(first_dynamical_degree_salem(IntPoly{1, -3, 1} * IntPoly{1, 1, 1, 1, 1}));
  CHECK(first_degree_minimal_polynomial(IntPoly{1, -3, 1} * IntPoly{1, 1, 1, 1, 1}) == IntPoly{1, -7, 1});
  CHECK_FALSE(first_dynamical_degree_salem(kP3));
  CHECK_FALSE(first_dynamical_degree_salem(kP2));
  // Irreducible, reciprocal, all roots on the unit circle: not special.
  CHECK_THROWS_AS(first_dynamical_degree_salem(IntPoly{1, 0, 0, 1, 0, 0, 1}), Error);
  CHECK_THROWS_AS(first_dynamical_degree_salem(IntPoly{2, 0, 1}), Error);
}

TEST_CASE("special corpus from small trace cubics") {
  int special = 0;
  for (int b = -3; b <= 3; ++b)
    for (int c = -3; c <= 3; ++c)
      for (int d = -3; d <= 3; ++d) {
        IntPoly p = from_trace(IntPoly{d, c, b, 1});
        if (!classify_special(p).is_special) continue;
        ++special;
        DegreeReport r = dynamical_degrees(companion(p), 3);
        CHECK(has_pair(r, 1, 2));
        CHECK_FALSE(first_dynamical_degree_salem(p));
      }
  CHECK(special > 10);
}

TEST_CASE("reducible corpus with salem factors") {
  std::vector<IntPoly> salem{IntPoly{1, -3, 1}, IntPoly{1, -4, 1}, IntPoly{1, -5, 1}, IntPoly{1, -5, 7, -5, 1},
                             IntPoly{1, -1, -1, -1, 1}};
  std::vector<IntPoly> quartic_cyclo{cyclotomic(5), cyclotomic(8), cyclotomic(10), cyclotomic(12),
                                     cyclotomic(3) * cyclotomic(4), cyclotomic(4) * cyclotomic(6)};
  std::vector<IntPoly> quad_cyclo{cyclotomic(3), cyclotomic(4), cyclotomic(6)};
  int n = 0;
  for (const auto& s : salem) {
    const auto& others = s.degree() == 2 ? quartic_cyclo : quad_cyclo;
    for (const auto& c : others) {
      IntPoly p = s * c;
      REQUIRE(p.degree() == 6);
      CHECK(first_dynamical_degree_salem(p));
      ++n;
    }
  }
  CHECK(n == 3 * 6 + 2 * 3);
}
