#include <doctest.h>

#include <random>

#include "tori/certroots.hpp"
#include "tori/exactlin.hpp"

using namespace tori;

namespace {

const IntPoly kP1{1, 3, 5, 5, 5, 3, 1};

// Sum and product of the centers lie within the propagated radii of the
// coefficient values.
void check_vieta(const RootSystem& rs) {
  const IntPoly& p = rs.poly;
  int n = p.degree();
  ComplexBall sum = ComplexBall::exact(0), prod = ComplexBall::exact(1);
  for (const auto& r : rs.roots) {
    sum = sum + r;
    prod = mul(prod, r, 256);
  }
  mpq_class a1 = mpq_class(-p[n - 1]) / p.leading();
  mpq_class a0 = mpq_class(n % 2 ? -p[0] : p[0]) / p.leading();
  CHECK(sum.contains(ComplexBall::exact(a1)));
  CHECK(prod.contains(ComplexBall::exact(a0)));
}

}  // namespace

TEST_CASE("isolation examples") {
  RootSystem i = isolate_roots(IntPoly{1, 0, 1}, pow2(-40));
  REQUIRE(i.size() == 2);
  CHECK(i.conj[0] == 1);
  CHECK(i.modulus[0] == ModulusClass::Eq1);
  CHECK(i.modulus[1] == ModulusClass::Eq1);
  CHECK(i.roots[0].contains(ComplexBall::exact(0, -1)) != i.roots[1].contains(ComplexBall::exact(0, -1)));

  RootSystem s = isolate_roots(kP1, pow2(-40));
  int gt = 0, eq = 0, lt = 0;
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(s.conj[k] != static_cast<int>(k));
    gt += s.modulus[k] == ModulusClass::Gt1;
    eq += s.modulus[k] == ModulusClass::Eq1;
    lt += s.modulus[k] == ModulusClass::Lt1;
  }
  CHECK(gt == 2);
  CHECK(eq == 2);
  CHECK(lt == 2);

  RootSystem c = isolate_roots(IntPoly{-1, -1, 0, 1}, pow2(-60));
  int real = -1;
  for (std::size_t k = 0; k < 3; ++k)
    if (c.conj[k] == static_cast<int>(k)) real = static_cast<int>(k);
  REQUIRE(real >= 0);
  CHECK(c.roots[real].re > mpq_class(132471795724474, 100000000000000));
  CHECK(c.roots[real].re < mpq_class(132471795724475, 100000000000000));
  CHECK(c.roots[real].rad <= pow2(-60));
  // Not reciprocal: no inversion pairing.
  for (int r : c.recip) CHECK(r == -1);

  CHECK_THROWS_AS(isolate_roots(IntPoly{1, 2, 1}, pow2(-10)), Error);
  CHECK_THROWS_AS(isolate_roots(IntPoly{3}, pow2(-10)), Error);
}

TEST_CASE("vieta and pairing invariants") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> cc(-6, 6), dd(2, 9);
  int done = 0;
  while (done < 100) {
    int d = dd(rng);
    std::vector<mpz_class> v(d + 1);
    for (auto& x : v) x = cc(rng);
    v[d] = 1;
    bool recip = done % 2 == 0;
    if (recip)
      for (int k = 0; k <= d; ++k) v[d - k] = v[k];
    IntPoly p(v);
    if (p.degree() < 1 || p[0] == 0 || !is_squarefree(p)) continue;
    RootSystem rs = isolate_roots(p, pow2(-50));
    check_vieta(rs);
    for (std::size_t k = 0; k < rs.size(); ++k) {
      CHECK(rs.roots[k].rad <= pow2(-50));
      CHECK(rs.conj[rs.conj[k]] == static_cast<int>(k));
      if (recip) {
        REQUIRE(rs.recip[k] >= 0);
        CHECK(rs.recip[rs.recip[k]] == static_cast<int>(k));
        CHECK(rs.recip[rs.conj[k]] == rs.conj[rs.recip[k]]);
        CHECK((rs.modulus[k] == ModulusClass::Eq1) == (rs.recip[k] == rs.conj[k]));
      }
      for (std::size_t j = k + 1; j < rs.size(); ++j) CHECK_FALSE(rs.roots[k].intersects(rs.roots[j]));
    }
    ++done;
  }
}

TEST_CASE("monotone refinement on sextics") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> cc(-8, 8);
  int done = 0;
  while (done < 100) {
    std::vector<mpz_class> v(7);
    for (auto& x : v) x = cc(rng);
    v[6] = 1;
    IntPoly p(v);
    if (!is_squarefree(p) || p[0] == 0) continue;
    mpq_class eps = pow2(-20);
    RootSystem a = isolate_roots(p, eps);
    RootSystem b = isolate_roots(p, eps / 2);
    REQUIRE(a.size() == b.size());
    for (const auto& fine : b.roots) {
      int owners = 0;
      for (const auto& coarse : a.roots) owners += coarse.contains(fine);
      CHECK(owners == 1);
    }
    RootSystem r = a.refine(eps / 1024);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a.roots[k].contains(r.roots[k]));
      CHECK(r.conj[k] == a.conj[k]);
    }
    ++done;
  }
}

TEST_CASE("canonical labels of a special sextic") {
  RootSystem z = canonical_special_order(isolate_roots(kP1, pow2(-60)));
  CHECK(z.modulus[0] == ModulusClass::Eq1);
  CHECK(z.modulus[1] == ModulusClass::Eq1);
  CHECK(z.modulus[2] == ModulusClass::Gt1);
  CHECK(z.modulus[3] == ModulusClass::Lt1);
  CHECK(z.modulus[4] == ModulusClass::Lt1);
  CHECK(z.modulus[5] == ModulusClass::Gt1);
  CHECK(z.roots[0].im > 0);
  CHECK(z.roots[2].im > 0);
  CHECK(z.conj[0] == 1);
  CHECK(z.conj[2] == 5);
  CHECK(z.conj[3] == 4);
  CHECK(z.recip[2] == 3);
  CHECK(z.recip[0] == 1);
  CHECK_THROWS_AS(canonical_special_order(isolate_roots(IntPoly{1, 0, 0, 1, 0, 0, 1}, pow2(-30))), Error);
  CHECK_THROWS_AS(canonical_special_order(isolate_roots(IntPoly{-1, -1, 0, 1}, pow2(-30))), Error);
}

TEST_CASE("value matching examples") {
  RootSystem z = canonical_special_order(isolate_roots(kP1, pow2(-60)));
  FactorList w2 = factor_over_z(char_poly(wedge_power(companion(kP1), 2)));
  std::vector<RootExpr> pairs;
  for (const auto& s : k_subsets(6, 2)) pairs.push_back(RootExpr::product(s));
  auto a = certify_value_match(z, pairs, w2);
  std::vector<int> per(w2.factors.size(), 0);
  for (auto f : a) ++per[f];
  for (std::size_t f = 0; f < w2.factors.size(); ++f) {
    const auto& [g, m] = w2.factors[f];
    CHECK(per[f] == g.degree() * m);
    if (g == IntPoly{-1, 1}) CHECK(per[f] == 3);
  }
  // The three unit products are the reciprocal pairs.
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& s = pairs[k].idx;
    bool unit = z.recip[s[0]] == s[1];
    CHECK((w2.factors[a[k]].first == IntPoly{-1, 1}) == unit);
  }

  RootSystem i = isolate_roots(IntPoly{1, 0, 1}, pow2(-40));
  FactorList w = factor_over_z(char_poly(wedge_power(companion(IntPoly{1, 0, 1}), 2)));
  auto b = certify_value_match(i, {RootExpr::product({0, 1})}, w);
  CHECK(w.factors[b[0]].first == IntPoly{-1, 1});

  FactorList w3 = factor_over_z(char_poly(wedge_power(companion(kP1), 3)));
  std::vector<RootExpr> triples;
  std::size_t ap = 0;
  for (const auto& s : k_subsets(6, 3)) {
    if (s == std::vector<int>{0, 2, 4}) ap = triples.size();
    triples.push_back(RootExpr::product(s));
  }
  auto c = certify_value_match(z, triples, w3);
  CHECK(w3.factors[c[ap]].first == IntPoly{-1, 1});
}

TEST_CASE("ball arithmetic") {
  ComplexBall a{1, 2, mpq_class(1, 100)};
  ComplexBall b = inverse_enclosure(a);
  CHECK(b.contains(ComplexBall::exact(mpq_class(1, 5), mpq_class(-2, 5))));
  CHECK_THROWS_AS(inverse_enclosure(ComplexBall{0, 0, 1}), Error);
  CHECK(mul(a, a, 64).contains(ComplexBall::exact(-3, 4)));
  auto c = poly_from_roots({ComplexBall::exact(2), ComplexBall::exact(3)}, 64);
  CHECK(round_integer_poly(c) == IntPoly{6, -5, 1});
  CHECK(pow2(-3) == mpq_class(1, 8));
  CHECK(floor_log2(mpq_class(1, 3)) == -2);
  CHECK(sqrt_lower(2) * sqrt_lower(2) <= 2);
  CHECK(sqrt_upper(2) * sqrt_upper(2) >= 2);
  CHECK(decimal(mpq_class(1, 4), 5) == "0.25");
}
