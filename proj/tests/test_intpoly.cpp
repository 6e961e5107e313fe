#include <doctest.h>

#include <random>

#include "tori/certroots.hpp"
#include "tori/intpoly.hpp"

using namespace tori;

namespace {

IntPoly random_poly(std::mt19937& rng, int max_deg, int bound, bool monic = false) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-bound, bound);
  int d = deg(rng);
  std::vector<mpz_class> c(d + 1);
  for (auto& x : c) x = coef(rng);
  if (monic) c[d] = 1;
  return IntPoly(std::move(c));
}

const IntPoly kP1{1, 3, 5, 5, 5, 3, 1};
const IntPoly kP2{1, -5, 13, -11, 13, -5, 1};
const IntPoly kP3{1, 1, 3, 1, 3, 1, 1};

}  // namespace

TEST_CASE("parse and render") {
  CHECK(IntPoly::parse("1,3,5,5,5,3,1") == kP1);
  CHECK(IntPoly::parse("1,\xE2\x88\x92" "5,13,-11,13,-5,1") == kP2);
  CHECK(kP1.to_string() == "1,3,5,5,5,3,1");
  CHECK(IntPoly({-1, -1, 0, 1}).pretty() == "t^3 - t - 1");
  CHECK_THROWS_AS(IntPoly::parse("1,x"), Error);
}

TEST_CASE("discriminant") {
  CHECK(discriminant(IntPoly{-1, -1, 0, 1}) == -23);
  CHECK(discriminant(IntPoly{-1, 0, 1}) == 4);
  CHECK(discriminant(IntPoly{-1, 2, 3, 1}) == -23);
  CHECK(discriminant(IntPoly{1, 2, 1}) == 0);
  try {
    discriminant(IntPoly{5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConstantPolynomial);
  }
}

TEST_CASE("sturm counts") {
  CHECK(sturm_count(IntPoly{-1, 2, 3, 1}, -2, 2) == 1);
  CHECK(sturm_count(IntPoly{-2, 0, 1}, 0, 2) == 1);
  CHECK(sturm_count(IntPoly{-1, -1, 0, 1}, 1, 2) == 1);
  CHECK(sturm_count(IntPoly{-2, 0, 1} * IntPoly{-2, 0, 1}, -2, 2) == 2);
  CHECK(real_root_count(IntPoly{-1, -1, 0, 1}) == 1);
  CHECK(real_root_count(IntPoly{0, -1, 0, 1}) == 3);
  try {
    sturm_count(IntPoly{-1, 0, 1}, 1, 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EndpointIsRoot);
  }
}

TEST_CASE("reciprocity and trace polynomials") {
  CHECK(is_reciprocal(kP1));
  CHECK_FALSE(is_reciprocal(IntPoly{-1, -1, 0, 1}));
  CHECK(trace_polynomial(kP2) == IntPoly{-1, 10, -5, 1});
  CHECK(trace_polynomial(kP3) == IntPoly{-1, 0, 1, 1});
  CHECK(trace_polynomial(kP1) == IntPoly{-1, 2, 3, 1});
  CHECK(from_trace(IntPoly{1, -3, 0, 1}) == IntPoly{1, 0, 0, 1, 0, 0, 1});
  CHECK_THROWS_AS(trace_polynomial(IntPoly{1, 1, 1, 1, 2}), Error);
  try {
    trace_polynomial(IntPoly{1, 2, 2, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OddDegree);
  }
}

TEST_CASE("factorization examples") {
  FactorList f = factor_over_z(IntPoly{-1, 0, 1});
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == IntPoly{-1, 1});
  CHECK(f.factors[1].first == IntPoly{1, 1});
  CHECK(is_irreducible(kP1));
  CHECK(is_irreducible(kP2));
  CHECK(is_irreducible(kP3));
  // x^4 + 1 is irreducible over Z but splits modulo every prime.
  CHECK(is_irreducible(IntPoly{1, 0, 0, 0, 1}));
  FactorList g = factor_over_z(IntPoly{-6, 0, 2} * IntPoly{-6, 0, 2} * IntPoly{1, 1});
  CHECK(g.unit == 4);
  CHECK(g.expand() == IntPoly{-6, 0, 2} * IntPoly{-6, 0, 2} * IntPoly{1, 1});
  // Swinnerton-Dyer style: (x^2-2)(x^2-3) and a product with many modular factors.
  IntPoly sd{1, 0, -10, 0, 1};
  CHECK(is_irreducible(sd));
  FactorList h = factor_over_z(sd * IntPoly{-1, 0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(h.expand() == sd * IntPoly{-1, 0, 0, 0, 0, 0, 0, 0, 1});
  CHECK(h.degree_multiset() == std::vector<int>{1, 1, 2, 4, 4});
}

TEST_CASE("factor round trip on random products") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 500; ++i) {
    IntPoly p = random_poly(rng, 8, 9), q = random_poly(rng, 8, 9);
    if (p.is_zero() || q.is_zero()) continue;
    IntPoly pq = p * q;
    FactorList f = factor_over_z(pq);
    CHECK(f.expand() == pq);
    for (const auto& [g, m] : f.factors) {
      CHECK(g.leading() > 0);
      CHECK(g.content() == 1);
      CHECK(m >= 1);
    }
  }
}

TEST_CASE("trace polynomial round trip") {
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    IntPoly q = random_poly(rng, 10, 9, true);
    if (q.degree() < 1) continue;
    CHECK(trace_polynomial(from_trace(q)) == q);
  }
}

TEST_CASE("sturm agrees with certified isolation") {
  std::mt19937 rng(7);
  int done = 0;
  while (done < 200) {
    std::uniform_int_distribution<int> dd(3, 4), cc(-9, 9);
    int d = dd(rng);
    std::vector<mpz_class> c(d + 1);
    for (auto& x : c) x = cc(rng);
    if (c[d] == 0) c[d] = 1;
    IntPoly p(c);
    if (!is_squarefree(p) || p[0] == 0) continue;
    mpz_class b = cauchy_bound(p);
    int s = sturm_count(p, mpq_class(-b), mpq_class(b));
    RootSystem rs = isolate_roots(p, pow2(-30));
    int real = 0;
    for (std::size_t i = 0; i < rs.size(); ++i)
      if (rs.conj[i] == static_cast<int>(i)) ++real;
    CHECK(s == real);
    CHECK(s == real_root_count(p));
    ++done;
  }
}

TEST_CASE("discriminant vanishes iff repeated factor") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> cc(-4, 4);
  int zero = 0;
  for (int i = 0; i < 200; ++i) {
    IntPoly p;
    if (i % 4 == 0) {
      IntPoly l{cc(rng), 1};
      p = l * l * IntPoly{cc(rng), cc(rng) == 0 ? 1 : 2};
    } else {
      p = IntPoly{cc(rng), cc(rng), cc(rng), 1};
    }
    bool repeated = false;
    for (const auto& [g, m] : factor_over_z(p).factors)
      if (m > 1) repeated = true;
    CHECK((discriminant(p) == 0) == repeated);
    zero += discriminant(p) == 0;
  }
  CHECK(zero > 20);
}

TEST_CASE("bezout certificates") {
  auto a = ext_gcd_rational(IntPoly{-2, 1}, IntPoly{-3, 1});
  CHECK(a.h1 == IntPoly{1});
  CHECK(a.h2 == IntPoly{-1});
  CHECK(a.n == 1);
  auto b = ext_gcd_rational(IntPoly{1, 0, 1}, IntPoly{-1, 0, 1});
  CHECK(b.h1 == IntPoly{1});
  CHECK(b.h2 == IntPoly{-1});
  CHECK(b.n == 2);
  auto c = ext_gcd_rational(IntPoly{1, -3, 1}, IntPoly{-1, 0, 1});
  CHECK(c.h1 == IntPoly{2, 3});
  CHECK(c.h2 == IntPoly{7, -3});
  CHECK(c.n == -5);
  try {
    ext_gcd_rational(IntPoly{-1, 0, 1}, IntPoly{-1, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCoprime);
  }
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    IntPoly f = random_poly(rng, 6, 9), g = random_poly(rng, 6, 9);
    if (f.degree() < 1 || g.degree() < 1 || gcd(f, g).degree() > 0) continue;
    auto r = ext_gcd_rational(f, g);
    CHECK(f * r.h1 + g * r.h2 == IntPoly::constant(r.n));
  }
}

TEST_CASE("graeffe squares the roots") {
  CHECK(graeffe(IntPoly{-2, 1}) == IntPoly{-4, 1});
  CHECK(graeffe(IntPoly{1, 0, 1}) == IntPoly{1, 2, 1});
  // t^2 - 3t + 1 has roots phi^2, phi^-2; squares satisfy t^2 - 7t + 1.
  CHECK(graeffe(IntPoly{1, -3, 1}) == IntPoly{1, -7, 1});
}

TEST_CASE("rational polynomials") {
  RatPoly a(IntPoly{1, 2}, 4), b(IntPoly{3}, 2);
  CHECK(a.denominator() == 4);
  CHECK((a + b) == RatPoly(IntPoly{7, 2}, 4));
  auto [q, r] = divmod(RatPoly(IntPoly{1, 0, 1}), RatPoly(IntPoly{0, 2}));
  CHECK(q == RatPoly(IntPoly{0, 1}, 2));
  CHECK(r == RatPoly(IntPoly{1}));
}
