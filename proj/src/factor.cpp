// Factorization over Z: squarefree decomposition, Cantor-Zassenhaus modulo a
// small prime, quadratic multifactor Hensel lifting, subset recombination.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <random>

#include "tori/intpoly.hpp"

namespace tori {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ZpPoly = std::vector<u64>;
using MPoly = std::vector<mpz_class>;

// ------------------------------------------------------------ F_p[x]

struct Fp {
  u64 p;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }

  static void trim(ZpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  static int deg(const ZpPoly& a) { return static_cast<int>(a.size()) - 1; }

  ZpPoly reduce(const IntPoly& f) const {
    ZpPoly r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      mpz_class m;
      mpz_fdiv_r_ui(m.get_mpz_t(), f.coeffs()[i].get_mpz_t(), p);
      r[i] = m.get_ui();
    }
    trim(r);
    return r;
  }

  ZpPoly monic(ZpPoly a) const {
    trim(a);
    if (a.empty()) return a;
    u64 inv_lc = inv(a.back());
    for (auto& x : a) x = mul(x, inv_lc);
    return a;
  }

  ZpPoly sub(const ZpPoly& a, const ZpPoly& b) const {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
    trim(r);
    return r;
  }

  ZpPoly mul(const ZpPoly& a, const ZpPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ZpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    trim(r);
    return r;
  }

  std::pair<ZpPoly, ZpPoly> divmod(ZpPoly a, const ZpPoly& b) const {
    trim(a);
    const int db = deg(b);
    if (deg(a) < db) return {ZpPoly{}, a};
    ZpPoly q(a.size() - b.size() + 1, 0);
    u64 il = inv(b.back());
    for (int i = deg(a); i >= db; --i) {
      u64 c = mul(a[i], il);
      q[i - db] = c;
      if (!c) continue;
      for (int j = 0; j <= db; ++j) a[i - db + j] = sub(a[i - db + j], mul(c, b[j]));
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
  }

  ZpPoly rem(const ZpPoly& a, const ZpPoly& b) const { return divmod(a, b).second; }

  ZpPoly gcd(ZpPoly a, ZpPoly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      ZpPoly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  // s a + t b = gcd (monic).
  void xgcd(const ZpPoly& a, const ZpPoly& b, ZpPoly& g, ZpPoly& s, ZpPoly& t) const {
    ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      ZpPoly s2 = sub(s0, mul(q, s1));
      ZpPoly t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    u64 il = inv(r0.back());
    for (auto& x : r0) x = mul(x, il);
    for (auto& x : s0) x = mul(x, il);
    for (auto& x : t0) x = mul(x, il);
    g = r0;
    s = s0;
    t = t0;
  }

  ZpPoly derivative(const ZpPoly& a) const {
    if (a.size() <= 1) return {};
    ZpPoly r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
    trim(r);
    return r;
  }

  ZpPoly powmod(ZpPoly base, const mpz_class& e, const ZpPoly& m) const {
    ZpPoly r{1};
    base = rem(base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      r = rem(mul(r, r), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
    }
    return r;
  }
};

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ZpPoly, int>> ddf(const Fp& F, ZpPoly f) {
  std::vector<std::pair<ZpPoly, int>> out;
  const ZpPoly x{0, 1};
  ZpPoly h = F.rem(x, f);
  const mpz_class p(static_cast<unsigned long>(F.p));
  int i = 0;
  while (Fp::deg(f) >= 2 * (i + 1)) {
    ++i;
    h = F.powmod(h, p, f);
    ZpPoly g = F.gcd(f, F.sub(h, x));
    if (Fp::deg(g) > 0) {
      out.emplace_back(g, i);
      f = F.divmod(f, g).first;
      h = F.rem(h, f);
    }
  }
  if (Fp::deg(f) > 0) out.emplace_back(f, Fp::deg(f));
  return out;
}

// Equal-degree splitting (p odd).
void edf(const Fp& F, const ZpPoly& f, int d, std::mt19937_64& rng, std::vector<ZpPoly>& out) {
  if (Fp::deg(f) == d) {
    out.push_back(F.monic(f));
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), F.p, d);
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  while (true) {
    ZpPoly a(Fp::deg(f));
    for (auto& c : a) c = dist(rng);
    Fp::trim(a);
    if (Fp::deg(a) < 1) continue;
    ZpPoly g = F.gcd(a, f);
    if (Fp::deg(g) > 0 && Fp::deg(g) < Fp::deg(f)) {
      edf(F, g, d, rng, out);
      edf(F, F.divmod(f, g).first, d, rng, out);
      return;
    }
    ZpPoly b = F.powmod(a, e, f);
    if (b.empty()) continue;
    b[0] = F.sub(b[0], 1);
    Fp::trim(b);
    g = F.gcd(b, f);
    if (Fp::deg(g) > 0 && Fp::deg(g) < Fp::deg(f)) {
      edf(F, g, d, rng, out);
      edf(F, F.divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

// ------------------------------------------------------------ Z/m[x]

void mtrim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly mred(MPoly a, const mpz_class& m) {
  for (auto& x : a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  mtrim(a);
  return a;
}

MPoly madd(const MPoly& a, const MPoly& b, const mpz_class& m) {
  MPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return mred(std::move(r), m);
}

MPoly msub(const MPoly& a, const MPoly& b, const mpz_class& m) {
  MPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return mred(std::move(r), m);
}

MPoly mmul(const MPoly& a, const MPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return mred(std::move(r), m);
}

// b monic modulo m.
std::pair<MPoly, MPoly> mdivmod(MPoly a, const MPoly& b, const mpz_class& m) {
  mtrim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const int da = static_cast<int>(a.size()) - 1;
  if (da < db) return {MPoly{}, a};
  MPoly q(da - db + 1);
  for (int i = da; i >= db; --i) {
    mpz_class c = a[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) mpz_submul(a[i - db + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
  }
  a.resize(db);
  return {mred(std::move(q), m), mred(std::move(a), m)};
}

MPoly from_zp(const ZpPoly& a) {
  MPoly r;
  for (u64 x : a) r.emplace_back(static_cast<unsigned long>(x));
  return r;
}

ZpPoly to_zp(const MPoly& a, const Fp& F) {
  ZpPoly r;
  for (const auto& x : a) {
    mpz_class t;
    mpz_fdiv_r_ui(t.get_mpz_t(), x.get_mpz_t(), F.p);
    r.push_back(t.get_ui());
  }
  Fp::trim(r);
  return r;
}

// Lifts a monic factorization f = prod(factors) mod p to modulus M = p^l.
// f is monic modulo M.
void hensel_tree(const MPoly& f, const std::vector<ZpPoly>& factors, const Fp& F, const mpz_class& M,
                 std::vector<MPoly>& out) {
  if (factors.size() == 1) {
    out.push_back(f);
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ZpPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ZpPoly> right(factors.begin() + half, factors.end());
  ZpPoly g0{1}, h0{1};
  for (const auto& x : left) g0 = F.mul(g0, x);
  for (const auto& x : right) h0 = F.mul(h0, x);
  ZpPoly gg, s0, t0;
  F.xgcd(g0, h0, gg, s0, t0);
  MPoly g = from_zp(g0), h = from_zp(h0), s = from_zp(s0), t = from_zp(t0);
  mpz_class m(static_cast<unsigned long>(F.p));
  while (m < M) {
    const mpz_class mm = m * m;
    MPoly fm = mred(f, mm);
    MPoly e = msub(fm, mmul(g, h, mm), mm);
    auto [q, r] = mdivmod(mmul(s, e, mm), h, mm);
    MPoly gs = madd(madd(g, mmul(t, e, mm), mm), mmul(q, g, mm), mm);
    MPoly hs = madd(h, r, mm);
    MPoly b = msub(madd(mmul(s, gs, mm), mmul(t, hs, mm), mm), MPoly{1}, mm);
    auto [c, d] = mdivmod(mmul(s, b, mm), hs, mm);
    MPoly ss = msub(s, d, mm);
    MPoly ts = msub(msub(t, mmul(t, b, mm), mm), mmul(c, gs, mm), mm);
    g = std::move(gs);
    h = std::move(hs);
    s = std::move(ss);
    t = std::move(ts);
    m = mm;
  }
  g = mred(g, M);
  h = mred(h, M);
  hensel_tree(g, left, F, M, out);
  hensel_tree(h, right, F, M, out);
}

IntPoly symmetric(const MPoly& a, const mpz_class& M) {
  const mpz_class half = M / 2;
  std::vector<mpz_class> v;
  for (const auto& x : a) {
    mpz_class y;
    mpz_fdiv_r(y.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    if (y > half) y -= M;
    v.push_back(y);
  }
  return IntPoly(std::move(v));
}

// Subset sums of a degree multiset as a bitset.
std::bitset<512> subset_sums(const std::vector<int>& degs) {
  std::bitset<512> s;
  s.set(0);
  for (int d : degs) s |= s << d;
  return s;
}

bool next_prime_candidate(u64& p) {
  mpz_class z(static_cast<unsigned long>(p));
  mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
  p = z.get_ui();
  return true;
}

struct ModularData {
  u64 p = 0;
  std::vector<std::pair<ZpPoly, int>> ddf;
  std::size_t count = 0;
};

// f primitive, squarefree, positive leading coefficient, f(0) != 0, deg >= 2.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const int n = f.degree();
  std::bitset<512> possible;
  possible.set();
  ModularData best;
  int good = 0;
  u64 p = 2;
  const int wanted = n <= 8 ? 5 : 8;
  int tried = 0;
  while (good < wanted) {
    next_prime_candidate(p);
    if (++tried > 400) break;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
    Fp F{p};
    ZpPoly fp = F.monic(F.reduce(f));
    if (Fp::deg(F.gcd(fp, F.derivative(fp))) != 0) continue;
    ++good;
    auto dd = ddf(F, fp);
    std::vector<int> degs;
    std::size_t count = 0;
    for (const auto& [g, d] : dd) {
      for (int i = 0; i < Fp::deg(g) / d; ++i) degs.push_back(d);
      count += Fp::deg(g) / d;
    }
    if (count == 1) return {f};
    possible &= subset_sums(degs);
    bool only_trivial = true;
    for (int k = 1; k < n; ++k)
      if (possible.test(k)) only_trivial = false;
    if (only_trivial) return {f};
    if (best.p == 0 || count < best.count) best = ModularData{p, dd, count};
  }
  if (best.p == 0) throw Error(Errc::InvariantViolation, "no usable prime for factorization");

  Fp F{best.p};
  std::mt19937_64 rng(0x5eed0000ULL + best.p);
  std::vector<ZpPoly> modf;
  for (const auto& [g, d] : best.ddf) edf(F, g, d, rng, modf);
  std::sort(modf.begin(), modf.end());

  // Lift bound: every factor scaled to leading coefficient lc(f) has
  // coefficients at most 2^n ||f||_2.
  mpz_class norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  mpz_class B = root << n;
  mpz_class M(static_cast<unsigned long>(best.p));
  while (M <= 2 * B) M *= best.p;

  const mpz_class b = f.leading();
  mpz_class binv;
  mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), M.get_mpz_t());
  MPoly fm;
  for (const auto& c : f.coeffs()) fm.push_back(c * binv);
  fm = mred(fm, M);
  std::vector<MPoly> lifted;
  hensel_tree(fm, modf, F, M, lifted);

  std::vector<IntPoly> found;
  IntPoly cur = f;
  std::vector<std::size_t> T(lifted.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = i;
  std::size_t s = 1;
  while (2 * s <= T.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      // Constant-term filter.
      mpz_class c0 = b;
      for (std::size_t i : idx) {
        const MPoly& g = lifted[T[i]];
        c0 = c0 * (g.empty() ? mpz_class(0) : g[0]);
        mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), M.get_mpz_t());
      }
      if (c0 > M / 2) c0 -= M;
      mpz_class target = b * cur[0];
      if (c0 != 0 && mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) {
        MPoly prod{b};
        for (std::size_t i : idx) prod = mmul(prod, lifted[T[i]], M);
        IntPoly g = symmetric(prod, M);
        IntPoly bf = cur * b;
        if (divides(g, bf)) {
          IntPoly pg = g.primitive_part();
          found.push_back(pg);
          cur = divexact(cur, pg);
          std::vector<std::size_t> rest;
          for (std::size_t i = 0; i < T.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(T[i]);
          T = std::move(rest);
          hit = true;
          break;
        }
      }
      // Next combination.
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == T.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (cur.degree() > 0) found.push_back(cur.primitive_part());
  return found;
}

std::vector<IntPoly> factor_squarefree(IntPoly f) {
  std::vector<IntPoly> out;
  if (f[0] == 0) {
    out.push_back(IntPoly::x());
    f = divexact(f, IntPoly::x());
  }
  if (f.degree() <= 0) return out;
  if (f.degree() == 1) {
    out.push_back(f.primitive_part());
    return out;
  }
  for (auto& g : zassenhaus(f.primitive_part())) out.push_back(std::move(g));
  return out;
}

}  // namespace

FactorList factor_over_z(const IntPoly& p) {
  if (p.is_zero()) throw Error(Errc::ConstantPolynomial, "cannot factor the zero polynomial");
  FactorList out;
  mpz_class c = p.content();
  if (p.leading() < 0) c = -c;
  out.unit = c;
  if (p.degree() == 0) return out;
  IntPoly f = p.primitive_part();

  // Yun's squarefree decomposition.
  IntPoly a0 = gcd(f, f.derivative()).primitive_part();
  IntPoly b = divexact(f, a0);
  IntPoly cc = divexact(f.derivative(), a0);
  IntPoly d = cc - b.derivative();
  int mult = 1;
  while (b.degree() > 0) {
    IntPoly a = d.is_zero() ? b : gcd(b, d).primitive_part();
    b = divexact(b, a);
    cc = divexact(d, a);
    d = cc - b.derivative();
    if (a.degree() > 0)
      for (auto& g : factor_squarefree(a)) out.factors.emplace_back(std::move(g), mult);
    ++mult;
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  IntPoly check = IntPoly::constant(1);
  for (const auto& [g, m] : out.factors) check = check * pow(g, m);
  if (check * mpz_class(out.unit.get_num()) != p)
    throw Error(Errc::InvariantViolation, "factorization does not multiply back");
  return out;
}

}  // namespace tori
