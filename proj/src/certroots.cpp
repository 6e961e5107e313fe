#include "tori/certroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace tori {

const char* modulus_name(ModulusClass m) {
  switch (m) {
    case ModulusClass::Gt1: return "gt1";
    case ModulusClass::Eq1: return "eq1";
    case ModulusClass::Lt1: return "lt1";
  }
  return "?";
}

int working_bits(const mpq_class& eps) { return static_cast<int>(std::max(64L, 64 - floor_log2(eps))); }

namespace {

constexpr int kMaxPrecision = 1 << 15;

struct Cx {
  mpf_class re, im;
};

class Arith {
 public:
  explicit Arith(mp_bitcnt_t prec) : prec_(prec) {}
  mpf_class num(double v = 0) const { return mpf_class(v, prec_); }
  Cx cx(double re = 0, double im = 0) const { return Cx{num(re), num(im)}; }
  Cx add(const Cx& a, const Cx& b) const {
    Cx r = cx();
    r.re = a.re + b.re;
    r.im = a.im + b.im;
    return r;
  }
  Cx sub(const Cx& a, const Cx& b) const {
    Cx r = cx();
    r.re = a.re - b.re;
    r.im = a.im - b.im;
    return r;
  }
  Cx mul(const Cx& a, const Cx& b) const {
    Cx r = cx();
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
  }
  mpf_class abs2(const Cx& a) const {
    mpf_class r = num();
    r = a.re * a.re + a.im * a.im;
    return r;
  }
  Cx div(const Cx& a, const Cx& b) const {
    mpf_class d = abs2(b);
    Cx r = cx();
    r.re = (a.re * b.re + a.im * b.im) / d;
    r.im = (a.im * b.re - a.re * b.im) / d;
    return r;
  }
  Cx widen(const Cx& a) const {
    Cx r = cx();
    r.re = a.re;
    r.im = a.im;
    return r;
  }

 private:
  mp_bitcnt_t prec_;
};

// Log2 of |x| for a nonzero integer, without overflow.
double log2_abs(const mpz_class& x) {
  long e;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::vector<Cx> initial_points(const IntPoly& p, const Arith& A) {
  const int n = p.degree();
  // Geometric mean of root moduli when the constant term is nonzero.
  int low = 0;
  while (p[low] == 0) ++low;
  double lr = (log2_abs(p[low]) - log2_abs(p.leading())) / std::max(1, n - low);
  double r = std::exp2(std::clamp(lr, -200.0, 200.0));
  std::vector<Cx> z;
  const double two_pi = 6.283185307179586;
  for (int k = 0; k < n; ++k) {
    double th = two_pi * k / n + 0.4;
    double rk = (k < low) ? r * 1e-3 : r;
    z.push_back(A.cx(rk * std::cos(th), rk * std::sin(th)));
  }
  return z;
}

// Aberth in double precision as a cheap first stage; leaves z untouched when
// the coefficients do not fit or the iteration produces non-finite values.
void aberth_double(const IntPoly& p, std::vector<Cx>& z) {
  const int n = p.degree();
  std::vector<double> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (p[i] != 0 && std::fabs(log2_abs(p[i])) > 900) return;
    c[i] = p[i].get_d();
  }
  std::vector<std::complex<double>> w(n);
  for (int i = 0; i < n; ++i) w[i] = {z[i].re.get_d(), z[i].im.get_d()};
  for (int it = 0; it < 500; ++it) {
    bool done = true;
    for (int i = 0; i < n; ++i) {
      std::complex<double> pv = c[n], dv = 0;
      for (int k = n - 1; k >= 0; --k) {
        dv = dv * w[i] + pv;
        pv = pv * w[i] + c[k];
      }
      if (pv == 0.0 || dv == 0.0) continue;
      std::complex<double> N = pv / dv, S = 0;
      for (int j = 0; j < n; ++j)
        if (j != i && w[i] != w[j]) S += 1.0 / (w[i] - w[j]);
      std::complex<double> step = N / (1.0 - N * S);
      w[i] -= step;
      if (std::abs(step) > 1e-14 * std::max(1.0, std::abs(w[i]))) done = false;
    }
    if (done) break;
  }
  for (const auto& x : w)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return;
  for (int i = 0; i < n; ++i) {
    z[i].re = w[i].real();
    z[i].im = w[i].imag();
  }
}

void aberth(const IntPoly& p, std::vector<Cx>& z, mp_bitcnt_t prec) {
  Arith A(prec);
  const int n = p.degree();
  std::vector<mpf_class> c;
  for (int i = 0; i <= n; ++i) c.push_back(mpf_class(p[i], prec));
  for (auto& x : z) x = A.widen(x);
  mpf_class tol = A.num(1);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec > 24 ? prec - 24 : 1);
  mpf_class tol2 = A.num();
  tol2 = tol * tol;
  const int max_iter = 200 + 10 * n;
  for (int it = 0; it < max_iter; ++it) {
    bool done = true;
    for (int i = 0; i < n; ++i) {
      Cx pv = A.cx(), dv = A.cx();
      pv.re = c[n];
      for (int k = n - 1; k >= 0; --k) {
        dv = A.add(A.mul(dv, z[i]), pv);
        pv = A.mul(pv, z[i]);
        pv.re += c[k];
      }
      if (pv.re == 0 && pv.im == 0) continue;
      if (dv.re == 0 && dv.im == 0) {
        z[i].re += tol;
        done = false;
        continue;
      }
      Cx N = A.div(pv, dv);
      Cx S = A.cx();
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cx d = A.sub(z[i], z[j]);
        if (d.re == 0 && d.im == 0) continue;
        S = A.add(S, A.div(A.cx(1, 0), d));
      }
      Cx denom = A.sub(A.cx(1, 0), A.mul(N, S));
      Cx w = (denom.re == 0 && denom.im == 0) ? N : A.div(N, denom);
      z[i] = A.sub(z[i], w);
      mpf_class scale = A.abs2(z[i]);
      if (scale < 1) scale = 1;
      mpf_class w2 = A.abs2(w);
      if (w2 > tol2 * scale) done = false;
    }
    if (done) break;
  }
}

struct Certified {
  bool ok = false;
  std::vector<mpq_class> re, im, rad;
  mpq_class sep;  // lower bound on the minimum root distance
};

// Gerschgorin bound on the Weierstrass corrections: the discs D(c_i, n|W_i|)
// contain all roots and each isolated disc holds exactly one. Centers are
// a_i / 2^s with integer a_i, so the bound is computed over Z.
Certified certify(const IntPoly& p, const std::vector<Cx>& z, long s) {
  Certified out;
  const int n = p.degree();
  std::vector<mpz_class> ar(n), ai(n);
  for (int i = 0; i < n; ++i) {
    mpf_class t(z[i].re, z[i].re.get_prec());
    mpf_mul_2exp(t.get_mpf_t(), t.get_mpf_t(), static_cast<mp_bitcnt_t>(s));
    ar[i] = mpz_class(t);
    t = z[i].im;
    mpf_mul_2exp(t.get_mpf_t(), t.get_mpf_t(), static_cast<mp_bitcnt_t>(s));
    ai[i] = mpz_class(t);
    out.re.push_back(mpq_class(ar[i]) * pow2(-s));
    out.im.push_back(mpq_class(ai[i]) * pow2(-s));
  }
  // Scaled coefficients c_k 2^(s(n-k)).
  std::vector<mpz_class> cs(n + 1);
  for (int k = 0; k <= n; ++k) cs[k] = p[k] << static_cast<mp_bitcnt_t>(s * (n - k));
  const mpz_class lc2 = p.leading() * p.leading();
  for (int i = 0; i < n; ++i) {
    // p(z_i) 2^(ns) by Horner over Z[i].
    mpz_class pr = cs[n], pi = 0, nr;
    for (int k = n - 1; k >= 0; --k) {
      nr = pr * ar[i] - pi * ai[i] + cs[k];
      pi = pr * ai[i] + pi * ar[i];
      pr.swap(nr);
    }
    // prod |z_i - z_j|^2 2^(2s(n-1)).
    mpz_class den = lc2;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      mpz_class dr = ar[i] - ar[j], di = ai[i] - ai[j];
      mpz_class m = dr * dr + di * di;
      if (m == 0) return out;
      den *= m;
    }
    // |W_i|^2 = |p|^2 2^(-2ns) / (lc^2 prod 2^(-2s(n-1))) = |p|^2 / (den 2^(2s)).
    mpz_class num = pr * pr + pi * pi;
    mpq_class w2(num, den << static_cast<mp_bitcnt_t>(2 * s));
    w2.canonicalize();
    out.rad.push_back(dyadic_upper(sqrt_upper(w2) * n));
  }
  mpq_class sep = -1;
  const mpq_class unit = pow2(-s);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mpz_class dr = ar[i] - ar[j], di = ai[i] - ai[j];
      mpq_class d2(dr * dr + di * di);
      d2 *= unit * unit;
      mpq_class sum = out.rad[i] + out.rad[j];
      if (d2 <= sum * sum) return out;
      mpq_class lo = sqrt_lower(d2) - sum;
      if (lo <= 0) return out;
      if (sep < 0 || lo < sep) sep = lo;
    }
  if (n == 1) sep = 1;
  out.sep = sep;
  out.ok = true;
  return out;
}

mpq_class round_to_grid(const mpq_class& x, const mpq_class& g) {
  mpq_class t = x / g + mpq_class(1, 2);
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return mpq_class(m) * g;
}

// Balls of radius e/2 centered on a grid of spacing e/16, where e = eps 2^-k
// is capped by a separation scale fixed before eps is looked at. Two runs at
// eps and eps/2 then give nested balls.
std::vector<ComplexBall> isolate_raw(const IntPoly& p, const mpq_class& eps, int precision_bits) {
  const int n = p.degree();
  if (n == 1) {
    mpq_class r(-p[0], p[1]);
    r.canonicalize();
    mpq_class g = eps / 16;
    return {ComplexBall{round_to_grid(r, g), 0, eps / 2}};
  }
  mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(std::max(64, precision_bits));
  Arith A(prec);
  std::vector<Cx> z = initial_points(p, A);
  aberth_double(p, z);
  std::optional<mpq_class> e;
  while (prec <= static_cast<mp_bitcnt_t>(kMaxPrecision)) {
    aberth(p, z, prec);
    long top = 0;
    for (const auto& x : z) {
      long e;
      mpf_get_d_2exp(&e, x.re.get_mpf_t());
      top = std::max(top, e);
      mpf_get_d_2exp(&e, x.im.get_mpf_t());
      top = std::max(top, e);
    }
    Certified c = certify(p, z, static_cast<long>(prec) - top);
    if (c.ok) {
      if (!e) {
        mpq_class d0 = pow2(floor_log2(c.sep / 8));
        mpq_class ee = eps;
        while (ee > d0) ee /= 2;
        e = ee;
      }
      const mpq_class lim = *e / 16;
      bool fine = std::all_of(c.rad.begin(), c.rad.end(), [&](const mpq_class& r) { return r <= lim; });
      if (fine) {
        std::vector<ComplexBall> out;
        for (int i = 0; i < n; ++i)
          out.push_back(ComplexBall{round_to_grid(c.re[i], lim), round_to_grid(c.im[i], lim), *e / 2});
        return out;
      }
    }
    prec *= 2;
  }
  throw Error(Errc::PrecisionExhausted, "root isolation did not certify within the precision cap");
}

bool less_center(const ComplexBall& a, const ComplexBall& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

// Maps each ball of `fine` to the unique ball of `coarse` it meets.
std::vector<int> match_balls(const std::vector<ComplexBall>& coarse, const std::vector<ComplexBall>& fine) {
  std::vector<int> m(coarse.size(), -1);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    int hit = -1;
    for (std::size_t i = 0; i < coarse.size(); ++i)
      if (coarse[i].intersects(fine[j])) {
        if (hit >= 0) throw Error(Errc::InvariantViolation, "refined ball meets two balls");
        hit = static_cast<int>(i);
      }
    if (hit < 0 || m[hit] >= 0) throw Error(Errc::InvariantViolation, "refinement lost a root");
    m[hit] = static_cast<int>(j);
  }
  return m;
}

// The unique index whose ball meets b among the candidates, or -1.
int unique_hit(const std::vector<ComplexBall>& balls, const ComplexBall& b, const std::vector<int>& candidates,
               bool& ambiguous) {
  int hit = -1;
  for (int i : candidates)
    if (balls[i].intersects(b)) {
      if (hit >= 0) ambiguous = true;
      hit = i;
    }
  return hit;
}

struct Structure {
  std::vector<int> conj, recip;
  std::vector<ModulusClass> modulus;
};

std::optional<Structure> derive_structure(const IntPoly& p, const IntPoly& g, const std::vector<ComplexBall>& b) {
  const int n = static_cast<int>(b.size());
  Structure s;
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  bool amb = false;
  for (int i = 0; i < n; ++i) {
    int j = unique_hit(b, b[i].conj(), all, amb);
    if (amb || j < 0) return std::nullopt;
    s.conj.push_back(j);
  }
  for (int i = 0; i < n; ++i)
    if (s.conj[s.conj[i]] != i) return std::nullopt;

  // Roots of g = gcd(p, reversed p) are closed under inversion.
  s.recip.assign(n, -1);
  std::vector<int> groots;
  if (g.degree() == p.degree()) {
    groots = all;
  } else if (g.degree() > 0) {
    const int bits = working_bits(b[0].rad);
    for (int i = 0; i < n; ++i)
      if (eval(g, b[i], bits).may_contain_zero()) groots.push_back(i);
    if (static_cast<int>(groots.size()) != g.degree()) return std::nullopt;
  }
  for (int i : groots) {
    if (b[i].may_contain_zero()) return std::nullopt;
    ComplexBall inv = inverse_enclosure(b[i]);
    int j = unique_hit(b, inv, groots, amb);
    if (amb || j < 0) return std::nullopt;
    s.recip[i] = j;
  }
  for (int i = 0; i < n; ++i) {
    if (s.recip[i] >= 0 && s.recip[s.recip[i]] != i) return std::nullopt;
    if (s.recip[i] >= 0 && s.recip[i] == s.conj[i]) {
      s.modulus.push_back(ModulusClass::Eq1);
      continue;
    }
    mpq_class m2 = b[i].re * b[i].re + b[i].im * b[i].im;
    mpq_class up = 1 + b[i].rad, dn = 1 - b[i].rad;
    if (m2 > up * up)
      s.modulus.push_back(ModulusClass::Gt1);
    else if (dn > 0 && m2 < dn * dn)
      s.modulus.push_back(ModulusClass::Lt1);
    else
      return std::nullopt;
  }
  return s;
}

mpq_class power_of_two_floor(const mpq_class& eps) {
  if (eps <= 0) throw Error(Errc::InvariantViolation, "eps must be positive");
  return pow2(floor_log2(eps));
}

}  // namespace

namespace {
int g_precision_bits = 128;
}  // namespace

int default_precision_bits() { return g_precision_bits; }

void set_default_precision_bits(int bits) {
  if (bits < 53) throw Error(Errc::InvalidArgument, "precision must be at least 53 bits");
  g_precision_bits = bits;
}

RootSystem isolate_roots(const IntPoly& p, const mpq_class& eps, int precision_bits) {
  if (precision_bits <= 0) precision_bits = g_precision_bits;
  if (p.degree() < 1) throw Error(Errc::ConstantPolynomial, "no roots to isolate");
  if (!is_squarefree(p)) throw Error(Errc::NotSquarefree, "root isolation needs a squarefree polynomial");
  RootSystem rs;
  rs.poly = p;
  rs.eps = power_of_two_floor(eps);
  rs.precision_bits = precision_bits;
  rs.roots = isolate_raw(p, rs.eps, precision_bits);
  std::sort(rs.roots.begin(), rs.roots.end(), less_center);

  IntPoly rev = p.reversed();
  IntPoly g = p[0] == 0 ? IntPoly::constant(1) : gcd(p, rev);
  std::vector<ComplexBall> cur = rs.roots;
  std::vector<int> map(rs.size());
  std::iota(map.begin(), map.end(), 0);
  mpq_class e = rs.eps;
  for (int level = 0; level < 40; ++level) {
    auto s = derive_structure(p, g, cur);
    if (s) {
      // cur[map[i]] refines rs.roots[i].
      std::vector<int> inv(rs.size());
      for (std::size_t i = 0; i < rs.size(); ++i) inv[map[i]] = static_cast<int>(i);
      rs.conj.resize(rs.size());
      rs.recip.resize(rs.size());
      rs.modulus.resize(rs.size());
      for (std::size_t i = 0; i < rs.size(); ++i) {
        rs.conj[i] = inv[s->conj[map[i]]];
        rs.recip[i] = s->recip[map[i]] < 0 ? -1 : inv[s->recip[map[i]]];
        rs.modulus[i] = s->modulus[map[i]];
      }
      return rs;
    }
    e /= pow2(16);
    cur = isolate_raw(p, e, precision_bits);
    map = match_balls(rs.roots, cur);
  }
  throw Error(Errc::PrecisionExhausted, "could not certify conjugation and inversion pairings");
}

RootSystem RootSystem::refine(const mpq_class& new_eps) const {
  RootSystem fine = isolate_roots(poly, new_eps, precision_bits);
  std::vector<int> m = match_balls(roots, fine.roots);
  return fine.permuted(m);
}

RootSystem RootSystem::permuted(const std::vector<int>& order) const {
  RootSystem r;
  r.poly = poly;
  r.eps = eps;
  r.precision_bits = precision_bits;
  std::vector<int> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < order.size(); ++i) {
    r.roots.push_back(roots[order[i]]);
    r.conj.push_back(inv[conj[order[i]]]);
    r.recip.push_back(recip[order[i]] < 0 ? -1 : inv[recip[order[i]]]);
    r.modulus.push_back(modulus[order[i]]);
  }
  return r;
}

RootSystem canonical_special_order(const RootSystem& rs) {
  if (rs.size() != 6) throw Error(Errc::NotSpecial, "expected six roots");
  int z1 = -1, z3 = -1;
  int eq = 0, gt = 0, lt = 0;
  for (int i = 0; i < 6; ++i) {
    if (rs.conj[i] == i) throw Error(Errc::NotSpecial, "real root present");
    if (rs.recip[i] < 0) throw Error(Errc::NotSpecial, "roots not closed under inversion");
    switch (rs.modulus[i]) {
      case ModulusClass::Eq1:
        ++eq;
        if (rs.roots[i].im > 0) z1 = i;
        break;
      case ModulusClass::Gt1:
        ++gt;
        if (rs.roots[i].im > 0) z3 = i;
        break;
      case ModulusClass::Lt1: ++lt; break;
    }
  }
  if (eq != 2 || gt != 2 || lt != 2 || z1 < 0 || z3 < 0) throw Error(Errc::NotSpecial, "root pattern is not special");
  const int z2 = rs.conj[z1], z4 = rs.recip[z3], z5 = rs.conj[z4], z6 = rs.conj[z3];
  return rs.permuted({z1, z2, z3, z4, z5, z6});
}

ComplexBall eval(const RootExpr& e, const std::vector<ComplexBall>& roots, int bits) {
  switch (e.kind) {
    case RootExpr::Kind::Product: {
      ComplexBall acc = ComplexBall::exact(1);
      for (int i : e.idx) acc = mul(acc, roots.at(i), bits);
      return acc;
    }
    case RootExpr::Kind::Sum: {
      ComplexBall acc = ComplexBall::exact(0);
      for (int i : e.idx) acc = acc + roots.at(i);
      return round_ball(acc, bits);
    }
    case RootExpr::Kind::Linear: {
      ComplexBall acc = ComplexBall::exact(0);
      for (std::size_t k = 0; k < e.idx.size(); ++k) acc = acc + scale(roots.at(e.idx[k]), e.weights.at(k));
      return round_ball(acc, bits);
    }
    case RootExpr::Kind::ProductSum: {
      ComplexBall prod = ComplexBall::exact(1), sum = ComplexBall::exact(0);
      for (int i : e.idx) {
        prod = mul(prod, roots.at(i), bits);
        sum = sum + roots.at(i);
      }
      return round_ball(prod + scale(sum, e.weights.at(0)), bits);
    }
  }
  return ComplexBall{};
}

std::vector<std::size_t> certify_value_match(const RootSystem& roots, const std::vector<RootExpr>& values,
                                             const FactorList& targets) {
  RootSystem rs = roots;
  const mpq_class floor = pow2(-4096);
  while (true) {
    const int bits = working_bits(rs.eps) + 32;
    std::vector<std::size_t> out(values.size());
    bool unique = true;
    for (std::size_t v = 0; v < values.size() && unique; ++v) {
      ComplexBall b = eval(values[v], rs.roots, bits);
      int hit = -1;
      for (std::size_t f = 0; f < targets.factors.size(); ++f)
        if (eval(targets.factors[f].first, b, bits).may_contain_zero()) {
          if (hit >= 0) {
            unique = false;
            break;
          }
          hit = static_cast<int>(f);
        }
      if (hit < 0) throw Error(Errc::InvariantViolation, "value is a root of no target factor");
      out[v] = static_cast<std::size_t>(hit);
    }
    if (unique) {
      std::vector<int> count(targets.factors.size(), 0);
      for (std::size_t f : out) ++count[f];
      for (std::size_t f = 0; f < targets.factors.size(); ++f)
        if (count[f] != targets.factors[f].first.degree() * targets.factors[f].second)
          throw Error(Errc::InvariantViolation, "value counts disagree with factor degrees");
      return out;
    }
    if (rs.eps <= floor) break;
    rs = rs.refine(rs.eps / pow2(32));
  }
  throw Error(Errc::Ambiguous, "values could not be separated between factors");
}

}  // namespace tori
