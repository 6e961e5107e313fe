#include <cstdio>
#include <vector>

#include "tori/certroots.hpp"

namespace tori {

mpq_class pow2(long e) {
  mpq_class q = 1;
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

long floor_log2(const mpq_class& q) {
  if (q <= 0) throw Error(Errc::InvariantViolation, "log2 of a nonpositive number");
  long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  // q lies in (2^(e-1), 2^(e+1)).
  return q >= pow2(e) ? e : e - 1;
}

namespace {

// floor or ceiling of q * 2^s.
mpz_class scaled(const mpq_class& q, long s, bool up) {
  mpz_class n = q.get_num(), d = q.get_den();
  if (s >= 0)
    n <<= s;
  else
    d <<= -s;
  mpz_class r;
  if (up)
    mpz_cdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  else
    mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

mpq_class from_scaled(const mpz_class& m, long s) { return mpq_class(m) * pow2(-s); }

}  // namespace

mpq_class dyadic_upper(const mpq_class& q, int bits) {
  if (q <= 0) return 0;
  long s = bits - 1 - floor_log2(q);
  return from_scaled(scaled(q, s, true), s);
}

mpq_class dyadic_lower(const mpq_class& q, int bits) {
  if (q <= 0) return 0;
  long s = bits - 1 - floor_log2(q);
  return from_scaled(scaled(q, s, false), s);
}

mpq_class dyadic_nearest(const mpq_class& q, int bits) {
  if (q == 0) return 0;
  long s = bits - 1 - floor_log2(abs(q));
  mpq_class t = q * pow2(s) + mpq_class(1, 2);
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return from_scaled(m, s);
}

namespace {

// N = floor(q 4^e) with about 128 bits, so sqrt(q) = sqrt(N..N+1) / 2^e.
std::pair<mpz_class, long> sqrt_scale(const mpq_class& q) {
  long e = (128 - floor_log2(q)) / 2;
  return {scaled(q, 2 * e, false), e};
}

}  // namespace

mpq_class sqrt_upper(const mpq_class& q) {
  if (q <= 0) return 0;
  auto [n, e] = sqrt_scale(q);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return from_scaled(r + 1, e);
}

mpq_class sqrt_lower(const mpq_class& q) {
  if (q <= 0) return 0;
  auto [n, e] = sqrt_scale(q);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return from_scaled(r, e);
}

std::string decimal(const mpq_class& q, int digits) {
  if (q == 0) return "0";
  long lg = floor_log2(abs(q));
  mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(digits * 3.33 + 64 + std::max(0L, lg < 0 ? -lg : lg) / 8);
  mpf_class f(q, prec);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  return std::string(buf.data());
}

std::string RealInterval::str(int digits) const {
  return "[" + decimal(lo, digits) + ", " + decimal(hi, digits) + "]";
}

ComplexBall ComplexBall::exact(const mpq_class& re, const mpq_class& im) { return ComplexBall{re, im, 0}; }

bool ComplexBall::intersects(const ComplexBall& o) const {
  mpq_class dr = re - o.re, di = im - o.im, s = rad + o.rad;
  return dr * dr + di * di <= s * s;
}

bool ComplexBall::contains(const ComplexBall& o) const {
  if (o.rad > rad) return false;
  mpq_class dr = re - o.re, di = im - o.im, s = rad - o.rad;
  return dr * dr + di * di <= s * s;
}

bool ComplexBall::may_contain_zero() const { return re * re + im * im <= rad * rad; }

RealInterval ComplexBall::abs() const {
  mpq_class m2 = re * re + im * im;
  mpq_class lo = sqrt_lower(m2) - rad;
  if (lo < 0) lo = 0;
  return RealInterval{lo, sqrt_upper(m2) + rad};
}

std::string ComplexBall::str(int digits) const {
  std::string s = decimal(re, digits);
  if (im >= 0)
    s += " + " + decimal(im, digits) + "i";
  else
    s += " - " + decimal(-im, digits) + "i";
  return s + " +/- " + decimal(rad, 3);
}

namespace {

mpq_class l1(const ComplexBall& a) { return ::abs(a.re) + ::abs(a.im); }

}  // namespace

ComplexBall round_ball(const ComplexBall& a, int bits) {
  ComplexBall r;
  r.re = dyadic_nearest(a.re, bits);
  r.im = dyadic_nearest(a.im, bits);
  r.rad = dyadic_upper(a.rad + ::abs(a.re - r.re) + ::abs(a.im - r.im));
  return r;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall{a.re + b.re, a.im + b.im, a.rad + b.rad};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return ComplexBall{a.re - b.re, a.im - b.im, a.rad + b.rad};
}

ComplexBall mul(const ComplexBall& a, const ComplexBall& b, int bits) {
  ComplexBall r;
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  r.rad = l1(a) * b.rad + l1(b) * a.rad + a.rad * b.rad;
  return round_ball(r, bits);
}

ComplexBall scale(const ComplexBall& a, const mpz_class& k) {
  return ComplexBall{a.re * k, a.im * k, a.rad * ::abs(k)};
}

ComplexBall inverse_enclosure(const ComplexBall& a) {
  mpq_class m2 = a.re * a.re + a.im * a.im;
  mpq_class lo = sqrt_lower(m2);
  if (lo <= a.rad) throw Error(Errc::InvariantViolation, "inverse of a ball around zero");
  ComplexBall r;
  r.re = a.re / m2;
  r.im = -a.im / m2;
  r.rad = dyadic_upper(a.rad / (lo * (lo - a.rad)));
  return r;
}

ComplexBall eval(const IntPoly& p, const ComplexBall& z, int bits) {
  ComplexBall acc = ComplexBall::exact(p.leading());
  for (int i = p.degree() - 1; i >= 0; --i) acc = mul(acc, z, bits) + ComplexBall::exact(p[i]);
  return acc;
}

std::vector<ComplexBall> poly_from_roots(const std::vector<ComplexBall>& roots, int bits) {
  std::vector<ComplexBall> c{ComplexBall::exact(1)};
  for (const auto& r : roots) {
    std::vector<ComplexBall> n(c.size() + 1, ComplexBall::exact(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] = n[k + 1] + c[k];
      n[k] = round_ball(n[k] - mul(r, c[k], bits), bits);
    }
    c = std::move(n);
  }
  return c;
}

std::optional<IntPoly> round_integer_poly(const std::vector<ComplexBall>& coeffs) {
  std::vector<mpz_class> v;
  const mpq_class half(1, 2);
  for (const auto& b : coeffs) {
    if (b.rad >= half || ::abs(b.im) > b.rad) return std::nullopt;
    mpq_class t = b.re + half;
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    if (::abs(b.re - n) > b.rad) return std::nullopt;
    v.push_back(n);
  }
  return IntPoly(std::move(v));
}

}  // namespace tori
