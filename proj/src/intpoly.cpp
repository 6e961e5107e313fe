#include "tori/intpoly.hpp"

#include <algorithm>
#include <sstream>

#include "qpoly.hpp"

namespace tori {

namespace {

const mpz_class kZero = 0;

std::string normalize_minus(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
    } else if (text[i] != ' ' && text[i] != '\t' && text[i] != '[' && text[i] != ']') {
      s.push_back(text[i]);
    }
  }
  return s;
}

}  // namespace

IntPoly::IntPoly(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> ascending) {
  for (long v : ascending) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(const mpz_class& c, int k) {
  std::vector<mpz_class> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::parse(std::string_view text) {
  std::string s = normalize_minus(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty polynomial");
  std::vector<mpz_class> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    mpz_class z;
    if (tok.empty() || z.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
      throw Error(Errc::ParseError, "bad coefficient '" + tok + "'");
    v.push_back(z);
  }
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::operator[](int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

const mpz_class& IntPoly::leading() const { return c_.empty() ? kZero : c_.back(); }

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) g = gcd(g, x);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (c_.empty()) return *this;
  mpz_class g = content();
  if (c_.back() < 0) g = -g;
  std::vector<mpz_class> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reversed() const {
  std::vector<mpz_class> v(c_.rbegin(), c_.rend());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::negated_variable() const {
  std::vector<mpz_class> v = c_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPoly(std::move(v));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

int IntPoly::sign_at(const mpq_class& x) const {
  // d^deg p(n/d) = sum c_i n^i d^(deg-i), and d > 0.
  const mpz_class& n = x.get_num();
  const mpz_class& d = x.get_den();
  mpz_class r = 0, dp = 1;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * n + *it * dp;
    dp *= d;
  }
  return sgn(r);
}

IntPoly IntPoly::compose(const IntPoly& q) const {
  IntPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + IntPoly::constant(*it);
  return r;
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].get_str();
  }
  return s;
}

std::string IntPoly::pretty(char var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = c_[i];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += var;
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const mpz_class& k) {
  for (auto& x : c_) x *= k;
  trim();
  return *this;
}

IntPoly operator-(const IntPoly& a) {
  std::vector<mpz_class> v = a.c_;
  for (auto& x : v) x = -x;
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return IntPoly(std::move(v));
}

bool operator<(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly r = IntPoly::constant(1), b = p;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(IntPoly num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(Errc::InvariantViolation, "zero denominator");
  normalize();
}

RatPoly::RatPoly(const std::vector<mpq_class>& ascending) : den_(1) {
  for (const auto& x : ascending) den_ = lcm(den_, mpz_class(x.get_den()));
  std::vector<mpz_class> v;
  for (const auto& x : ascending) v.push_back(mpz_class(x * den_));
  num_ = IntPoly(std::move(v));
  normalize();
}

void RatPoly::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  mpz_class g = gcd(num_.content(), den_);
  if (g != 1) {
    std::vector<mpz_class> v = num_.coeffs();
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    num_ = IntPoly(std::move(v));
    den_ /= g;
  }
}

std::vector<mpq_class> RatPoly::coeffs() const {
  std::vector<mpq_class> r;
  for (const auto& x : num_.coeffs()) {
    mpq_class q(x, den_);
    q.canonicalize();
    r.push_back(q);
  }
  return r;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  return RatPoly(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  return RatPoly(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  return RatPoly(a.num_ * b.num_, a.den_ * b.den_);
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvariantViolation, "division by zero polynomial");
  auto [q, r] = qp::divmod(a.coeffs(), b.coeffs());
  return {RatPoly(q), RatPoly(r)};
}

// ------------------------------------------------------------ arithmetic

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvariantViolation, "division by zero polynomial");
  if (a.is_zero()) return {};
  const int da = a.degree(), db = b.degree();
  if (da < db) throw Error(Errc::InvariantViolation, "inexact polynomial division");
  std::vector<mpz_class> r = a.coeffs();
  std::vector<mpz_class> q(da - db + 1);
  const mpz_class& lb = b.leading();
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), lb.get_mpz_t()))
      throw Error(Errc::InvariantViolation, "inexact polynomial division");
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), r[i].get_mpz_t(), lb.get_mpz_t());
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  for (int i = 0; i < db; ++i)
    if (r[i] != 0) throw Error(Errc::InvariantViolation, "inexact polynomial division");
  return IntPoly(std::move(q));
}

bool divides(const IntPoly& b, const IntPoly& a) {
  try {
    divexact(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

IntPoly prem(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw Error(Errc::InvariantViolation, "pseudo-division by zero");
  const int db = b.degree();
  std::vector<mpz_class> r = a.coeffs();
  if (a.degree() < db) return a;
  int delta = a.degree() - db + 1;
  const mpz_class& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    mpz_class c = r[i];
    for (auto& x : r) x *= lb;
    --delta;
    if (c != 0)
      for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
    r[i] = 0;
  }
  IntPoly out(std::move(r));
  mpz_class f;
  mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), delta);
  return out * f;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part() * b.content();
  if (b.is_zero()) return a.primitive_part() * a.content();
  mpz_class c = gcd(a.content(), b.content());
  IntPoly x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = prem(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part() * c;
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() <= 0) return p.primitive_part();
  IntPoly g = gcd(p, p.derivative());
  return divexact(p.primitive_part(), g.primitive_part());
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  qp::QVec x = qp::from_int(a), y = qp::from_int(b);
  mpq_class acc = 1;
  while (true) {
    const int m = qp::deg(x), n = qp::deg(y);
    if (n == 0) {
      mpq_class t = 1;
      for (int i = 0; i < m; ++i) t *= y[0];
      acc *= t;
      break;
    }
    if (m == 0) {
      mpq_class t = 1;
      for (int i = 0; i < n; ++i) t *= x[0];
      acc *= t;
      break;
    }
    auto r = qp::divmod(x, y).second;
    if (r.empty()) return 0;
    const int k = qp::deg(r);
    if ((m * n) % 2) acc = -acc;
    for (int i = 0; i < m - k; ++i) acc *= y.back();
    x = std::move(y);
    y = std::move(r);
  }
  if (acc.get_den() != 1) throw Error(Errc::InvariantViolation, "non-integral resultant");
  return acc.get_num();
}

mpz_class discriminant(const IntPoly& p) {
  const int d = p.degree();
  if (d < 1) throw Error(Errc::ConstantPolynomial, "discriminant of a constant");
  if (d == 1) return 1;
  mpz_class r = resultant(p, p.derivative());
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
  if ((d * (d - 1) / 2) % 2) out = -out;
  return out;
}

namespace {

// Integer Sturm sequence of a squarefree polynomial; each term is rescaled by a
// positive factor, which preserves sign patterns.
std::vector<IntPoly> sturm_sequence(const IntPoly& s) {
  std::vector<IntPoly> seq{s, s.derivative()};
  while (seq.back().degree() > 0) {
    const IntPoly& a = seq[seq.size() - 2];
    const IntPoly& b = seq.back();
    IntPoly r = prem(a, b);
    // prem multiplies by lc(b)^(da-db+1); undo a negative multiplier.
    if (b.leading() < 0 && (a.degree() - b.degree() + 1) % 2) r = -r;
    if (r.is_zero()) break;
    mpz_class c = r.content();
    std::vector<mpz_class> v = r.coeffs();
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    seq.push_back(-IntPoly(std::move(v)));
  }
  return seq;
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

int sturm_count(const IntPoly& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.is_zero()) throw Error(Errc::ConstantPolynomial, "Sturm count of the zero polynomial");
  if (p.sign_at(lo) == 0 || p.sign_at(hi) == 0)
    throw Error(Errc::EndpointIsRoot, "interval endpoint is a root");
  if (p.degree() == 0 || lo >= hi) return 0;
  auto seq = sturm_sequence(squarefree_part(p));
  std::vector<int> a, b;
  for (const auto& q : seq) {
    a.push_back(q.sign_at(lo));
    b.push_back(q.sign_at(hi));
  }
  return variations(a) - variations(b);
}

int real_root_count(const IntPoly& p) {
  if (p.is_zero()) throw Error(Errc::ConstantPolynomial, "Sturm count of the zero polynomial");
  if (p.degree() == 0) return 0;
  auto seq = sturm_sequence(squarefree_part(p));
  std::vector<int> a, b;
  for (const auto& q : seq) {
    int s = sgn(q.leading());
    b.push_back(s);
    a.push_back(q.degree() % 2 ? -s : s);
  }
  return variations(a) - variations(b);
}

mpz_class cauchy_bound(const IntPoly& p) {
  if (p.degree() < 1) return 1;
  mpq_class m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    mpq_class r(abs(p[i]), abs(p.leading()));
    r.canonicalize();
    if (r > m) m = r;
  }
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
  return c + 2;
}

// ------------------------------------------------------------ reciprocity

bool is_reciprocal(const IntPoly& p) {
  if (p.is_zero()) return false;
  return p.reversed() == p && p[0] != 0;
}

IntPoly trace_polynomial(const IntPoly& p) {
  if (p.degree() % 2) throw Error(Errc::OddDegree, "trace polynomial needs even degree");
  if (!is_reciprocal(p)) throw Error(Errc::NotReciprocal, "polynomial is not reciprocal");
  const int k = p.degree() / 2;
  // t^j + t^-j = V_j(t + 1/t), V_0 = 2, V_1 = x, V_{j+1} = x V_j - V_{j-1}.
  IntPoly q = IntPoly::constant(p[k]);
  IntPoly vprev = IntPoly::constant(2), v = IntPoly::x();
  for (int j = 1; j <= k; ++j) {
    q += v * p[k + j];
    IntPoly next = IntPoly::x() * v - vprev;
    vprev = std::move(v);
    v = std::move(next);
  }
  return q;
}

IntPoly from_trace(const IntPoly& q) {
  const int k = q.degree();
  if (k < 0) return {};
  IntPoly s = IntPoly{1, 0, 1};
  IntPoly r;
  IntPoly sp = IntPoly::constant(1);
  for (int j = 0; j <= k; ++j) {
    r += sp * IntPoly::monomial(q[j], k - j);
    sp = sp * s;
  }
  return r;
}

IntPoly graeffe(const IntPoly& p) {
  std::vector<mpz_class> e, o;
  for (int i = 0; i <= p.degree(); ++i) (i % 2 ? o : e).push_back(p[i]);
  IntPoly E(e), O(o);
  IntPoly g = E * E - IntPoly::x() * O * O;
  if (p.degree() % 2) g = -g;
  return g;
}

// ------------------------------------------------------------ factor lists

IntPoly FactorList::expand() const {
  IntPoly r = IntPoly::constant(1);
  for (const auto& [f, m] : factors) r = r * pow(f, m);
  if (unit.get_den() != 1) throw Error(Errc::InvariantViolation, "non-integral unit");
  return r * mpz_class(unit.get_num());
}

std::vector<int> FactorList::degree_multiset() const {
  std::vector<int> d;
  for (const auto& [f, m] : factors)
    for (int i = 0; i < m; ++i) d.push_back(f.degree());
  std::sort(d.begin(), d.end());
  return d;
}

bool is_irreducible(const IntPoly& p) {
  if (p.degree() < 1) return false;
  auto fl = factor_over_z(p);
  return fl.is_irreducible() && (fl.unit == 1 || fl.unit == -1);
}

// ------------------------------------------------------------ Bezout

BezoutCertificate ext_gcd_rational(const IntPoly& f1, const IntPoly& f2) {
  if (f1.is_zero() || f2.is_zero()) throw Error(Errc::NotCoprime, "zero input");
  // Invariant: r0 = s0 f1 + t0 f2, r1 = s1 f1 + t1 f2.
  qp::QVec r0 = qp::from_int(f1), r1 = qp::from_int(f2);
  qp::QVec s0{1}, t0{}, s1{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = qp::divmod(r0, r1);
    qp::QVec s2 = qp::sub(s0, qp::mul(q, s1));
    qp::QVec t2 = qp::sub(t0, qp::mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (qp::deg(r0) != 0) throw Error(Errc::NotCoprime, "polynomials share a factor");
  mpq_class inv = 1 / r0[0];
  s0 = qp::scale(s0, inv);
  t0 = qp::scale(t0, inv);
  mpz_class l = 1;
  for (const auto& x : s0) l = lcm(l, mpz_class(x.get_den()));
  for (const auto& x : t0) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> a, b;
  for (const auto& x : s0) a.push_back(mpz_class(x * l));
  for (const auto& x : t0) b.push_back(mpz_class(x * l));
  BezoutCertificate c{IntPoly(std::move(a)), IntPoly(std::move(b)), l};
  mpz_class g = gcd(gcd(c.h1.content(), c.h2.content()), c.n);
  int sign = 1;
  if (!c.h1.is_zero())
    sign = sgn(c.h1.leading());
  else
    sign = sgn(c.n);
  if (sign < 0) g = -g;
  c.h1 = divexact(c.h1, IntPoly::constant(g));
  c.h2 = divexact(c.h2, IntPoly::constant(g));
  mpz_divexact(c.n.get_mpz_t(), c.n.get_mpz_t(), g.get_mpz_t());
  return c;
}

}  // namespace tori
