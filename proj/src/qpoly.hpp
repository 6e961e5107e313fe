#pragma once

// Helpers on dense polynomials over Q (ascending vectors of mpq_class).

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "tori/intpoly.hpp"

namespace tori::qp {

using QVec = std::vector<mpq_class>;

inline void trim(QVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const QVec& a) { return static_cast<int>(a.size()) - 1; }

inline QVec from_int(const IntPoly& p) {
  QVec r(p.coeffs().begin(), p.coeffs().end());
  return r;
}

inline QVec add(const QVec& a, const QVec& b) {
  QVec r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
  QVec r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline QVec mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline QVec scale(QVec a, const mpq_class& k) {
  for (auto& x : a) x *= k;
  trim(a);
  return a;
}

// b must be nonzero.
inline std::pair<QVec, QVec> divmod(QVec a, const QVec& b) {
  trim(a);
  const int db = deg(b);
  if (deg(a) < db) return {QVec{}, a};
  QVec q(a.size() - b.size() + 1);
  mpq_class inv = 1 / b.back();
  for (int i = deg(a); i >= db; --i) {
    mpq_class c = a[i] * inv;
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

inline QVec monic(QVec a) {
  trim(a);
  if (a.empty()) return a;
  mpq_class inv = 1 / a.back();
  for (auto& x : a) x *= inv;
  return a;
}

inline QVec gcd(QVec a, QVec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Primitive integer polynomial with positive leading coefficient, Q-proportional to a.
inline IntPoly to_primitive(const QVec& a) {
  mpz_class l = 1;
  for (const auto& x : a) l = lcm(l, mpz_class(x.get_den()));
  std::vector<mpz_class> c;
  c.reserve(a.size());
  for (const auto& x : a) c.push_back(mpz_class(x * l));
  IntPoly p(std::move(c));
  p = p.primitive_part();
  if (!p.is_zero() && p.leading() < 0) p = -p;
  return p;
}

}  // namespace tori::qp
