#include "tori/exactlin.hpp"

#include <sstream>

#include "qpoly.hpp"

namespace tori {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != c_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    for (long v : row) a_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::parse(std::string_view text) {
  std::vector<std::vector<mpz_class>> rows;
  std::string s(text);
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    IntPoly p = IntPoly::parse(row);  // reuse the comma-separated integer reader
    std::vector<mpz_class> v;
    std::stringstream rs(row);
    std::string tok;
    std::size_t count = 0;
    while (std::getline(rs, tok, ',')) ++count;
    for (std::size_t i = 0; i < count; ++i) v.push_back(p[static_cast<int>(i)]);
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw Error(Errc::ParseError, "empty matrix");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw Error(Errc::ParseError, "ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

mpz_class IntMatrix::trace() const {
  mpz_class t = 0;
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<mpz_class> IntMatrix::column(std::size_t j) const {
  std::vector<mpz_class> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::string IntMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < r_; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < c_; ++j) {
      if (j) s += ',';
      s += (*this)(i, j).get_str();
    }
  }
  return s;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.c_ != b.r_) throw Error(Errc::DimensionMismatch, "matrix product");
  IntMatrix m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c_; ++j) mpz_addmul(m(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(Errc::DimensionMismatch, "matrix sum");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw Error(Errc::DimensionMismatch, "matrix difference");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

IntMatrix operator*(const mpz_class& k, const IntMatrix& a) {
  IntMatrix m = a;
  for (auto& x : m.a_) x *= k;
  return m;
}

IntMatrix kron(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

IntMatrix evaluate(const IntPoly& p, const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  IntMatrix r(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    r = r * a;
    for (std::size_t k = 0; k < n; ++k) r(k, k) += p[i];
  }
  return r;
}

mpz_class det(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && m(i, k) == 0) ++i;
      if (i == n) return 0;
      for (std::size_t j = 0; j < n; ++j) swap(m(k, j), m(i, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

using QMat = std::vector<std::vector<mpq_class>>;

QMat to_q(const IntMatrix& a) {
  QMat q(a.rows(), std::vector<mpq_class>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) q[i][j] = a(i, j);
  return q;
}

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> piv;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t i = r;
    while (i < rows && m[i][c] == 0) ++i;
    if (i == rows) continue;
    std::swap(m[i], m[r]);
    mpq_class inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t k = 0; k < rows; ++k) {
      if (k == r || m[k][c] == 0) continue;
      mpq_class f = m[k][c];
      for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(const IntMatrix& a) {
  QMat q = to_q(a);
  return rref(q).size();
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  mpz_class d = det(a);
  if (d != 1 && d != -1) throw Error(Errc::NotUnimodular, "determinant is " + d.get_str());
  QMat m(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n + i] = 1;
  }
  rref(m);
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = m[i][n + j].get_num();
  return inv;
}

IntMatrix companion(const IntPoly& p) {
  if (!p.is_monic()) throw Error(Errc::NotMonic, "companion matrix needs a monic polynomial");
  const int d = p.degree();
  IntMatrix m(d, d);
  for (int i = 0; i + 1 < d; ++i) m(i, i + 1) = 1;
  for (int j = 0; j < d; ++j) m(d - 1, j) = -p[j];
  return m;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (int j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

IntMatrix wedge_power(const IntMatrix& a, int k) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "exterior power of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  if (k < 0 || k > n) throw Error(Errc::BadRank, "exterior power index out of range");
  auto subs = k_subsets(n, k);
  IntMatrix w(subs.size(), subs.size());
  IntMatrix minor(k, k);
  for (std::size_t r = 0; r < subs.size(); ++r)
    for (std::size_t c = 0; c < subs.size(); ++c) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) minor(i, j) = a(subs[r][i], subs[c][j]);
      w(r, c) = det(minor);
    }
  return w;
}

IntMatrix additive_compound(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix shifted = a + IntMatrix::identity(n);
  IntMatrix w = wedge_power(shifted, 2) - wedge_power(a, 2);
  return w - IntMatrix::identity(w.rows());
}

IntPoly char_poly_faddeev(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<mpz_class> c(n + 1);
  c[n] = 1;
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    mpz_class t = (a * m).trace();
    if (!mpz_divisible_ui_p(t.get_mpz_t(), k))
      throw Error(Errc::InvariantViolation, "inexact Faddeev-LeVerrier step");
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
    c[n - k] = -t;
  }
  return IntPoly(std::move(c));
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<u64> char_poly_mod(const IntMatrix& a, u64 p) {
  const std::size_t n = a.rows();
  auto mul = [p](u64 x, u64 y) { return static_cast<u64>(static_cast<u128>(x) * y % p); };
  auto add = [p](u64 x, u64 y) { return x + y >= p ? x + y - p : x + y; };
  auto sub = [p](u64 x, u64 y) { return x >= y ? x - y : x + p - y; };
  auto inv = [&](u64 x) {
    u64 r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<u64>> h(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class t;
      mpz_fdiv_r_ui(t.get_mpz_t(), a(i, j).get_mpz_t(), p);
      h[i][j] = t.get_ui();
    }
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    u64 iv = inv(h[m][m - 1]);
    for (std::size_t j = m + 1; j < n; ++j) {
      u64 u = mul(h[j][m - 1], iv);
      if (!u) continue;
      for (std::size_t c = 0; c < n; ++c) h[j][c] = sub(h[j][c], mul(u, h[m][c]));
      for (std::size_t r = 0; r < n; ++r) h[r][m] = add(h[r][m], mul(u, h[r][j]));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} prod_{j} h_{j,j-1} p_{m-i-1}  (1-based)
  std::vector<std::vector<u64>> P(n + 1);
  P[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> pm(m + 1, 0);
    for (std::size_t k = 0; k < P[m - 1].size(); ++k) {
      pm[k + 1] = add(pm[k + 1], P[m - 1][k]);
      pm[k] = sub(pm[k], mul(h[m - 1][m - 1], P[m - 1][k]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = mul(t, h[m - i][m - i - 1]);
      u64 coef = mul(h[m - i - 1][m - 1], t);
      if (!coef) continue;
      for (std::size_t k = 0; k < P[m - i - 1].size(); ++k) pm[k] = sub(pm[k], mul(coef, P[m - i - 1][k]));
    }
    P[m] = std::move(pm);
  }
  return P[n];
}

}  // namespace

IntPoly char_poly_multimodular(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // Coefficients are elementary symmetric functions of eigenvalues bounded by
  // the max absolute row sum beta, so |c_k| <= (1 + beta)^n.
  mpz_class beta = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < n; ++j) s += abs(a(i, j));
    if (s > beta) beta = s;
  }
  mpz_class bound;
  mpz_pow_ui(bound.get_mpz_t(), mpz_class(beta + 1).get_mpz_t(), n);
  bound = 2 * bound + 1;
  std::vector<mpz_class> res(n + 1);
  mpz_class modulus = 1;
  mpz_class prime = mpz_class(1) << 30;
  while (modulus <= bound) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    const u64 p = prime.get_ui();
    auto cp = char_poly_mod(a, p);
    mpz_class minv;
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t());
    for (std::size_t k = 0; k <= n; ++k) {
      // x = r + modulus * ((s - r) * modulus^-1 mod p)
      mpz_class r = res[k];
      mpz_class s(static_cast<unsigned long>(cp[k]));
      mpz_class d = (s - r) * minv;
      mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t());
      res[k] = r + modulus * d;
    }
    modulus *= pz;
  }
  const mpz_class half = modulus / 2;
  for (auto& x : res)
    if (x > half) x -= modulus;
  return IntPoly(std::move(res));
}

IntPoly char_poly(const IntMatrix& a) {
  return a.rows() <= 24 ? char_poly_faddeev(a) : char_poly_multimodular(a);
}

IntPoly minimal_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::DimensionMismatch, "minimal polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  QMat aq = to_q(a);
  IntPoly result = IntPoly::constant(1);
  for (std::size_t e = 0; e < n; ++e) {
    // Reduced Krylov vectors with their expressions in powers of A.
    std::vector<std::vector<mpq_class>> basis;
    std::vector<std::size_t> pivots;
    std::vector<qp::QVec> combos;
    std::vector<mpq_class> v(n);
    v[e] = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<mpq_class> w = v;
      qp::QVec combo(k + 1);
      combo[k] = 1;
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const mpq_class& x = w[pivots[b]];
        if (x == 0) continue;
        mpq_class f = x / basis[b][pivots[b]];
        for (std::size_t i = 0; i < n; ++i) w[i] -= f * basis[b][i];
        combo = qp::sub(combo, qp::scale(combos[b], f));
      }
      std::size_t piv = 0;
      while (piv < n && w[piv] == 0) ++piv;
      if (piv == n) {
        IntPoly mu = qp::to_primitive(qp::monic(combo));
        if (!mu.is_monic()) throw Error(Errc::InvariantViolation, "non-integral local minimal polynomial");
        IntPoly g = gcd(result, mu);
        result = divexact(result * mu, g);
        break;
      }
      basis.push_back(w);
      pivots.push_back(piv);
      combos.push_back(combo);
      std::vector<mpq_class> nv(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (aq[i][j] != 0) nv[i] += aq[i][j] * v[j];
      v = std::move(nv);
    }
  }
  return result;
}

}  // namespace tori
