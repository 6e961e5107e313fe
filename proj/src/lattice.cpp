#include "tori/exactlin.hpp"

namespace tori {

namespace {

using Rows = std::vector<std::vector<mpz_class>>;

// Row Hermite normal form restricted to pivot columns [0, limit): unimodular row
// operations act on full rows. Returns the number of pivot rows, which come first.
std::size_t hnf_rows(Rows& m, std::size_t limit) {
  const std::size_t rows = m.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == rows) break;
      std::swap(m[r], m[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        for (std::size_t j = 0; j < m[i].size(); ++j) mpz_submul(m[i][j].get_mpz_t(), q.get_mpz_t(), m[r][j].get_mpz_t());
        if (m[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto& x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < m[i].size(); ++j) mpz_submul(m[i][j].get_mpz_t(), q.get_mpz_t(), m[r][j].get_mpz_t());
    }
    ++r;
  }
  return r;
}

IntMatrix columns_of(const Rows& rows, std::size_t n) {
  IntMatrix b(n, rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) b(i, j) = rows[j][i];
  return b;
}

using QMat = std::vector<std::vector<mpq_class>>;

// Solves B X = Y exactly for B of full column rank; throws if inconsistent.
QMat solve_full_column_rank(const IntMatrix& b, const IntMatrix& y) {
  const std::size_t n = b.rows(), r = b.cols(), k = y.cols();
  QMat m(n, std::vector<mpq_class>(r + k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) m[i][j] = b(i, j);
    for (std::size_t j = 0; j < k; ++j) m[i][r + j] = y(i, j);
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t i = row;
    while (i < n && m[i][c] == 0) ++i;
    if (i == n) throw Error(Errc::BadRank, "basis is not of full column rank");
    std::swap(m[i], m[row]);
    mpq_class inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == row || m[t][c] == 0) continue;
      mpq_class f = m[t][c];
      for (std::size_t j = 0; j < r + k; ++j) m[t][j] -= f * m[row][j];
    }
    ++row;
  }
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (m[i][r + j] != 0) throw Error(Errc::InvariantViolation, "lattice is not stable");
  QMat x(r, std::vector<mpq_class>(k));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) x[i][j] = m[i][r + j];
  return x;
}

IntMatrix to_integral(const QMat& x) {
  IntMatrix m(x.size(), x.empty() ? 0 : x[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (x[i][j].get_den() != 1) throw Error(Errc::InvariantViolation, "non-integral induced action");
      m(i, j) = x[i][j].get_num();
    }
  return m;
}

}  // namespace

Lattice Lattice::span(const IntMatrix& gens) {
  Rows rows;
  for (std::size_t j = 0; j < gens.cols(); ++j) rows.push_back(gens.column(j));
  Lattice l;
  l.n_ = gens.rows();
  std::size_t r = hnf_rows(rows, l.n_);
  rows.resize(r);
  l.basis_ = columns_of(rows, l.n_);
  return l;
}

Lattice Lattice::full(std::size_t n) { return span(IntMatrix::identity(n)); }

bool Lattice::contains(const std::vector<mpz_class>& v) const {
  if (v.size() != n_) throw Error(Errc::DimensionMismatch, "vector length");
  IntMatrix g(n_, rank() + 1);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < rank(); ++j) g(i, j) = basis_(i, j);
    g(i, rank()) = v[i];
  }
  return span(g) == *this;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  // Row-reduce [M^T | I]; rows with vanishing left block span the kernel.
  const std::size_t rows = m.rows(), n = m.cols();
  Rows aug(n, std::vector<mpz_class>(rows + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rows; ++j) aug[i][j] = m(j, i);
    aug[i][rows + i] = 1;
  }
  std::size_t r = hnf_rows(aug, rows);
  Rows ker;
  for (std::size_t i = r; i < n; ++i) ker.emplace_back(aug[i].begin() + rows, aug[i].end());
  if (ker.empty()) return IntMatrix(n, 0);
  std::size_t k = hnf_rows(ker, n);
  ker.resize(k);
  return columns_of(ker, n);
}

Lattice saturate(const Lattice& l) {
  if (l.rank() == 0) throw Error(Errc::ZeroLattice, "saturation of the zero lattice");
  const std::size_t n = l.ambient();
  IntMatrix perp = integer_kernel(l.basis().transpose());
  if (perp.cols() == 0) return Lattice::full(n);
  return Lattice::span(integer_kernel(perp.transpose()));
}

Lattice image(const IntMatrix& a, const Lattice& l) { return Lattice::span(a * l.basis()); }

IntMatrix restricted_action(const IntMatrix& a, const Lattice& l) {
  const IntMatrix& b = l.basis();
  IntMatrix c = to_integral(solve_full_column_rank(b, a * b));
  if (b * c != a * b) throw Error(Errc::InvariantViolation, "restricted action check failed");
  return c;
}

IntMatrix quotient_action(const IntMatrix& a, const Lattice& l) {
  // K^T : Z^n -> Z^(n-r) is onto with kernel L; solve D K^T = K^T A.
  IntMatrix k = integer_kernel(l.basis().transpose());
  if (k.cols() == 0) return IntMatrix(0, 0);
  IntMatrix dt = to_integral(solve_full_column_rank(k, a.transpose() * k));
  IntMatrix d = dt.transpose();
  if (d * k.transpose() != k.transpose() * a) throw Error(Errc::InvariantViolation, "quotient action check failed");
  return d;
}

}  // namespace tori
