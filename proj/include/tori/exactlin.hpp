#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "tori/intpoly.hpp"

namespace tori {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Parses "0,1;-1,3" (rows separated by ';').
  static IntMatrix parse(std::string_view text);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntMatrix transpose() const;
  mpz_class trace() const;
  std::vector<mpz_class> column(std::size_t j) const;
  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const mpz_class& k, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

IntMatrix kron(const IntMatrix& a, const IntMatrix& b);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);
/// p(A) by Horner's rule.
IntMatrix evaluate(const IntPoly& p, const IntMatrix& a);
/// Fraction-free (Bareiss) determinant.
mpz_class det(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);
/// Exact inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

/// Companion matrix with ones on the superdiagonal and last row -a_d..-a_1.
IntMatrix companion(const IntPoly& p);
/// Matrix of the k-th exterior power in the lexicographic basis of k-subsets.
IntMatrix wedge_power(const IntMatrix& a, int k);
/// Additive compound: eigenvalues are the sums x_i + x_j over i < j.
IntMatrix additive_compound(const IntMatrix& a);
/// Lexicographically ordered k-subsets of {0..n-1}.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// det(tI - A). Faddeev-LeVerrier up to dimension 24, multimodular beyond.
IntPoly char_poly(const IntMatrix& a);
IntPoly char_poly_faddeev(const IntMatrix& a);
IntPoly char_poly_multimodular(const IntMatrix& a);
/// Minimal polynomial via Krylov sequences of the standard basis.
IntPoly minimal_polynomial(const IntMatrix& a);

/// Sublattice of Z^n, stored as a basis in column Hermite normal form.
class Lattice {
 public:
  Lattice() = default;
  /// Lattice generated by the columns of gens (need not be independent).
  static Lattice span(const IntMatrix& gens);
  static Lattice full(std::size_t n);

  const IntMatrix& basis() const { return basis_; }
  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return basis_.cols(); }
  bool contains(const std::vector<mpz_class>& v) const;
  bool operator==(const Lattice& o) const { return n_ == o.n_ && basis_ == o.basis_; }

 private:
  std::size_t n_ = 0;
  IntMatrix basis_;
};

/// Integer basis (as columns) of {x in Z^n : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
/// Primitive closure (L tensor Q) intersected with Z^n.
Lattice saturate(const Lattice& l);
/// Image A(L).
Lattice image(const IntMatrix& a, const Lattice& l);
/// Matrix C with A B = B C for the basis B of an A-stable lattice.
IntMatrix restricted_action(const IntMatrix& a, const Lattice& l);
/// Matrix of the induced action on Z^n / L for a primitive A-stable L.
IntMatrix quotient_action(const IntMatrix& a, const Lattice& l);

}  // namespace tori
