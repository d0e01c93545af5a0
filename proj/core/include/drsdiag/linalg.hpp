#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "drsdiag/errors.hpp"

namespace drsdiag {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense real vector with finite entries (checked on construction from data).
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t n) : data_(n, 0.0) {}
  Vec(std::initializer_list<double> xs) : data_(xs) { check_finite(); }
  explicit Vec(std::vector<double> xs) : data_(std::move(xs)) { check_finite(); }

  static Vec zeros(std::size_t n) { return Vec(n); }
  static Vec unit(std::size_t n, std::size_t i, double scale = 1.0);

  std::size_t size() const { return data_.size(); }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(double a);

  bool all_finite() const;

 private:
  void check_finite() const;
  std::vector<double> data_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(double a, Vec v);
Vec operator-(Vec v);

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double norm_inf(const Vec& v);
double dist(const Vec& a, const Vec& b);

/// Dense row-major matrix. Only the small shapes the solvers need.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Mat(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Mat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }

  Vec apply(const Vec& x) const;    // A x
  Vec apply_t(const Vec& y) const;  // A' y

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix, single (lower) triangle stored column-major packed.
/// Packing order for order n: (0,0),(1,0),...,(n-1,0),(1,1),(2,1),...
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(std::size_t n) : n_(n), tri_(n * (n + 1) / 2, 0.0) {}

  static SymMat from_dense(std::size_t n, const std::vector<double>& dense_row_major,
                           double sym_tol = 1e-12);
  static SymMat diag(std::initializer_list<double> d);

  std::size_t order() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return tri_[pack(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { tri_[pack(i, j)] = v; }

  const std::vector<double>& packed() const { return tri_; }

  double frobenius_norm() const;

 private:
  std::size_t pack(std::size_t i, std::size_t j) const;
  std::size_t n_ = 0;
  std::vector<double> tri_;
};

/// Eigendecomposition of a symmetric matrix: M = Q diag(w) Q', eigenvalues
/// ascending, Q orthonormal columns.
struct EigDecomp {
  std::vector<double> eigenvalues;
  Mat eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi eigensolver for symmetric matrices of order <= 64.
EigDecomp eigh(const SymMat& m);

/// Isometric embedding of symmetric matrices: off-diagonals scaled by sqrt(2)
/// so that <svec(A), svec(B)> = trace(A B).
Vec svec(const SymMat& m);

/// Inverse of svec. The input length must be a triangular number.
SymMat smat(const Vec& v);

std::size_t svec_dim(std::size_t order);           // n(n+1)/2
std::size_t svec_index(std::size_t i, std::size_t j, std::size_t order);

/// Solves S x = b for symmetric positive definite S (in-place Cholesky).
/// Throws NumericalError if S is not numerically positive definite.
Vec solve_spd(const Mat& s, const Vec& b);

}  // namespace drsdiag
