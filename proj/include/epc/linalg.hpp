#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "epc/rational.hpp"

namespace epc {

// Dense matrix over the Gaussian rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_((size_t)rows * (size_t)cols) {}

  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GaussianRational& at(int r, int c) { return data_[(size_t)r * cols_ + c]; }
  const GaussianRational& at(int r, int c) const { return data_[(size_t)r * cols_ + c]; }

  bool is_zero() const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<GaussianRational> data_;
};

QMatrix matmul(const QMatrix& a, const QMatrix& b);

// Gaussian elimination over the field Q(i), deterministic first-nonzero
// pivoting in column order.  rref reduces in place and returns the pivot
// columns; rank and determinant take copies.
std::vector<int> rref(QMatrix& a);
int rank(QMatrix a);
GaussianRational determinant(QMatrix a);

// Columns spanning the right kernel {x : a x = 0}.
QMatrix kernel_basis(const QMatrix& a);

// Real rank with partial pivoting; tol is relative to the largest entry.
int numeric_rank(std::vector<std::vector<double>> a, double tol = 1e-9);
std::complex<double> numeric_det(std::vector<std::vector<std::complex<double>>> a);

// Exact sparse matrix; the spectral assemblies stay sparse until a rank or
// product is needed.
struct SparseQ {
  int rows = 0, cols = 0;
  std::map<std::pair<int, int>, GaussianRational> entries;

  SparseQ() = default;
  SparseQ(int r, int c) : rows(r), cols(c) {}

  void add(int r, int c, const GaussianRational& v);
  bool is_zero() const { return entries.empty(); }
  QMatrix dense() const;
};

SparseQ sparse_matmul(const SparseQ& a, const SparseQ& b);

}  // namespace epc
