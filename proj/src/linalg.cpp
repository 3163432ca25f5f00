#include "epc/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace epc {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational::one();
  return m;
}

bool QMatrix::is_zero() const {
  for (const auto& v : data_)
    if (!v.is_zero()) return false;
  return true;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  QMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  return c;
}

std::vector<int> rref(QMatrix& a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(r, j));
    GaussianRational inv = a.at(r, c).inverse();
    for (int j = c; j < a.cols(); ++j) a.at(r, j) = a.at(r, j) * inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, c).is_zero()) continue;
      GaussianRational f = a.at(i, c);
      for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMatrix a) { return (int)rref(a).size(); }

GaussianRational determinant(QMatrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: square matrix required");
  GaussianRational det = GaussianRational::one();
  for (int c = 0; c < a.cols(); ++c) {
    int p = -1;
    for (int i = c; i < a.rows(); ++i)
      if (!a.at(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return GaussianRational::zero();
    if (p != c) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(c, j));
      det = -det;
    }
    det = det * a.at(c, c);
    GaussianRational inv = a.at(c, c).inverse();
    for (int i = c + 1; i < a.rows(); ++i) {
      if (a.at(i, c).is_zero()) continue;
      GaussianRational f = a.at(i, c) * inv;
      for (int j = c; j < a.cols(); ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return det;
}

QMatrix kernel_basis(const QMatrix& a) {
  QMatrix m = a;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(a.cols(), (int)free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    k.at(fc, (int)j) = GaussianRational::one();
    for (size_t r = 0; r < pivots.size(); ++r) k.at(pivots[r], (int)j) = -m.at((int)r, fc);
  }
  return k;
}

int numeric_rank(std::vector<std::vector<double>> a, double tol) {
  if (a.empty()) return 0;
  size_t rows = a.size(), cols = a[0].size();
  double scale = 1.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  double eps = tol * scale;
  int rank = 0;
  for (size_t c = 0; c < cols && (size_t)rank < rows; ++c) {
    size_t p = rank;
    for (size_t i = rank; i < rows; ++i)
      if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
    if (std::fabs(a[p][c]) <= eps) continue;
    std::swap(a[p], a[(size_t)rank]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == (size_t)rank) continue;
      double f = a[i][c] / a[rank][c];
      if (f == 0.0) continue;
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::complex<double> numeric_det(std::vector<std::vector<std::complex<double>>> a) {
  size_t n = a.size();
  std::complex<double> det = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t i = c; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      std::complex<double> f = a[i][c] / a[c][c];
      if (f == 0.0) continue;
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

void SparseQ::add(int r, int c, const GaussianRational& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(r, c);
  auto it = entries.find(key);
  if (it == entries.end()) {
    entries.emplace(key, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) entries.erase(it);
}

QMatrix SparseQ::dense() const {
  QMatrix m(rows, cols);
  for (const auto& [rc, v] : entries) m.at(rc.first, rc.second) = v;
  return m;
}

SparseQ sparse_matmul(const SparseQ& a, const SparseQ& b) {
  if (a.cols != b.rows) throw std::invalid_argument("sparse_matmul: shape mismatch");
  SparseQ c(a.rows, b.cols);
  for (const auto& [rc, v] : b.entries) {
    // column rc.second of the product accumulates v * (column rc.first of a)
    for (const auto& [rc2, w] : a.entries)
      if (rc2.second == rc.first) c.add(rc2.first, rc.second, w * v);
  }
  return c;
}

}  // namespace epc
