#pragma once

// Dense exact linear algebra over a field.

#include "colstr/field.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace colstr {

template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not match");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        if (F::is_zero((*this)(i, k))) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_.add(r(i, j), field_.mul((*this)(i, k), o(k, j)));
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
  }
  Matrix scaled(const Element& c) const {
    Matrix r(*this);
    for (auto& x : r.data_) x = field_.mul(x, c);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!F::equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && F::is_zero((*this)(p, c))) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      Element inv = field_.inv((*this)(r, c));
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = field_.mul((*this)(r, j), inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || F::is_zero((*this)(i, c))) continue;
        Element f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          (*this)(i, j) = field_.sub((*this)(i, j), field_.mul(f, (*this)(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m(*this);
    return m.rref().size();
  }

  /// Basis of the right kernel {v : M v = 0}, one vector per free column.
  std::vector<std::vector<Element>> kernel() const {
    Matrix m(*this);
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Element>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Element> v(cols_, field_.zero());
      v[free] = field_.one();
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = field_.neg(m(k, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix aug(field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = field_.one();
    }
    auto pivots = aug.rref();
    if (pivots.size() < rows_ || pivots.back() >= cols_) return std::nullopt;
    Matrix inv(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
  }

  Element determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m(*this);
    Element det = field_.one();
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && F::is_zero(m(p, c))) ++p;
      if (p == rows_) return field_.zero();
      if (p != c) {
        m.swap_rows(p, c);
        det = field_.neg(det);
      }
      det = field_.mul(det, m(c, c));
      Element inv = field_.inv(m(c, c));
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (F::is_zero(m(i, c))) continue;
        Element f = field_.mul(m(i, c), inv);
        for (std::size_t j = c; j < cols_; ++j) m(i, j) = field_.sub(m(i, j), field_.mul(f, m(c, j)));
      }
    }
    return det;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  F field_;
  std::size_t rows_, cols_;
  std::vector<Element> data_;
};

}  // namespace colstr
