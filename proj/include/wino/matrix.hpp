#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace wino {

// Dense row-major matrix. Small by construction: transform matrices and tiles.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      assert(row.size() == cols_);
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& values() const noexcept { return data_; }
  std::vector<T>& values() noexcept { return data_; }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  template <typename U, typename Convert>
  Matrix<U> map(Convert convert) const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.values()[i] = convert(data_[i]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.cols() == b.rows());
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

// Element-wise product.
template <typename T>
Matrix<T> hadamard(const Matrix<T>& a, const Matrix<T>& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.values().size(); ++i) out.values()[i] = a.values()[i] * b.values()[i];
  return out;
}

}  // namespace wino
