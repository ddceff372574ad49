#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wino/matrix.hpp"
#include "wino/transforms.hpp"

namespace wino {

// Instrumentation for the element-wise stage.
struct OpCounter {
  std::uint64_t hadamard_mults = 0;
};

enum class TileRole { input, kernel, transformed, output };

const char* to_string(TileRole role);

// A square tile whose dimensions are pinned by its role:
// input/transformed alpha x alpha, kernel r x r, output m x m.
template <typename T>
class Tile2D {
 public:
  Tile2D(TileRole role, Matrix<T> data, const MinimalParams& params);

  static Tile2D zeros(TileRole role, const MinimalParams& params);

  TileRole role() const noexcept { return role_; }
  const Matrix<T>& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

 private:
  TileRole role_;
  Matrix<T> data_;
};

std::size_t tile_extent(TileRole role, const MinimalParams& params);

// Y = A^T [(B^T d) . (G g)], the valid correlation of d with g.
template <typename T>
std::vector<T> winograd_1d(const TransformMatrices<T>& tm, std::span<const T> d, std::span<const T> g,
                           OpCounter* counter = nullptr);

// V = G g G^T
template <typename T>
Tile2D<T> filter_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& kernel);

// U = B^T d B
template <typename T>
Tile2D<T> data_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& input);

// Y = A^T M A
template <typename T>
Tile2D<T> inverse_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& transformed);

// M = U . V, counted alpha^2 multiplications.
template <typename T>
Tile2D<T> hadamard_2d(const Tile2D<T>& u, const Tile2D<T>& v, const MinimalParams& params,
                      OpCounter* counter = nullptr);

// Y = A^T [U . V] A
template <typename T>
Tile2D<T> winograd_2d_tile(const TransformMatrices<T>& tm, const Tile2D<T>& input, const Tile2D<T>& kernel,
                           OpCounter* counter = nullptr);

}  // namespace wino
