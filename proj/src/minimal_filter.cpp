#include "wino/minimal_filter.hpp"

#include <string>

#include "wino/error.hpp"

namespace wino {
namespace {

template <typename T>
void require_role(const Tile2D<T>& tile, TileRole expected, const char* op) {
  if (tile.role() != expected) {
    throw Error("winograd_core", std::string(op) + ": expected " + to_string(expected) + " tile, got " +
                                     to_string(tile.role()));
  }
}

}  // namespace

const char* to_string(TileRole role) {
  switch (role) {
    case TileRole::input: return "input";
    case TileRole::kernel: return "kernel";
    case TileRole::transformed: return "transformed";
    case TileRole::output: return "output";
  }
  return "?";
}

std::size_t tile_extent(TileRole role, const MinimalParams& params) {
  switch (role) {
    case TileRole::input:
    case TileRole::transformed: return static_cast<std::size_t>(params.alpha());
    case TileRole::kernel: return static_cast<std::size_t>(params.r());
    case TileRole::output: return static_cast<std::size_t>(params.m());
  }
  return 0;
}

template <typename T>
Tile2D<T>::Tile2D(TileRole role, Matrix<T> data, const MinimalParams& params) : role_(role), data_(std::move(data)) {
  const auto n = tile_extent(role, params);
  if (data_.rows() != n || data_.cols() != n) {
    throw Error("winograd_core", std::string(to_string(role)) + " tile for " + params.name() + " must be " +
                                     std::to_string(n) + "x" + std::to_string(n) + ", got " +
                                     std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()));
  }
}

template <typename T>
Tile2D<T> Tile2D<T>::zeros(TileRole role, const MinimalParams& params) {
  const auto n = tile_extent(role, params);
  return Tile2D(role, Matrix<T>(n, n), params);
}

template <typename T>
std::vector<T> winograd_1d(const TransformMatrices<T>& tm, std::span<const T> d, std::span<const T> g,
                           OpCounter* counter) {
  const auto alpha = static_cast<std::size_t>(tm.params.alpha());
  const auto m = static_cast<std::size_t>(tm.params.m());
  const auto r = static_cast<std::size_t>(tm.params.r());
  if (d.size() != alpha || g.size() != r) {
    throw Error("winograd_core", "winograd_1d: " + tm.params.name() + " needs |d|=" + std::to_string(alpha) +
                                     " and |g|=" + std::to_string(r) + ", got " + std::to_string(d.size()) +
                                     " and " + std::to_string(g.size()));
  }
  std::vector<T> product(alpha, T(0));
  for (std::size_t i = 0; i < alpha; ++i) {
    T data_term(0);
    for (std::size_t k = 0; k < alpha; ++k) data_term += tm.b(k, i) * d[k];
    T filter_term(0);
    for (std::size_t k = 0; k < r; ++k) filter_term += tm.g(i, k) * g[k];
    product[i] = data_term * filter_term;
  }
  if (counter) counter->hadamard_mults += alpha;
  std::vector<T> out(m, T(0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < alpha; ++i) out[j] += tm.a(i, j) * product[i];
  return out;
}

template <typename T>
Tile2D<T> filter_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& kernel) {
  require_role(kernel, TileRole::kernel, "filter_transform_2d");
  if (kernel.size() != static_cast<std::size_t>(tm.params.r())) {
    throw Error("winograd_core", "filter_transform_2d: kernel size mismatch for " + tm.params.name());
  }
  return Tile2D<T>(TileRole::transformed, matmul(matmul(tm.g, kernel.data()), tm.g.transposed()), tm.params);
}

template <typename T>
Tile2D<T> data_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& input) {
  require_role(input, TileRole::input, "data_transform_2d");
  if (input.size() != static_cast<std::size_t>(tm.params.alpha())) {
    throw Error("winograd_core", "data_transform_2d: input tile size mismatch for " + tm.params.name());
  }
  return Tile2D<T>(TileRole::transformed, matmul(matmul(tm.b.transposed(), input.data()), tm.b), tm.params);
}

template <typename T>
Tile2D<T> inverse_transform_2d(const TransformMatrices<T>& tm, const Tile2D<T>& transformed) {
  require_role(transformed, TileRole::transformed, "inverse_transform_2d");
  if (transformed.size() != static_cast<std::size_t>(tm.params.alpha())) {
    throw Error("winograd_core", "inverse_transform_2d: tile size mismatch for " + tm.params.name());
  }
  return Tile2D<T>(TileRole::output, matmul(matmul(tm.a.transposed(), transformed.data()), tm.a), tm.params);
}

template <typename T>
Tile2D<T> hadamard_2d(const Tile2D<T>& u, const Tile2D<T>& v, const MinimalParams& params, OpCounter* counter) {
  require_role(u, TileRole::transformed, "hadamard_2d");
  require_role(v, TileRole::transformed, "hadamard_2d");
  Tile2D<T> out(TileRole::transformed, hadamard(u.data(), v.data()), params);
  if (counter) counter->hadamard_mults += static_cast<std::uint64_t>(params.alpha()) * params.alpha();
  return out;
}

template <typename T>
Tile2D<T> winograd_2d_tile(const TransformMatrices<T>& tm, const Tile2D<T>& input, const Tile2D<T>& kernel,
                           OpCounter* counter) {
  const auto u = data_transform_2d(tm, input);
  const auto v = filter_transform_2d(tm, kernel);
  return inverse_transform_2d(tm, hadamard_2d(u, v, tm.params, counter));
}

#define WINO_INSTANTIATE(T)                                                                                   \
  template class Tile2D<T>;                                                                                   \
  template std::vector<T> winograd_1d<T>(const TransformMatrices<T>&, std::span<const T>, std::span<const T>, \
                                         OpCounter*);                                                         \
  template Tile2D<T> filter_transform_2d<T>(const TransformMatrices<T>&, const Tile2D<T>&);                   \
  template Tile2D<T> data_transform_2d<T>(const TransformMatrices<T>&, const Tile2D<T>&);                     \
  template Tile2D<T> inverse_transform_2d<T>(const TransformMatrices<T>&, const Tile2D<T>&);                  \
  template Tile2D<T> hadamard_2d<T>(const Tile2D<T>&, const Tile2D<T>&, const MinimalParams&, OpCounter*);    \
  template Tile2D<T> winograd_2d_tile<T>(const TransformMatrices<T>&, const Tile2D<T>&, const Tile2D<T>&,     \
                                         OpCounter*);

WINO_INSTANTIATE(float)
WINO_INSTANTIATE(double)
WINO_INSTANTIATE(Rational)

#undef WINO_INSTANTIATE

}  // namespace wino
