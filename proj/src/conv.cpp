#include "wino/conv.hpp"

#include <string>

#include "wino/error.hpp"

namespace wino {
namespace {

template <typename T>
void check_shapes(const FeatureMap<T>& input, const KernelBank<T>& kernels, const ConvSpec& spec) {
  if (input.c() != kernels.c()) {
    throw Error("conv_engine", "channel mismatch: input has " + std::to_string(input.c()) + ", kernels have " +
                                   std::to_string(kernels.c()));
  }
  if (spec.pad < 0) throw Error("conv_engine", "padding must be >= 0");
  if (spec.output_extent(input.h(), kernels.r()) < 1 || spec.output_extent(input.w(), kernels.r()) < 1) {
    throw Error("conv_engine", "kernel larger than padded input");
  }
}

}  // namespace

TileGrid tile_grid(int h_out, int w_out, int m) { return {(h_out + m - 1) / m, (w_out + m - 1) / m}; }

namespace detail {

template <typename T>
void extract_tile(const FeatureMap<T>& input, int image, int channel, int y0, int x0, Matrix<T>& tile) {
  const int n = static_cast<int>(tile.rows());
  for (int i = 0; i < n; ++i) {
    const int y = y0 + i;
    for (int j = 0; j < n; ++j) {
      const int x = x0 + j;
      const bool inside = y >= 0 && y < input.h() && x >= 0 && x < input.w();
      tile(i, j) = inside ? input.at(image, channel, y, x) : T(0);
    }
  }
}

template <typename T>
Matrix<T> sandwich(const Matrix<T>& left, const Matrix<T>& x, const Matrix<T>& right) {
  return matmul(matmul(left, x), right);
}

}  // namespace detail

template <typename T>
FeatureMap<T> spatial_conv(const FeatureMap<T>& input, const KernelBank<T>& kernels, const ConvSpec& spec,
                           ConvStats* stats) {
  check_shapes(input, kernels, spec);
  const int r = kernels.r();
  const int h_out = spec.output_extent(input.h(), r);
  const int w_out = spec.output_extent(input.w(), r);
  FeatureMap<T> out(input.n(), kernels.k(), h_out, w_out);
  for (int i = 0; i < input.n(); ++i)
    for (int k = 0; k < kernels.k(); ++k)
      for (int y = 0; y < h_out; ++y)
        for (int x = 0; x < w_out; ++x) {
          double acc = 0.0;
          for (int c = 0; c < input.c(); ++c)
            for (int u = 0; u < r; ++u) {
              const int iy = y + u - spec.pad;
              if (iy < 0 || iy >= input.h()) continue;
              for (int v = 0; v < r; ++v) {
                const int ix = x + v - spec.pad;
                if (ix < 0 || ix >= input.w()) continue;
                acc += static_cast<double>(input.at(i, c, iy, ix)) * static_cast<double>(kernels.at(k, c, u, v));
              }
            }
          out.at(i, k, y, x) = static_cast<T>(acc);
        }
  if (stats) {
    stats->multiplications += static_cast<std::uint64_t>(input.n()) * kernels.k() * h_out * w_out * input.c() * r * r;
  }
  return out;
}

template <typename T>
TransformedKernels<T> precompute_filter_transforms(const KernelBank<T>& kernels, const TransformSet& ts) {
  if (kernels.r() != ts.params().r()) {
    throw Error("conv_engine", "kernel size " + std::to_string(kernels.r()) + " does not match transform set " +
                                   ts.params().name());
  }
  const auto& tm = ts.matrices<T>();
  const auto gt = tm.g.transposed();
  const int r = kernels.r();
  TransformedKernels<T> out(kernels.k(), kernels.c(), ts.params().alpha());
  Matrix<T> g(r, r);
  for (int k = 0; k < kernels.k(); ++k)
    for (int c = 0; c < kernels.c(); ++c) {
      for (int u = 0; u < r; ++u)
        for (int v = 0; v < r; ++v) g(u, v) = kernels.at(k, c, u, v);
      out.at(k, c) = detail::sandwich(tm.g, g, gt);
    }
  return out;
}

template <typename T>
FeatureMap<T> winograd_conv(const FeatureMap<T>& input, const KernelBank<T>& kernels, const ConvSpec& spec,
                            const TransformSet& ts, ConvStats* stats) {
  if (kernels.r() != ts.params().r()) {
    throw Error("conv_engine", "kernel size " + std::to_string(kernels.r()) + " does not match transform set " +
                                   ts.params().name());
  }
  check_shapes(input, kernels, spec);

  const auto& tm = ts.matrices<T>();
  const auto bt = tm.b.transposed();
  const auto at = tm.a.transposed();
  const int m = ts.params().m();
  const int alpha = ts.params().alpha();
  const int h_out = spec.output_extent(input.h(), kernels.r());
  const int w_out = spec.output_extent(input.w(), kernels.r());
  const auto grid = tile_grid(h_out, w_out, m);
  const auto filters = precompute_filter_transforms(kernels, ts);

  FeatureMap<T> out(input.n(), kernels.k(), h_out, w_out);
  std::vector<Matrix<T>> transformed(static_cast<std::size_t>(input.c()));
  Matrix<T> tile(alpha, alpha);

  for (int i = 0; i < input.n(); ++i)
    for (int ty = 0; ty < grid.rows; ++ty)
      for (int tx = 0; tx < grid.cols; ++tx) {
        const int y0 = ty * m;
        const int x0 = tx * m;
        for (int c = 0; c < input.c(); ++c) {
          detail::extract_tile(input, i, c, y0 - spec.pad, x0 - spec.pad, tile);
          transformed[c] = detail::sandwich(bt, tile, tm.b);
        }
        for (int k = 0; k < kernels.k(); ++k) {
          Matrix<T> acc(m, m);
          for (int c = 0; c < input.c(); ++c) {
            const auto y = detail::sandwich(at, hadamard(transformed[c], filters.at(k, c)), tm.a);
            for (std::size_t e = 0; e < acc.values().size(); ++e) acc.values()[e] += y.values()[e];
          }
          for (int u = 0; u < m && y0 + u < h_out; ++u)
            for (int v = 0; v < m && x0 + v < w_out; ++v) out.at(i, k, y0 + u, x0 + v) = acc(u, v);
        }
      }
  if (stats) {
    const auto tiles = static_cast<std::uint64_t>(input.n()) * grid.count();
    stats->tiles += tiles;
    stats->multiplications += tiles * input.c() * kernels.k() * alpha * alpha;
  }
  return out;
}

#define WINO_INSTANTIATE(T)                                                                                  \
  template FeatureMap<T> spatial_conv<T>(const FeatureMap<T>&, const KernelBank<T>&, const ConvSpec&,       \
                                         ConvStats*);                                                        \
  template TransformedKernels<T> precompute_filter_transforms<T>(const KernelBank<T>&, const TransformSet&); \
  template FeatureMap<T> winograd_conv<T>(const FeatureMap<T>&, const KernelBank<T>&, const ConvSpec&,      \
                                          const TransformSet&, ConvStats*);                                  \
  template void detail::extract_tile<T>(const FeatureMap<T>&, int, int, int, int, Matrix<T>&);               \
  template Matrix<T> detail::sandwich<T>(const Matrix<T>&, const Matrix<T>&, const Matrix<T>&);

WINO_INSTANTIATE(float)
WINO_INSTANTIATE(double)

#undef WINO_INSTANTIATE

}  // namespace wino
