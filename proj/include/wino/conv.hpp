#pragma once

#include <cstdint>
#include <vector>

#include "wino/matrix.hpp"
#include "wino/tensor.hpp"
#include "wino/transforms.hpp"

namespace wino {

struct ConvStats {
  std::uint64_t multiplications = 0;  // spatial MACs, or Hadamard products for the Winograd path
  std::uint64_t tiles = 0;            // output tiles per (image, channel) summed over the batch
};

struct TileGrid {
  int rows = 0;
  int cols = 0;
  int count() const noexcept { return rows * cols; }
};

// ceil(h_out / m) x ceil(w_out / m)
TileGrid tile_grid(int h_out, int w_out, int m);

// Filter transforms V = G g G^T for every (k, c) slice.
template <typename T>
class TransformedKernels {
 public:
  TransformedKernels(int k, int c, int alpha) : k_(k), c_(c), slices_(static_cast<std::size_t>(k) * c, Matrix<T>(alpha, alpha)) {}

  int k() const noexcept { return k_; }
  int c() const noexcept { return c_; }

  Matrix<T>& at(int kk, int ch) { return slices_[static_cast<std::size_t>(kk) * c_ + ch]; }
  const Matrix<T>& at(int kk, int ch) const { return slices_[static_cast<std::size_t>(kk) * c_ + ch]; }

 private:
  int k_, c_;
  std::vector<Matrix<T>> slices_;
};

// Direct cross-correlation, accumulated in 64-bit:
// Y[i,k,x,y] = sum_c sum_u sum_v D[i,c,x+u,y+v] * G[k,c,u,v].
template <typename T>
FeatureMap<T> spatial_conv(const FeatureMap<T>& input, const KernelBank<T>& kernels, const ConvSpec& spec,
                           ConvStats* stats = nullptr);

template <typename T>
TransformedKernels<T> precompute_filter_transforms(const KernelBank<T>& kernels, const TransformSet& ts);

// Tiled F(m x m, r x r) convolution. Tiles of alpha x alpha are taken with
// stride m from the padded input; edge tiles read zeros past the border and
// their excess outputs are dropped. Channels accumulate in ascending order
// after the inverse transform.
template <typename T>
FeatureMap<T> winograd_conv(const FeatureMap<T>& input, const KernelBank<T>& kernels, const ConvSpec& spec,
                            const TransformSet& ts, ConvStats* stats = nullptr);

namespace detail {

// Copies the alpha x alpha window with top-left (y0, x0) of one channel,
// treating everything outside the image as zero.
template <typename T>
void extract_tile(const FeatureMap<T>& input, int image, int channel, int y0, int x0, Matrix<T>& tile);

// left * x * right
template <typename T>
Matrix<T> sandwich(const Matrix<T>& left, const Matrix<T>& x, const Matrix<T>& right);

}  // namespace detail

}  // namespace wino
