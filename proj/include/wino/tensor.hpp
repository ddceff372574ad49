#pragma once

#include <cstddef>
#include <vector>

namespace wino {

// Dense N-C-H-W feature map.
template <typename T>
class FeatureMap {
 public:
  FeatureMap(int n, int c, int h, int w);
  FeatureMap(int n, int c, int h, int w, std::vector<T> data);

  int n() const noexcept { return n_; }
  int c() const noexcept { return c_; }
  int h() const noexcept { return h_; }
  int w() const noexcept { return w_; }

  T& at(int i, int ch, int y, int x) { return data_[index(i, ch, y, x)]; }
  const T& at(int i, int ch, int y, int x) const { return data_[index(i, ch, y, x)]; }

  const std::vector<T>& values() const noexcept { return data_; }
  std::vector<T>& values() noexcept { return data_; }

 private:
  std::size_t index(int i, int ch, int y, int x) const {
    return ((static_cast<std::size_t>(i) * c_ + ch) * h_ + y) * w_ + x;
  }

  int n_, c_, h_, w_;
  std::vector<T> data_;
};

// Dense K-C-r-r kernel bank.
template <typename T>
class KernelBank {
 public:
  KernelBank(int k, int c, int r);
  KernelBank(int k, int c, int r, std::vector<T> data);

  int k() const noexcept { return k_; }
  int c() const noexcept { return c_; }
  int r() const noexcept { return r_; }

  T& at(int kk, int ch, int u, int v) { return data_[index(kk, ch, u, v)]; }
  const T& at(int kk, int ch, int u, int v) const { return data_[index(kk, ch, u, v)]; }

  const std::vector<T>& values() const noexcept { return data_; }
  std::vector<T>& values() noexcept { return data_; }

 private:
  std::size_t index(int kk, int ch, int u, int v) const {
    return ((static_cast<std::size_t>(kk) * c_ + ch) * r_ + u) * r_ + v;
  }

  int k_, c_, r_;
  std::vector<T> data_;
};

template <typename To, typename From>
FeatureMap<To> cast(const FeatureMap<From>& in) {
  return FeatureMap<To>(in.n(), in.c(), in.h(), in.w(), std::vector<To>(in.values().begin(), in.values().end()));
}

template <typename To, typename From>
KernelBank<To> cast(const KernelBank<From>& in) {
  return KernelBank<To>(in.k(), in.c(), in.r(), std::vector<To>(in.values().begin(), in.values().end()));
}

// Zero border padding; stride is always 1.
struct ConvSpec {
  int pad = 0;

  int output_extent(int input_extent, int r) const { return input_extent + 2 * pad - r + 1; }
};

}  // namespace wino
