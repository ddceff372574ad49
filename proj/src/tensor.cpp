#include "wino/tensor.hpp"

#include <string>

#include "wino/error.hpp"

namespace wino {
namespace {

void require_positive(std::initializer_list<int> dims, const char* what) {
  for (int d : dims) {
    if (d < 1) throw Error("conv_engine", std::string(what) + " dimensions must all be >= 1");
  }
}

std::size_t product(std::initializer_list<int> dims) {
  std::size_t out = 1;
  for (int d : dims) out *= static_cast<std::size_t>(d);
  return out;
}

}  // namespace

template <typename T>
FeatureMap<T>::FeatureMap(int n, int c, int h, int w) : FeatureMap(n, c, h, w, std::vector<T>(product({n, c, h, w}))) {}

template <typename T>
FeatureMap<T>::FeatureMap(int n, int c, int h, int w, std::vector<T> data)
    : n_(n), c_(c), h_(h), w_(w), data_(std::move(data)) {
  require_positive({n, c, h, w}, "feature map");
  if (data_.size() != product({n, c, h, w})) {
    throw Error("conv_engine", "feature map data length " + std::to_string(data_.size()) + " does not match n*c*h*w");
  }
}

template <typename T>
KernelBank<T>::KernelBank(int k, int c, int r) : KernelBank(k, c, r, std::vector<T>(product({k, c, r, r}))) {}

template <typename T>
KernelBank<T>::KernelBank(int k, int c, int r, std::vector<T> data) : k_(k), c_(c), r_(r), data_(std::move(data)) {
  require_positive({k, c, r}, "kernel bank");
  if (data_.size() != product({k, c, r, r})) {
    throw Error("conv_engine", "kernel bank data length " + std::to_string(data_.size()) + " does not match k*c*r*r");
  }
}

template class FeatureMap<float>;
template class FeatureMap<double>;
template class KernelBank<float>;
template class KernelBank<double>;

}  // namespace wino
