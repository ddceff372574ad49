#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "wino/tensor.hpp"

namespace wino {

// Tensor container: a short text header followed by raw little-endian data.
//
//   WINOTENSOR 1\n
//   layout NCHW\n          (or KCRR)
//   dtype f32\n            (or f64)
//   dims 1 3 14 14\n
//   end\n
//   <n0*n1*n2*n3 elements>
//
// See docs/tensor_format.md.

enum class Layout { nchw, kcrr };
enum class DType { f32, f64 };

struct TensorHeader {
  Layout layout = Layout::nchw;
  DType dtype = DType::f32;
  std::array<int, 4> dims{};
};

TensorHeader read_tensor_header(std::istream& in);

template <typename T>
void write_feature_map(std::ostream& out, const FeatureMap<T>& map);
template <typename T>
FeatureMap<T> read_feature_map(std::istream& in);

template <typename T>
void write_kernel_bank(std::ostream& out, const KernelBank<T>& bank);
template <typename T>
KernelBank<T> read_kernel_bank(std::istream& in);

template <typename T>
void save_feature_map(const std::filesystem::path& path, const FeatureMap<T>& map);
template <typename T>
FeatureMap<T> load_feature_map(const std::filesystem::path& path);
template <typename T>
void save_kernel_bank(const std::filesystem::path& path, const KernelBank<T>& bank);
template <typename T>
KernelBank<T> load_kernel_bank(const std::filesystem::path& path);

}  // namespace wino
