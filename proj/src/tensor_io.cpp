#include "wino/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "wino/error.hpp"

namespace wino {
namespace {

static_assert(std::endian::native == std::endian::little, "tensor I/O assumes a little-endian host");

constexpr const char* kMagic = "WINOTENSOR";

[[noreturn]] void fail(const std::string& message) { throw Error("conv_engine", message); }

template <typename T>
constexpr DType dtype_of() {
  return sizeof(T) == 4 ? DType::f32 : DType::f64;
}

void write_header(std::ostream& out, Layout layout, DType dtype, const std::array<int, 4>& dims) {
  out << kMagic << " 1\n"
      << "layout " << (layout == Layout::nchw ? "NCHW" : "KCRR") << '\n'
      << "dtype " << (dtype == DType::f32 ? "f32" : "f64") << '\n'
      << "dims " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << ' ' << dims[3] << '\n'
      << "end\n";
}

std::string expect_line(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) fail("truncated header, expected '" + key + "'");
  std::istringstream fields(line);
  std::string got;
  fields >> got;
  if (got != key) fail("expected header field '" + key + "', got '" + line + "'");
  std::string rest;
  std::getline(fields >> std::ws, rest);
  return rest;
}

template <typename T>
std::vector<T> read_payload(std::istream& in, const TensorHeader& header) {
  std::size_t count = 1;
  for (int d : header.dims) count *= static_cast<std::size_t>(d);
  std::vector<T> out(count);
  if (header.dtype == DType::f32) {
    std::vector<float> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(count * sizeof(float))) fail("truncated tensor payload");
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<T>(raw[i]);
  } else {
    std::vector<double> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) fail("truncated tensor payload");
    for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<T>(raw[i]);
  }
  return out;
}

template <typename T>
void write_payload(std::ostream& out, const std::vector<T>& data) {
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(T)));
  if (!out) fail("failed writing tensor payload");
}

}  // namespace

TensorHeader read_tensor_header(std::istream& in) {
  TensorHeader header;
  const auto version = expect_line(in, kMagic);
  if (version != "1") fail("unsupported tensor format version '" + version + "'");

  const auto layout = expect_line(in, "layout");
  if (layout == "NCHW") {
    header.layout = Layout::nchw;
  } else if (layout == "KCRR") {
    header.layout = Layout::kcrr;
  } else {
    fail("unknown layout '" + layout + "'");
  }

  const auto dtype = expect_line(in, "dtype");
  if (dtype == "f32") {
    header.dtype = DType::f32;
  } else if (dtype == "f64") {
    header.dtype = DType::f64;
  } else {
    fail("unknown dtype '" + dtype + "'");
  }

  std::istringstream dims(expect_line(in, "dims"));
  for (auto& d : header.dims) {
    if (!(dims >> d) || d < 1) fail("dims must be four positive integers");
  }
  std::string extra;
  if (dims >> extra) fail("dims must be four positive integers");
  expect_line(in, "end");
  return header;
}

template <typename T>
void write_feature_map(std::ostream& out, const FeatureMap<T>& map) {
  write_header(out, Layout::nchw, dtype_of<T>(), {map.n(), map.c(), map.h(), map.w()});
  write_payload(out, map.values());
}

template <typename T>
FeatureMap<T> read_feature_map(std::istream& in) {
  const auto header = read_tensor_header(in);
  if (header.layout != Layout::nchw) fail("expected an NCHW feature map");
  const auto& d = header.dims;
  return FeatureMap<T>(d[0], d[1], d[2], d[3], read_payload<T>(in, header));
}

template <typename T>
void write_kernel_bank(std::ostream& out, const KernelBank<T>& bank) {
  write_header(out, Layout::kcrr, dtype_of<T>(), {bank.k(), bank.c(), bank.r(), bank.r()});
  write_payload(out, bank.values());
}

template <typename T>
KernelBank<T> read_kernel_bank(std::istream& in) {
  const auto header = read_tensor_header(in);
  if (header.layout != Layout::kcrr) fail("expected a KCRR kernel bank");
  const auto& d = header.dims;
  if (d[2] != d[3]) fail("kernel bank must have square kernels");
  return KernelBank<T>(d[0], d[1], d[2], read_payload<T>(in, header));
}

template <typename T>
void save_feature_map(const std::filesystem::path& path, const FeatureMap<T>& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open " + path.string() + " for writing");
  write_feature_map(out, map);
}

template <typename T>
FeatureMap<T> load_feature_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  return read_feature_map<T>(in);
}

template <typename T>
void save_kernel_bank(const std::filesystem::path& path, const KernelBank<T>& bank) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot open " + path.string() + " for writing");
  write_kernel_bank(out, bank);
}

template <typename T>
KernelBank<T> load_kernel_bank(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  return read_kernel_bank<T>(in);
}

#define WINO_INSTANTIATE(T)                                                      \
  template void write_feature_map<T>(std::ostream&, const FeatureMap<T>&);       \
  template FeatureMap<T> read_feature_map<T>(std::istream&);                     \
  template void write_kernel_bank<T>(std::ostream&, const KernelBank<T>&);       \
  template KernelBank<T> read_kernel_bank<T>(std::istream&);                     \
  template void save_feature_map<T>(const std::filesystem::path&, const FeatureMap<T>&); \
  template FeatureMap<T> load_feature_map<T>(const std::filesystem::path&);      \
  template void save_kernel_bank<T>(const std::filesystem::path&, const KernelBank<T>&); \
  template KernelBank<T> load_kernel_bank<T>(const std::filesystem::path&);

WINO_INSTANTIATE(float)
WINO_INSTANTIATE(double)

#undef WINO_INSTANTIATE

}  // namespace wino
