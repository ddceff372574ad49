#include "wino/workload.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "wino/error.hpp"

namespace wino {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("workload_io", message); }

}  // namespace

LayerShape WorkloadLayer::shape() const {
  ConvSpec spec{pad};
  return {n, spec.output_extent(h, r), spec.output_extent(w, r), c, k, r};
}

std::vector<std::string> Workload::groups() const {
  std::vector<std::string> out;
  for (const auto& layer : layers) {
    if (out.empty() || out.back() != layer.group) out.push_back(layer.group);
  }
  return out;
}

std::vector<LayerShape> Workload::shapes() const {
  std::vector<LayerShape> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) out.push_back(layer.shape());
  return out;
}

std::vector<LayerShape> Workload::shapes(const std::string& group) const {
  std::vector<LayerShape> out;
  for (const auto& layer : layers) {
    if (layer.group == group) out.push_back(layer.shape());
  }
  return out;
}

Workload Workload::with_batch(int n) const {
  Workload out = *this;
  for (auto& layer : out.layers) layer.n = n;
  return out;
}

void Workload::validate() const {
  if (name.empty()) fail("workload has no name");
  if (layers.empty()) fail("workload '" + name + "' has no layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    const auto where = "workload '" + name + "' layer " + std::to_string(i + 1);
    if (l.n < 1 || l.h < 1 || l.w < 1 || l.c < 1 || l.k < 1 || l.r < 1) fail(where + ": dimensions must be >= 1");
    if (l.pad < 0) fail(where + ": pad must be >= 0");
    if (l.group.empty()) fail(where + ": missing group label");
    const auto s = l.shape();
    if (s.h < 1 || s.w < 1) fail(where + ": kernel larger than padded input");
  }
  const auto labels = groups();
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) fail("workload '" + name + "': group labels are not contiguous");
}

Workload vgg16d() {
  Workload w{"vgg16d", {}};
  const auto add = [&](int size, int c, int k, const char* group) { w.layers.push_back({1, size, size, c, k, 3, 1, group}); };
  add(224, 3, 64, "conv1");
  add(224, 64, 64, "conv1");
  add(112, 64, 128, "conv2");
  add(112, 128, 128, "conv2");
  add(56, 128, 256, "conv3");
  add(56, 256, 256, "conv3");
  add(56, 256, 256, "conv3");
  add(28, 256, 512, "conv4");
  add(28, 512, 512, "conv4");
  add(28, 512, 512, "conv4");
  add(14, 512, 512, "conv5");
  add(14, 512, 512, "conv5");
  add(14, 512, 512, "conv5");
  return w;
}

Workload parse_workload(std::istream& in, const std::string& source) {
  Workload w;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    if (keyword == "workload") {
      if (have_header) fail(where + "duplicate 'workload' line");
      if (!(fields >> w.name)) fail(where + "'workload' needs a name");
      have_header = true;
    } else if (keyword == "layer") {
      if (!have_header) fail(where + "'layer' before 'workload' header");
      WorkloadLayer layer;
      const char* names[] = {"n", "h", "w", "c", "k", "r", "pad"};
      int* slots[] = {&layer.n, &layer.h, &layer.w, &layer.c, &layer.k, &layer.r, &layer.pad};
      for (std::size_t f = 0; f < 7; ++f) {
        if (!(fields >> *slots[f])) fail(where + "field '" + names[f] + "' missing or not an integer");
      }
      if (!(fields >> layer.group)) fail(where + "field 'group' missing");
      std::string extra;
      if (fields >> extra) fail(where + "unexpected trailing field '" + extra + "'");
      w.layers.push_back(std::move(layer));
    } else {
      fail(where + "unknown record '" + keyword + "'");
    }
  }
  if (!have_header) fail(source + ": empty workload (no 'workload' header)");
  if (w.layers.empty()) fail(source + ": workload '" + w.name + "' has no layers");
  try {
    w.validate();
  } catch (const Error& e) {
    fail(source + ": " + e.what());
  }
  return w;
}

void save_workload(std::ostream& out, const Workload& workload) {
  workload.validate();
  out << "workload " << workload.name << '\n';
  out << "# n h w c k r pad group\n";
  for (const auto& l : workload.layers) {
    out << "layer " << l.n << ' ' << l.h << ' ' << l.w << ' ' << l.c << ' ' << l.k << ' ' << l.r << ' ' << l.pad
        << ' ' << l.group << '\n';
  }
}

Workload load_workload(const std::string& path_or_builtin) {
  if (path_or_builtin == "vgg16d") return vgg16d();
  std::ifstream in(path_or_builtin);
  if (!in) fail("unknown builtin workload or unreadable file '" + path_or_builtin + "'");
  return parse_workload(in, path_or_builtin);
}

}  // namespace wino
