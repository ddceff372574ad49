#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wino/cost_model.hpp"
#include "wino/tensor.hpp"

namespace wino {

// One layer record; h and w are INPUT dims, the output dims follow from pad.
struct WorkloadLayer {
  int n = 1;
  int h = 1;
  int w = 1;
  int c = 1;
  int k = 1;
  int r = 3;
  int pad = 0;
  std::string group;

  LayerShape shape() const;
  friend bool operator==(const WorkloadLayer&, const WorkloadLayer&) = default;
};

struct Workload {
  std::string name;
  std::vector<WorkloadLayer> layers;

  // Distinct group labels in order of appearance.
  std::vector<std::string> groups() const;
  std::vector<LayerShape> shapes() const;
  std::vector<LayerShape> shapes(const std::string& group) const;

  // Same workload with every layer's batch replaced.
  Workload with_batch(int n) const;

  void validate() const;
  friend bool operator==(const Workload&, const Workload&) = default;
};

// The thirteen VGG16-D convolution layers, N = 1, 3x3 kernels, pad 1.
Workload vgg16d();

// Text format:
//   workload <name>
//   layer <n> <h> <w> <c> <k> <r> <pad> <group>
// '#' starts a comment. See docs/workload_format.md.
Workload parse_workload(std::istream& in, const std::string& source = "<stream>");
void save_workload(std::ostream& out, const Workload& workload);

// A builtin name ("vgg16d") or a path to a workload file.
Workload load_workload(const std::string& path_or_builtin);

}  // namespace wino
