#include "wino/run_config.hpp"

#include <cstdlib>

#include "wino/error.hpp"

namespace wino {

void RunConfig::resolve() {
  if (batch < 1) throw Error("workload_io", "batch must be >= 1, got " + std::to_string(batch));
  sweep.workload = load_workload(workload).with_batch(batch);
}

void RunConfig::validate() const {
  if (sweep.workload.layers.empty()) throw Error("workload_io", "workload '" + workload + "' was not resolved");
  sweep.workload.validate();
  hw.validate();
  if (out_dir.empty()) throw Error("workload_io", "empty output directory");
}

std::filesystem::path resolve_output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

}  // namespace wino
