#pragma once

#include <filesystem>
#include <string>

#include "wino/cost_model.hpp"
#include "wino/dse.hpp"
#include "wino/pipeline_sim.hpp"
#include "wino/workload.hpp"

namespace wino {

inline constexpr const char* kOutDirEnv = "WINOCONV_OUT_DIR";

// Everything one CLI run needs besides its subcommand-specific flags.
struct RunConfig {
  std::string workload = "vgg16d";  // builtin name or file path
  int batch = 1;
  SweepSpec sweep;                  // workload field is filled by resolve()
  HardwareConfig hw;
  std::filesystem::path out_dir = ".";
  LatencyMode latency = LatencyMode::analytical;
  DesignMode design = DesignMode::shared_transform;

  // Loads the referenced workload (applying the batch) into sweep.workload.
  void resolve();
  void validate() const;
};

// The --out flag if given, else $WINOCONV_OUT_DIR, else ".".
std::filesystem::path resolve_output_dir(const std::string& flag);

}  // namespace wino
