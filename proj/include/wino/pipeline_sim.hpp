#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wino/cost_model.hpp"
#include "wino/tensor.hpp"
#include "wino/transforms.hpp"

namespace wino {

enum class DesignMode {
  shared_transform,  // one data-transform stage feeds all P PEs
  per_pe_transform,  // every PE transforms the tile itself
};

struct EngineConfig {
  MinimalParams params{2, 3};
  int p = 1;
  int d_p = 3;
  double clock_period = 5e-9;
  DesignMode mode = DesignMode::shared_transform;
  bool record_cycles = false;  // keep a per-cycle occupancy log

  void validate() const;
};

enum class Stage { data_transform = 0, hadamard = 1, inverse_transform = 2 };

// Work item entering the pipeline in one cycle: one input tile of one channel
// against one group of up to P kernels.
struct TileIssue {
  int image = 0;
  int tile_row = 0;
  int tile_col = 0;
  int kernel_group = 0;
  int channel = 0;
};

struct CycleRecord {
  std::int64_t cycle = 0;
  std::optional<TileIssue> issued;
  std::array<int, 3> occupancy{};  // busy slots per named stage
};

struct SimTrace {
  std::int64_t cycles_elapsed = 0;
  std::int64_t issued_tiles = 0;
  std::array<std::int64_t, 3> stage_busy_cycles{};
  std::uint64_t hadamard_mult_count = 0;
  std::uint64_t data_transform_invocations = 0;
  std::vector<CycleRecord> cycles;  // only with record_cycles
};

// Stage-synchronous run of the PE array. Issue order is image, tile,
// kernel group, then channel innermost; each PE accumulates one output tile
// over C consecutive cycles.
std::pair<FeatureMap<float>, SimTrace> simulate_layer(const EngineConfig& cfg, const FeatureMap<float>& input,
                                                      const KernelBank<float>& kernels, const ConvSpec& spec);

// Same schedule and pipeline without data, for layers too large to run
// functionally.
SimTrace simulate_timing(const EngineConfig& cfg, const LayerShape& layer);

struct AnalyticalComparison {
  std::int64_t simulated_cycles = 0;
  double analytical_cycles = 0.0;  // fractional tiles
  double gap = 0.0;                // simulated - analytical
  double predicted_gap = 0.0;      // (ceil tiles * ceil groups - HWK/(m^2 P)) C N
};

AnalyticalComparison validate_against_analytical(const EngineConfig& cfg, const LayerShape& layer);

}  // namespace wino
