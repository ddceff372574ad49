#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "wino/minimal_params.hpp"
#include "wino/transforms.hpp"

namespace wino {

// One convolution layer as seen by the closed-form models. h and w are the
// OUTPUT spatial dims, over which tiles are counted.
struct LayerShape {
  int n = 1;
  int h = 1;
  int w = 1;
  int c = 1;
  int k = 1;
  int r = 3;

  void validate() const;
  double outputs_times_channels() const;  // N*H*W*C*K
  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

// Per-tile operation counts of the data, filter and inverse transforms.
struct TransformOpCounts {
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
  std::int64_t delta = 0;
  friend bool operator==(const TransformOpCounts&, const TransformOpCounts&) = default;
};

// Linear LUT model: shared + per_pe * P.
struct LutModel {
  double per_pe = 0.0;
  double shared = 0.0;
};

// Shared-transform design. The slope is the reported per-PE increase; the
// intercept is what remains of the reported 19-PE total.
inline constexpr LutModel kSharedTransformLuts{5312.0, 107839.0 - 19 * 5312.0};
// Per-PE data transform design: 12224 LUTs per PE, 232256 at 19 PEs.
inline constexpr LutModel kReferenceDesignLuts{12224.0, 0.0};

double lut_total(const LutModel& model, int pes);

struct HardwareConfig {
  int m_total = 700;             // multiplier budget
  double clock_period = 5e-9;    // seconds
  std::optional<int> pipeline_depth;  // cycles; unset means default_pipeline_depth()
  LutModel luts = kSharedTransformLuts;

  void validate() const;
  int depth_for(const MinimalParams& params) const;
};

// analytical: fractional tile counts. tiled: ceilings, as the simulator runs.
enum class LatencyMode { analytical, tiled };

struct DesignPoint {
  MinimalParams params{1, 3};
  HardwareConfig hw;
  int p = 0;
  double o_m = 0.0;  // element-wise multiplications
  double o_t = 0.0;  // data + filter + inverse transform ops
  double o_T = 0.0;  // implemented transform ops, filter transform precomputed
  double o_s = 0.0;  // spatial convolution ops, 2 per MAC
  double t_total = 0.0;  // seconds
  double throughput = 0.0;  // ops / second
  double mult_efficiency = 0.0;  // ops / second / multiplier
};

// Straight-line evaluation of B^T d B, G g G^T and A^T M A as two chained
// products each: additions plus multiplications by constants other than
// 0 and +-1, no common subexpressions. Zero for m = 1.
TransformOpCounts count_transform_ops(const TransformSet& ts);

// (NHWCK / m^2) (m + r - 1)^2
double multiplication_complexity(const LayerShape& layer, const MinimalParams& params);

struct TransformComplexity {
  double data = 0.0;
  double filter = 0.0;
  double inverse = 0.0;
  double total = 0.0;
};

TransformComplexity transform_complexity(const LayerShape& layer, const MinimalParams& params,
                                         const TransformOpCounts& ops);

// (NHWCK / m^2) (beta / P + delta)
double implementation_transform_complexity(const LayerShape& layer, const MinimalParams& params,
                                           const TransformOpCounts& ops, int pes);

// floor(m_total / (m + r - 1)^2)
int pe_count(const HardwareConfig& hw, const MinimalParams& params);

// Data transform (1) + Hadamard (1) + adder tree of the inverse transform.
int default_pipeline_depth(const MinimalParams& params);

// NHWCK / (m^2 P) + D_p - 1
double layer_cycles_analytical(const LayerShape& layer, const MinimalParams& params, int pes, int depth);

// ceil(H/m) ceil(W/m) C ceil(K/P) N + D_p - 1
std::int64_t layer_cycles_tiled(const LayerShape& layer, const MinimalParams& params, int pes, int depth);

double layer_latency(const LayerShape& layer, const MinimalParams& params, int pes, const HardwareConfig& hw,
                     LatencyMode mode = LatencyMode::analytical);

// 2 N H W C K r^2
double spatial_ops(const LayerShape& layer);

double throughput(double o_s, double t_total);

DesignPoint evaluate_design(std::span<const LayerShape> layers, const MinimalParams& params,
                            const HardwareConfig& hw, const TransformOpCounts& ops,
                            LatencyMode mode = LatencyMode::analytical);

}  // namespace wino
