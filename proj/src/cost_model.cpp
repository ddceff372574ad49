#include "wino/cost_model.hpp"

#include <cmath>
#include <string>

#include "wino/error.hpp"

namespace wino {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("cost_model", message); }

bool is_trivial_coefficient(const Rational& c) { return c == 0 || c == 1 || c == -1; }

// Cost of one output of a linear combination with the given coefficients.
std::int64_t combination_cost(const Matrix<Rational>& coeffs, std::size_t index, bool by_row) {
  const std::size_t len = by_row ? coeffs.cols() : coeffs.rows();
  std::int64_t nonzero = 0;
  std::int64_t scaled = 0;
  for (std::size_t t = 0; t < len; ++t) {
    const auto& c = by_row ? coeffs(index, t) : coeffs(t, index);
    if (c != 0) ++nonzero;
    if (!is_trivial_coefficient(c)) ++scaled;
  }
  return (nonzero > 0 ? nonzero - 1 : 0) + scaled;
}

// L * X with X having `cols` columns.
std::int64_t left_product_cost(const Matrix<Rational>& left, std::int64_t cols) {
  std::int64_t per_column = 0;
  for (std::size_t i = 0; i < left.rows(); ++i) per_column += combination_cost(left, i, true);
  return per_column * cols;
}

// X * R with X having `rows` rows.
std::int64_t right_product_cost(const Matrix<Rational>& right, std::int64_t rows) {
  std::int64_t per_row = 0;
  for (std::size_t j = 0; j < right.cols(); ++j) per_row += combination_cost(right, j, false);
  return per_row * rows;
}

double tiles_fraction(const LayerShape& layer, const MinimalParams& params) {
  return layer.outputs_times_channels() / (static_cast<double>(params.m()) * params.m());
}

}  // namespace

void LayerShape::validate() const {
  if (n < 1 || h < 1 || w < 1 || c < 1 || k < 1 || r < 1) fail("layer dimensions must all be >= 1");
}

double LayerShape::outputs_times_channels() const {
  return static_cast<double>(n) * h * w * c * k;
}

double lut_total(const LutModel& model, int pes) { return model.shared + model.per_pe * pes; }

void HardwareConfig::validate() const {
  if (m_total < 1) fail("multiplier budget must be >= 1");
  if (!(clock_period > 0.0)) fail("clock period must be > 0");
  if (pipeline_depth && *pipeline_depth < 1) fail("pipeline depth must be >= 1");
}

int HardwareConfig::depth_for(const MinimalParams& params) const {
  return pipeline_depth ? *pipeline_depth : default_pipeline_depth(params);
}

TransformOpCounts count_transform_ops(const TransformSet& ts) {
  const auto& p = ts.params();
  if (p.m() == 1) return {};
  const std::int64_t alpha = p.alpha();
  const std::int64_t m = p.m();
  const std::int64_t r = p.r();
  const auto bt = ts.b().transposed();
  const auto at = ts.a().transposed();
  const auto gt = ts.g().transposed();
  TransformOpCounts out;
  out.beta = left_product_cost(bt, alpha) + right_product_cost(ts.b(), alpha);
  out.gamma = left_product_cost(ts.g(), r) + right_product_cost(gt, alpha);
  out.delta = left_product_cost(at, alpha) + right_product_cost(ts.a(), m);
  return out;
}

double multiplication_complexity(const LayerShape& layer, const MinimalParams& params) {
  layer.validate();
  const double alpha = params.alpha();
  return tiles_fraction(layer, params) * alpha * alpha;
}

TransformComplexity transform_complexity(const LayerShape& layer, const MinimalParams& params,
                                         const TransformOpCounts& ops) {
  layer.validate();
  const double mm = static_cast<double>(params.m()) * params.m();
  const double nhw = static_cast<double>(layer.n) * layer.h * layer.w;
  TransformComplexity out;
  out.data = static_cast<double>(ops.beta) / mm * nhw * layer.c;
  out.filter = static_cast<double>(ops.gamma) * layer.c * layer.k;
  out.inverse = static_cast<double>(ops.delta) / mm * nhw * layer.k;
  out.total = out.data + out.filter + out.inverse;
  return out;
}

double implementation_transform_complexity(const LayerShape& layer, const MinimalParams& params,
                                           const TransformOpCounts& ops, int pes) {
  layer.validate();
  if (pes < 1) fail("PE count must be >= 1");
  return tiles_fraction(layer, params) *
         (static_cast<double>(ops.beta) / pes + static_cast<double>(ops.delta));
}

int pe_count(const HardwareConfig& hw, const MinimalParams& params) {
  hw.validate();
  const int per_pe = params.alpha() * params.alpha();
  if (hw.m_total < per_pe) {
    fail("budget of " + std::to_string(hw.m_total) + " multipliers is smaller than one " + params.name() +
         " PE (" + std::to_string(per_pe) + ")");
  }
  return hw.m_total / per_pe;
}

int default_pipeline_depth(const MinimalParams& params) {
  int adder_levels = 0;
  while ((1 << adder_levels) < params.alpha()) ++adder_levels;
  return 2 + adder_levels;
}

double layer_cycles_analytical(const LayerShape& layer, const MinimalParams& params, int pes, int depth) {
  layer.validate();
  if (pes < 1) fail("PE count must be >= 1");
  return tiles_fraction(layer, params) / pes + depth - 1;
}

std::int64_t layer_cycles_tiled(const LayerShape& layer, const MinimalParams& params, int pes, int depth) {
  layer.validate();
  if (pes < 1) fail("PE count must be >= 1");
  const std::int64_t m = params.m();
  const std::int64_t tiles = ((layer.h + m - 1) / m) * ((layer.w + m - 1) / m);
  const std::int64_t groups = (layer.k + pes - 1) / pes;
  return tiles * layer.c * groups * layer.n + depth - 1;
}

double layer_latency(const LayerShape& layer, const MinimalParams& params, int pes, const HardwareConfig& hw,
                     LatencyMode mode) {
  hw.validate();
  const int depth = hw.depth_for(params);
  const double cycles = mode == LatencyMode::analytical
                            ? layer_cycles_analytical(layer, params, pes, depth)
                            : static_cast<double>(layer_cycles_tiled(layer, params, pes, depth));
  return cycles * hw.clock_period;
}

double spatial_ops(const LayerShape& layer) {
  layer.validate();
  return 2.0 * layer.outputs_times_channels() * layer.r * layer.r;
}

double throughput(double o_s, double t_total) {
  if (!(t_total > 0.0)) fail("total time must be > 0");
  return o_s / t_total;
}

DesignPoint evaluate_design(std::span<const LayerShape> layers, const MinimalParams& params,
                            const HardwareConfig& hw, const TransformOpCounts& ops, LatencyMode mode) {
  if (layers.empty()) fail("cannot evaluate a design on an empty layer list");
  DesignPoint point;
  point.params = params;
  point.hw = hw;
  point.p = pe_count(hw, params);
  for (const auto& layer : layers) {
    if (layer.r != params.r()) {
      fail("layer kernel size " + std::to_string(layer.r) + " does not match " + params.name());
    }
    point.o_m += multiplication_complexity(layer, params);
    point.o_t += transform_complexity(layer, params, ops).total;
    point.o_T += implementation_transform_complexity(layer, params, ops, point.p);
    point.o_s += spatial_ops(layer);
    point.t_total += layer_latency(layer, params, point.p, hw, mode);
  }
  point.throughput = throughput(point.o_s, point.t_total);
  point.mult_efficiency = point.throughput / hw.m_total;
  return point;
}

}  // namespace wino
