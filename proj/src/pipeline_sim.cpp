#include "wino/pipeline_sim.hpp"

#include <algorithm>
#include <string>

#include "wino/conv.hpp"
#include "wino/error.hpp"

namespace wino {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("pipeline_sim", message); }

struct Geometry {
  int images = 0;
  TileGrid grid;
  int channels = 0;
  int kernel_groups = 0;

  std::int64_t issues() const {
    return static_cast<std::int64_t>(images) * grid.count() * kernel_groups * channels;
  }
};

Geometry geometry_for(const EngineConfig& cfg, const LayerShape& layer) {
  return {layer.n, tile_grid(layer.h, layer.w, cfg.params.m()), layer.c, (layer.k + cfg.p - 1) / cfg.p};
}

bool advance(TileIssue& t, const Geometry& g) {
  if (++t.channel < g.channels) return true;
  t.channel = 0;
  if (++t.kernel_group < g.kernel_groups) return true;
  t.kernel_group = 0;
  if (++t.tile_col < g.grid.cols) return true;
  t.tile_col = 0;
  if (++t.tile_row < g.grid.rows) return true;
  t.tile_row = 0;
  return ++t.image < g.images;
}

Stage stage_of_slot(int slot) {
  if (slot == 0) return Stage::data_transform;
  if (slot == 1) return Stage::hadamard;
  return Stage::inverse_transform;
}

struct NoPayload {};

struct TimingHooks {
  void data_transform(const TileIssue&, NoPayload&) {}
  void hadamard(const TileIssue&, NoPayload&) {}
  void inverse(const TileIssue&, NoPayload&) {}
  void retire(const TileIssue&, NoPayload&) {}
};

// Slot s of a d_p-deep pipeline: 0 data transform, 1 Hadamard, 2.. inverse
// transform adder tree; the last slot also accumulates into the output buffer.
template <typename Payload, typename Hooks>
SimTrace run_pipeline(const EngineConfig& cfg, const Geometry& geo, Hooks& hooks) {
  const int depth = cfg.d_p;
  const auto alpha = static_cast<std::uint64_t>(cfg.params.alpha());
  const std::uint64_t transforms_per_issue = cfg.mode == DesignMode::shared_transform ? 1 : cfg.p;

  std::vector<std::optional<std::pair<TileIssue, Payload>>> slots(depth);
  SimTrace trace;
  TileIssue next{};
  bool more = geo.issues() > 0;
  int in_flight = 0;

  while (more || in_flight > 0) {
    ++trace.cycles_elapsed;
    for (int s = depth - 1; s > 0; --s) slots[s] = std::move(slots[s - 1]);
    slots[0].reset();

    CycleRecord record;
    record.cycle = trace.cycles_elapsed;
    if (more) {
      slots[0].emplace(next, Payload{});
      record.issued = next;
      ++in_flight;
      ++trace.issued_tiles;
      more = advance(next, geo);
    }

    std::array<bool, 3> busy{};
    for (int s = 0; s < depth; ++s) {
      if (!slots[s]) continue;
      auto& [issue, payload] = *slots[s];
      const auto stage = stage_of_slot(s);
      busy[static_cast<int>(stage)] = true;
      ++record.occupancy[static_cast<int>(stage)];
      if (s == 0) {
        hooks.data_transform(issue, payload);
        trace.data_transform_invocations += transforms_per_issue;
      } else if (s == 1) {
        hooks.hadamard(issue, payload);
        trace.hadamard_mult_count += static_cast<std::uint64_t>(cfg.p) * alpha * alpha;
      } else if (s == 2) {
        hooks.inverse(issue, payload);
      }
    }
    for (int st = 0; st < 3; ++st) trace.stage_busy_cycles[st] += busy[st] ? 1 : 0;

    if (slots[depth - 1]) {
      hooks.retire(slots[depth - 1]->first, slots[depth - 1]->second);
      slots[depth - 1].reset();
      --in_flight;
    }
    if (cfg.record_cycles) trace.cycles.push_back(record);
  }
  return trace;
}

struct TilePayload {
  Matrix<float> u;
  std::vector<Matrix<float>> pe;  // Hadamard products, then inverse-transformed tiles
};

class FunctionalHooks {
 public:
  FunctionalHooks(const EngineConfig& cfg, const FeatureMap<float>& input, const KernelBank<float>& kernels,
                  const ConvSpec& spec, const TransformSet& ts, FeatureMap<float>& out)
      : cfg_(cfg),
        input_(input),
        kernels_(kernels),
        spec_(spec),
        tm_(ts.matrices<float>()),
        bt_(tm_.b.transposed()),
        at_(tm_.a.transposed()),
        filters_(precompute_filter_transforms(kernels, ts)),
        zero_filter_(cfg.params.alpha(), cfg.params.alpha()),
        tile_(cfg.params.alpha(), cfg.params.alpha()),
        buffers_(cfg.p, Matrix<float>(cfg.params.m(), cfg.params.m())),
        out_(out) {}

  void data_transform(const TileIssue& t, TilePayload& payload) {
    const int m = cfg_.params.m();
    detail::extract_tile(input_, t.image, t.channel, t.tile_row * m - spec_.pad, t.tile_col * m - spec_.pad, tile_);
    const int copies = cfg_.mode == DesignMode::shared_transform ? 1 : cfg_.p;
    for (int i = 0; i < copies; ++i) payload.u = detail::sandwich(bt_, tile_, tm_.b);
  }

  void hadamard(const TileIssue& t, TilePayload& payload) {
    payload.pe.resize(cfg_.p);
    for (int p = 0; p < cfg_.p; ++p) {
      const int k = t.kernel_group * cfg_.p + p;
      const auto& v = k < kernels_.k() ? filters_.at(k, t.channel) : zero_filter_;
      payload.pe[p] = wino::hadamard(payload.u, v);
    }
  }

  void inverse(const TileIssue&, TilePayload& payload) {
    for (auto& tile : payload.pe) tile = detail::sandwich(at_, tile, tm_.a);
  }

  void retire(const TileIssue& t, TilePayload& payload) {
    for (int p = 0; p < cfg_.p; ++p) {
      auto& acc = buffers_[p].values();
      const auto& y = payload.pe[p].values();
      for (std::size_t e = 0; e < acc.size(); ++e) acc[e] += y[e];
    }
    if (t.channel + 1 < input_.c()) return;

    const int m = cfg_.params.m();
    const int y0 = t.tile_row * m;
    const int x0 = t.tile_col * m;
    for (int p = 0; p < cfg_.p; ++p) {
      const int k = t.kernel_group * cfg_.p + p;
      if (k < kernels_.k()) {
        for (int u = 0; u < m && y0 + u < out_.h(); ++u)
          for (int v = 0; v < m && x0 + v < out_.w(); ++v) out_.at(t.image, k, y0 + u, x0 + v) = buffers_[p](u, v);
      }
      std::fill(buffers_[p].values().begin(), buffers_[p].values().end(), 0.0f);
    }
  }

 private:
  const EngineConfig& cfg_;
  const FeatureMap<float>& input_;
  const KernelBank<float>& kernels_;
  const ConvSpec& spec_;
  const TransformMatrices<float>& tm_;
  Matrix<float> bt_;
  Matrix<float> at_;
  TransformedKernels<float> filters_;
  Matrix<float> zero_filter_;
  Matrix<float> tile_;
  std::vector<Matrix<float>> buffers_;
  FeatureMap<float>& out_;
};

}  // namespace

void EngineConfig::validate() const {
  if (p < 1) fail("PE count must be >= 1, got " + std::to_string(p));
  if (d_p < 3) fail("pipeline depth must be >= 3 (data transform, Hadamard, inverse), got " + std::to_string(d_p));
  if (!(clock_period > 0.0)) fail("clock period must be > 0");
}

std::pair<FeatureMap<float>, SimTrace> simulate_layer(const EngineConfig& cfg, const FeatureMap<float>& input,
                                                      const KernelBank<float>& kernels, const ConvSpec& spec) {
  cfg.validate();
  if (input.c() != kernels.c()) {
    fail("channel mismatch: input has " + std::to_string(input.c()) + ", kernels have " + std::to_string(kernels.c()));
  }
  if (kernels.r() != cfg.params.r()) {
    fail("kernel size " + std::to_string(kernels.r()) + " does not match " + cfg.params.name());
  }
  if (spec.pad < 0) fail("padding must be >= 0");
  const LayerShape layer{input.n(), spec.output_extent(input.h(), kernels.r()), spec.output_extent(input.w(), kernels.r()),
                         input.c(), kernels.k(), kernels.r()};
  if (layer.h < 1 || layer.w < 1) fail("kernel larger than padded input");

  const auto ts = generate_transforms(cfg.params);
  FeatureMap<float> out(layer.n, layer.k, layer.h, layer.w);
  FunctionalHooks hooks(cfg, input, kernels, spec, ts, out);
  auto trace = run_pipeline<TilePayload>(cfg, geometry_for(cfg, layer), hooks);
  return {std::move(out), std::move(trace)};
}

SimTrace simulate_timing(const EngineConfig& cfg, const LayerShape& layer) {
  cfg.validate();
  layer.validate();
  if (layer.r != cfg.params.r()) fail("layer kernel size does not match " + cfg.params.name());
  TimingHooks hooks;
  return run_pipeline<NoPayload>(cfg, geometry_for(cfg, layer), hooks);
}

AnalyticalComparison validate_against_analytical(const EngineConfig& cfg, const LayerShape& layer) {
  AnalyticalComparison out;
  out.simulated_cycles = simulate_timing(cfg, layer).cycles_elapsed;
  out.analytical_cycles = layer_cycles_analytical(layer, cfg.params, cfg.p, cfg.d_p);
  out.gap = static_cast<double>(out.simulated_cycles) - out.analytical_cycles;

  const auto grid = tile_grid(layer.h, layer.w, cfg.params.m());
  const double mm = static_cast<double>(cfg.params.m()) * cfg.params.m();
  const double groups = static_cast<double>((layer.k + cfg.p - 1) / cfg.p);
  const double fractional = static_cast<double>(layer.h) * layer.w * layer.k / (mm * cfg.p);
  out.predicted_gap = (grid.count() * groups - fractional) * layer.c * layer.n;
  return out;
}

}  // namespace wino
