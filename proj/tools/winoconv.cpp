// winoconv: transforms, convolution, design-space sweeps, PE-array simulation
// and the VGG16-D comparison report.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "wino/conv.hpp"
#include "wino/cost_model.hpp"
#include "wino/dse.hpp"
#include "wino/error.hpp"
#include "wino/pipeline_sim.hpp"
#include "wino/run_config.hpp"
#include "wino/tensor_io.hpp"
#include "wino/transforms.hpp"
#include "wino/workload.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

using wino::kOutDirEnv;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw wino::Error("cli", std::string("invalid integer for ") + what + ": '" + text + "'");
}

// "a,b,c" or "start:stop:step" (inclusive).
std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto range = split(part, ':');
    if (range.size() == 1) {
      out.push_back(parse_int(range[0], what));
    } else if (range.size() == 3) {
      const int start = parse_int(range[0], what);
      const int stop = parse_int(range[1], what);
      const int step = parse_int(range[2], what);
      if (step < 1) throw wino::Error("cli", std::string("range step must be >= 1 for ") + what);
      for (int v = start; v <= stop; v += step) out.push_back(v);
    } else {
      throw wino::Error("cli", std::string("invalid list for ") + what + ": '" + text + "'");
    }
  }
  if (out.empty()) throw wino::Error("cli", std::string("empty list for ") + what);
  return out;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw wino::Error("cli", "cannot write " + path.string());
  return out;
}

void print_matrix(std::ostream& out, const char* name, const wino::Matrix<wino::Rational>& m) {
  out << name << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << " ";
    for (std::size_t j = 0; j < m.cols(); ++j) out << ' ' << fmt::format("{:>6}", wino::to_string(m(i, j)));
    out << '\n';
  }
}

template <typename T>
wino::FeatureMap<T> random_map(int n, int c, int h, int w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  wino::FeatureMap<T> map(n, c, h, w);
  for (auto& v : map.values()) v = static_cast<T>(dist(rng));
  return map;
}

template <typename T>
wino::KernelBank<T> random_bank(int k, int c, int r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  wino::KernelBank<T> bank(k, c, r);
  for (auto& v : bank.values()) v = static_cast<T>(dist(rng));
  return bank;
}

template <typename T>
std::pair<double, double> max_errors(const wino::FeatureMap<T>& a, const wino::FeatureMap<T>& b) {
  double max_abs = 0.0;
  double max_ref = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    max_abs = std::max(max_abs, std::abs(static_cast<double>(a.values()[i]) - static_cast<double>(b.values()[i])));
    max_ref = std::max(max_ref, std::abs(static_cast<double>(b.values()[i])));
  }
  return {max_abs, max_ref > 0.0 ? max_abs / max_ref : max_abs};
}

// ---- transform ----------------------------------------------------------

struct TransformArgs {
  int m = 2;
  int r = 3;
  std::string points;
  std::string csv_dir;
};

int run_transform(const TransformArgs& args) {
  std::optional<std::vector<wino::Rational>> points;
  if (!args.points.empty()) {
    points.emplace();
    for (const auto& p : split(args.points, ',')) points->push_back(wino::parse_rational(p));
  }
  const auto ts = wino::generate_transforms(wino::MinimalParams(args.m, args.r), points);
  std::cout << ts.params().name() << " points:";
  for (const auto& p : ts.interpolation_points()) std::cout << ' ' << wino::to_string(p);
  std::cout << (ts.interpolation_points().empty() ? " (identity form)\n" : " inf\n");
  print_matrix(std::cout, "AT", ts.a().transposed());
  print_matrix(std::cout, "BT", ts.b().transposed());
  print_matrix(std::cout, "G", ts.g());
  const auto ops = wino::count_transform_ops(ts);
  std::cout << "ops beta=" << ops.beta << " gamma=" << ops.gamma << " delta=" << ops.delta << '\n';
  if (!args.csv_dir.empty()) wino::export_transforms_csv(ts, args.csv_dir);
  return 0;
}

// ---- conv ---------------------------------------------------------------

struct ConvArgs {
  std::string input;
  std::string kernels;
  std::string random_shape;  // "n,c,h,w"
  int k = 8;
  int m = 2;
  int pad = 1;
  std::uint64_t seed = 1;
  std::string precision = "f32";
  std::string output;
  std::string stats;
};

template <typename T>
int run_conv_typed(const ConvArgs& args) {
  std::mt19937_64 rng(args.seed);
  std::optional<wino::FeatureMap<T>> input;
  std::optional<wino::KernelBank<T>> kernels;
  if (!args.random_shape.empty()) {
    const auto dims = split(args.random_shape, ',');
    if (dims.size() != 4) throw wino::Error("cli", "--random expects n,c,h,w");
    const int c = parse_int(dims[1], "c");
    input = random_map<T>(parse_int(dims[0], "n"), c, parse_int(dims[2], "h"), parse_int(dims[3], "w"), rng);
    kernels = random_bank<T>(args.k, c, 3, rng);
  } else {
    if (args.input.empty() || args.kernels.empty()) {
      throw wino::Error("cli", "conv needs --input and --kernels, or --random");
    }
    input = wino::load_feature_map<T>(args.input);
    kernels = wino::load_kernel_bank<T>(args.kernels);
  }
  const wino::ConvSpec spec{args.pad};
  const auto ts = wino::generate_transforms(wino::MinimalParams(args.m, kernels->r()));
  wino::ConvStats spatial_stats;
  wino::ConvStats wino_stats;
  const auto reference = wino::spatial_conv(*input, *kernels, spec, &spatial_stats);
  const auto result = wino::winograd_conv(*input, *kernels, spec, ts, &wino_stats);
  const auto [max_abs, max_rel] = max_errors(result, reference);

  if (!args.output.empty()) wino::save_feature_map(args.output, result);

  json record{{"type", "conv"},
              {"params", ts.params().name()},
              {"precision", args.precision},
              {"output_dims", {result.n(), result.c(), result.h(), result.w()}},
              {"spatial_mults", spatial_stats.multiplications},
              {"winograd_mults", wino_stats.multiplications},
              {"tiles", wino_stats.tiles},
              {"max_abs_error", max_abs},
              {"max_rel_error", max_rel}};
  if (args.stats.empty()) {
    std::cout << record.dump() << '\n';
  } else {
    auto out = open_output(args.stats);
    out << record.dump() << '\n';
  }
  return 0;
}

int run_conv(const ConvArgs& args) {
  if (args.precision == "f32") return run_conv_typed<float>(args);
  if (args.precision == "f64") return run_conv_typed<double>(args);
  throw wino::Error("cli", "--precision must be f32 or f64");
}

// ---- dse ----------------------------------------------------------------

struct DseArgs {
  std::string workload = "vgg16d";
  std::string m_values = "1,2,3,4,5";
  int r = 3;
  std::string budgets = "100:1000:50";
  double clock_mhz = 200.0;
  int batch = 1;
  std::string out;
};

json design_json(const wino::DesignPoint& p) {
  return {{"params", p.params.name()}, {"m", p.params.m()}, {"r", p.params.r()},       {"multipliers", p.hw.m_total},
          {"pes", p.p},                {"O_m", p.o_m},      {"O_t", p.o_t},            {"O_T", p.o_T},
          {"O_S", p.o_s},              {"latency_ms", p.t_total * 1e3}, {"gops", p.throughput / 1e9},
          {"gops_per_mult", p.mult_efficiency / 1e9}};
}

int run_dse(const DseArgs& args) {
  wino::RunConfig cfg;
  cfg.workload = args.workload;
  cfg.batch = args.batch;
  cfg.sweep.m_values = parse_int_list(args.m_values, "--m");
  cfg.sweep.r = args.r;
  cfg.sweep.budgets = parse_int_list(args.budgets, "--budgets");
  cfg.hw.clock_period = 1.0 / (args.clock_mhz * 1e6);
  cfg.sweep.hw = cfg.hw;
  cfg.out_dir = wino::resolve_output_dir(args.out);
  cfg.resolve();
  cfg.validate();
  const auto result = wino::run_sweep(cfg.sweep);

  const auto& dir = cfg.out_dir;
  fs::create_directories(dir);
  {
    auto f = open_output(dir / "fig1.csv");
    wino::write_fig1_csv(f, result);
  }
  {
    auto f = open_output(dir / "fig2.csv");
    wino::write_fig2_csv(f, result);
  }
  {
    auto f = open_output(dir / "fig3.csv");
    wino::write_fig3_csv(f, result);
  }
  {
    auto f = open_output(dir / "fig6.csv");
    wino::write_fig6_csv(f, result);
  }
  for (const auto& t : result.transitions) {
    json line{{"type", "transition"}, {"m_from", t.m_from}, {"m_to", t.m_to}, {"pct_mult_decrease", t.pct_mult_decrease}};
    line["pct_transform_increase"] = t.pct_transform_increase ? json(*t.pct_transform_increase) : json(nullptr);
    line["favorable"] = t.favorable();
    std::cout << line.dump() << '\n';
  }
  json rec = design_json(wino::recommend(result));
  rec["type"] = "recommendation";
  rec["knee_m"] = wino::knee(result);
  std::cout << rec.dump() << '\n';
  return 0;
}

// ---- simulate -----------------------------------------------------------

struct SimArgs {
  int m = 2;
  int r = 3;
  int p = 4;
  int d_p = 0;
  int n = 1;
  int c = 4;
  int h = 14;
  int w = 14;
  int k = 8;
  int pad = 1;
  bool reference = false;
  bool timing_only = false;
  bool cycles = false;
  double clock_mhz = 200.0;
  std::uint64_t seed = 1;
  std::string input;
  std::string kernels;
  std::string trace;
  std::string output;
};

json trace_summary(const wino::SimTrace& trace, const wino::EngineConfig& cfg) {
  return {{"type", "summary"},
          {"params", cfg.params.name()},
          {"pes", cfg.p},
          {"pipeline_depth", cfg.d_p},
          {"mode", cfg.mode == wino::DesignMode::shared_transform ? "shared" : "per_pe"},
          {"cycles_elapsed", trace.cycles_elapsed},
          {"latency_s", static_cast<double>(trace.cycles_elapsed) * cfg.clock_period},
          {"issued_tiles", trace.issued_tiles},
          {"hadamard_mult_count", trace.hadamard_mult_count},
          {"data_transform_invocations", trace.data_transform_invocations},
          {"stage_busy_cycles",
           {{"data_transform", trace.stage_busy_cycles[0]},
            {"hadamard", trace.stage_busy_cycles[1]},
            {"inverse_transform", trace.stage_busy_cycles[2]}}}};
}

void write_trace(std::ostream& out, const wino::SimTrace& trace, const wino::EngineConfig& cfg) {
  for (const auto& rec : trace.cycles) {
    json line{{"type", "cycle"},
              {"cycle", rec.cycle},
              {"occupancy",
               {{"data_transform", rec.occupancy[0]}, {"hadamard", rec.occupancy[1]}, {"inverse_transform", rec.occupancy[2]}}}};
    if (rec.issued) {
      const auto& t = *rec.issued;
      line["issued"] = {{"image", t.image}, {"tile_row", t.tile_row}, {"tile_col", t.tile_col},
                        {"kernel_group", t.kernel_group}, {"channel", t.channel}};
    } else {
      line["issued"] = nullptr;
    }
    out << line.dump() << '\n';
  }
  out << trace_summary(trace, cfg).dump() << '\n';
}

int run_simulate(const SimArgs& args) {
  wino::EngineConfig cfg;
  cfg.params = wino::MinimalParams(args.m, args.r);
  cfg.p = args.p;
  cfg.d_p = args.d_p > 0 ? args.d_p : std::max(3, wino::default_pipeline_depth(cfg.params));
  cfg.clock_period = 1.0 / (args.clock_mhz * 1e6);
  cfg.mode = args.reference ? wino::DesignMode::per_pe_transform : wino::DesignMode::shared_transform;
  cfg.record_cycles = args.cycles;

  wino::SimTrace trace;
  json extra;
  if (args.timing_only) {
    const wino::ConvSpec spec{args.pad};
    const wino::LayerShape layer{args.n, spec.output_extent(args.h, args.r), spec.output_extent(args.w, args.r),
                                 args.c, args.k, args.r};
    trace = wino::simulate_timing(cfg, layer);
    const auto cmp = wino::validate_against_analytical(cfg, layer);
    extra = {{"type", "analytical"}, {"simulated_cycles", cmp.simulated_cycles}, {"analytical_cycles", cmp.analytical_cycles},
             {"gap", cmp.gap}, {"predicted_gap", cmp.predicted_gap}};
  } else {
    std::mt19937_64 rng(args.seed);
    const auto input = args.input.empty() ? random_map<float>(args.n, args.c, args.h, args.w, rng)
                                          : wino::load_feature_map<float>(args.input);
    const auto kernels = args.kernels.empty() ? random_bank<float>(args.k, input.c(), args.r, rng)
                                              : wino::load_kernel_bank<float>(args.kernels);
    const wino::ConvSpec spec{args.pad};
    auto [out, t] = wino::simulate_layer(cfg, input, kernels, spec);
    trace = std::move(t);
    const auto reference = wino::winograd_conv(input, kernels, spec, wino::generate_transforms(cfg.params));
    const auto [max_abs, max_rel] = max_errors(out, reference);
    extra = {{"type", "check"}, {"max_abs_error_vs_winograd_conv", max_abs}, {"max_rel_error_vs_winograd_conv", max_rel}};
    if (!args.output.empty()) wino::save_feature_map(args.output, out);
  }

  if (args.trace.empty()) {
    write_trace(std::cout, trace, cfg);
    std::cout << extra.dump() << '\n';
  } else {
    auto f = open_output(args.trace);
    write_trace(f, trace, cfg);
    f << extra.dump() << '\n';
  }
  return 0;
}

// ---- report -------------------------------------------------------------

struct ReportArgs {
  std::string workload = "vgg16d";
  double clock_mhz = 200.0;
  int batch = 1;
  std::string out;
};

int run_report(const ReportArgs& args) {
  wino::RunConfig cfg;
  cfg.workload = args.workload;
  cfg.batch = args.batch;
  cfg.hw.clock_period = 1.0 / (args.clock_mhz * 1e6);
  cfg.out_dir = wino::resolve_output_dir(args.out);
  cfg.resolve();
  cfg.validate();
  const auto report = wino::table2_report(cfg.sweep.workload, wino::table2_designs(), cfg.hw);

  const auto& dir = cfg.out_dir;
  fs::create_directories(dir);
  {
    auto f = open_output(dir / "table2.csv");
    wino::write_table2_csv(f, report);
  }
  {
    auto f = open_output(dir / "table2_reported.csv");
    wino::write_reported_csv(f);
  }
  {
    auto f = open_output(dir / "resources.csv");
    wino::write_resources_csv(f);
  }

  std::cout << fmt::format("{:<18} {:>4} {:>5} {:>4}", "design", "m,r", "mults", "PEs");
  for (const auto& g : report.groups) std::cout << fmt::format(" {:>8}", g + "_ms");
  std::cout << fmt::format(" {:>10} {:>9} {:>10}\n", "overall_ms", "GOPS", "GOPS/mult");
  for (const auto& row : report.rows) {
    std::cout << fmt::format("{:<18} {:>4} {:>5} {:>4}", row.design,
                             std::to_string(row.params.m()) + "," + std::to_string(row.params.r()), row.multipliers,
                             row.pes);
    for (double ms : row.group_ms) std::cout << fmt::format(" {:>8.2f}", ms);
    std::cout << fmt::format(" {:>10.2f} {:>9.1f} {:>10.2f}\n", row.overall_ms, row.gops, row.gops_per_mult);
  }
  std::cout << "power, frequency and resource figures: " << (dir / "table2_reported.csv").string() << ", "
            << (dir / "resources.csv").string() << " (reported values, not modeled)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Winograd minimal-filtering convolution: transforms, cost models, DSE and PE-array simulation", "winoconv"};
  app.require_subcommand(1);

  TransformArgs targs;
  auto* transform = app.add_subcommand("transform", "Print/export the F(m,r) transform matrices");
  transform->add_option("--m", targs.m, "Output tile size")->capture_default_str();
  transform->add_option("--r", targs.r, "Kernel size")->capture_default_str();
  transform->add_option("--points", targs.points, "Comma-separated finite interpolation points, e.g. 0,1,-1,1/2");
  transform->add_option("--csv-dir", targs.csv_dir, "Write AT.csv, BT.csv, G.csv here");

  ConvArgs cargs;
  auto* conv = app.add_subcommand("conv", "Run spatial and Winograd convolution and compare");
  conv->add_option("--input", cargs.input, "Input feature map tensor file (NCHW)");
  conv->add_option("--kernels", cargs.kernels, "Kernel bank tensor file (KCRR)");
  conv->add_option("--random", cargs.random_shape, "Random input n,c,h,w with 3x3 kernels instead of files");
  conv->add_option("--k", cargs.k, "Kernel count for --random")->capture_default_str();
  conv->add_option("--m", cargs.m, "Output tile size")->capture_default_str();
  conv->add_option("--pad", cargs.pad, "Zero padding")->capture_default_str();
  conv->add_option("--seed", cargs.seed, "RNG seed")->capture_default_str();
  conv->add_option("--precision", cargs.precision, "f32 or f64")->capture_default_str();
  conv->add_option("--output", cargs.output, "Write the Winograd output tensor here");
  conv->add_option("--stats", cargs.stats, "Write the JSON-lines stats record here (default stdout)");

  DseArgs dargs;
  auto* dse = app.add_subcommand("dse", "Sweep m and multiplier budget; write fig1/2/3/6.csv");
  dse->add_option("--workload", dargs.workload, "Builtin name or workload file")->capture_default_str();
  dse->add_option("--m", dargs.m_values, "m values (list or start:stop:step)")->capture_default_str();
  dse->add_option("--r", dargs.r, "Kernel size")->capture_default_str();
  dse->add_option("--budgets", dargs.budgets, "Multiplier budgets (list or start:stop:step)")->capture_default_str();
  dse->add_option("--clock-mhz", dargs.clock_mhz, "Clock frequency")->capture_default_str();
  dse->add_option("--batch", dargs.batch, "Batch size N")->capture_default_str();
  dse->add_option("--out", dargs.out, std::string("Output directory (default $") + kOutDirEnv + " or .)");

  SimArgs sargs;
  auto* sim = app.add_subcommand("simulate", "Cycle-level simulation of the PE array on one layer");
  sim->add_option("--m", sargs.m)->capture_default_str();
  sim->add_option("--r", sargs.r)->capture_default_str();
  sim->add_option("--p", sargs.p, "PE count")->capture_default_str();
  sim->add_option("--dp", sargs.d_p, "Pipeline depth (default: 2 + ceil(log2(m+r-1)))");
  sim->add_option("--n", sargs.n)->capture_default_str();
  sim->add_option("--c", sargs.c)->capture_default_str();
  sim->add_option("--height", sargs.h, "Input height")->capture_default_str();
  sim->add_option("--width", sargs.w, "Input width")->capture_default_str();
  sim->add_option("--k", sargs.k)->capture_default_str();
  sim->add_option("--pad", sargs.pad)->capture_default_str();
  sim->add_flag("--reference", sargs.reference, "Per-PE data transform (reference design)");
  sim->add_flag("--timing-only", sargs.timing_only, "Run the schedule without data and compare with the closed form");
  sim->add_flag("--cycles", sargs.cycles, "Emit one JSON line per cycle");
  sim->add_option("--clock-mhz", sargs.clock_mhz)->capture_default_str();
  sim->add_option("--seed", sargs.seed)->capture_default_str();
  sim->add_option("--input", sargs.input, "Input tensor file instead of random data");
  sim->add_option("--kernels", sargs.kernels, "Kernel tensor file instead of random data");
  sim->add_option("--trace", sargs.trace, "Write JSON-lines trace here (default stdout)");
  sim->add_option("--output", sargs.output, "Write the output tensor here");

  ReportArgs rargs;
  auto* report = app.add_subcommand("report", "VGG16-D comparison table (table2.csv)");
  report->add_option("--workload", rargs.workload)->capture_default_str();
  report->add_option("--clock-mhz", rargs.clock_mhz)->capture_default_str();
  report->add_option("--batch", rargs.batch)->capture_default_str();
  report->add_option("--out", rargs.out, std::string("Output directory (default $") + kOutDirEnv + " or .)");

  if (argc < 2) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: module=cli message=\"" << e.what() << "\"\n";
    return 2;
  }

  try {
    if (*transform) return run_transform(targs);
    if (*conv) return run_conv(cargs);
    if (*dse) return run_dse(dargs);
    if (*sim) return run_simulate(sargs);
    if (*report) return run_report(rargs);
  } catch (const wino::Error& e) {
    std::cerr << "error: module=" << e.module() << " message=\"" << e.what() << "\"\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: module=unknown message=\"" << e.what() << "\"\n";
    return 1;
  }
  return 2;
}
