#include "wino/dse.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "wino/error.hpp"
#include "wino/reference_data.hpp"

namespace wino {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("dse_explorer", message); }

std::string num(double value) { return fmt::format("{:.10g}", value); }

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.m_values.empty()) fail("sweep needs at least one m value");
  if (spec.budgets.empty()) fail("sweep needs at least one multiplier budget");
  spec.workload.validate();

  std::set<int> ms(spec.m_values.begin(), spec.m_values.end());
  std::set<int> budgets(spec.budgets.begin(), spec.budgets.end());
  for (int m : ms) {
    if (m < 1) fail("sweep m values must be >= 1, got " + std::to_string(m));
  }
  for (const auto& layer : spec.workload.layers) {
    if (layer.r != spec.r) fail("workload layer kernel size " + std::to_string(layer.r) + " != sweep r " + std::to_string(spec.r));
  }

  SweepResult result;
  result.groups = spec.workload.groups();
  const auto all_layers = spec.workload.shapes();

  for (int m : ms) {
    std::optional<TransformSet> ts;
    try {
      ts = generate_transforms(MinimalParams(m, spec.r));
    } catch (const Error& e) {
      fail("transform generation failed for m=" + std::to_string(m) + ": " + e.what());
    }
    const auto params = ts->params();
    const auto ops = count_transform_ops(*ts);

    ComplexityTotals totals{m, ops, 0.0, 0.0, {}};
    for (const auto& layer : all_layers) {
      totals.o_m += multiplication_complexity(layer, params);
      totals.o_t += transform_complexity(layer, params, ops).total;
    }
    for (const auto& group : result.groups) {
      double o_m = 0.0;
      for (const auto& layer : spec.workload.shapes(group)) o_m += multiplication_complexity(layer, params);
      totals.group_o_m.push_back(o_m);
    }
    result.totals.push_back(totals);

    for (int budget : budgets) {
      HardwareConfig hw = spec.hw;
      hw.m_total = budget;
      if (budget < params.alpha() * params.alpha()) {
        result.infeasible.emplace_back(m, budget);
        continue;
      }
      for (const auto& group : result.groups) {
        const auto layers = spec.workload.shapes(group);
        result.rows.push_back({group, budget, evaluate_design(layers, params, hw, ops)});
      }
      result.network.push_back({"network", budget, evaluate_design(all_layers, params, hw, ops)});
    }
  }

  for (std::size_t i = 0; i + 1 < result.totals.size(); ++i) {
    const auto& from = result.totals[i];
    const auto& to = result.totals[i + 1];
    Transition t;
    t.m_from = from.m;
    t.m_to = to.m;
    t.pct_mult_decrease = 100.0 * (from.o_m - to.o_m) / from.o_m;
    if (from.o_t > 0.0) t.pct_transform_increase = 100.0 * (to.o_t - from.o_t) / from.o_t;
    result.transitions.push_back(t);
  }
  return result;
}

int knee(const SweepResult& result) {
  if (result.totals.empty()) fail("cannot locate the knee of an empty sweep");
  int best = result.totals.front().m;
  for (const auto& t : result.transitions) {
    if (!t.favorable()) break;
    best = t.m_to;
  }
  return best;
}

DesignPoint recommend(const SweepResult& result) {
  if (result.network.empty()) fail("cannot recommend from an empty sweep");
  const int limit = knee(result);
  const SweepRow* best = nullptr;
  for (const auto& row : result.network) {
    if (row.point.params.m() > limit) continue;
    if (best == nullptr || row.point.throughput > best->point.throughput) best = &row;
  }
  if (best == nullptr) fail("no feasible design at or below the knee m=" + std::to_string(limit));
  return best->point;
}

std::vector<Table2Design> table2_designs() {
  return {
      {"shared_f2x3_688", 2, 3, 688},
      {"shared_f3x3_700", 3, 3, 700},
      {"shared_f4x3_684", 4, 3, 684},
      {"per_pe_f2x3_256", 2, 3, 256},
      {"per_pe_f2x3_688", 2, 3, 688},
  };
}

Table2Report table2_report(const Workload& workload, const std::vector<Table2Design>& designs,
                           const HardwareConfig& hw) {
  workload.validate();
  Table2Report report;
  report.groups = workload.groups();
  for (const auto& design : designs) {
    const MinimalParams params(design.m, design.r);
    HardwareConfig config = hw;
    config.m_total = design.multipliers;
    Table2Row row;
    row.design = design.label;
    row.params = params;
    row.multipliers = design.multipliers;
    row.pes = pe_count(config, params);
    double total_s = 0.0;
    double ops = 0.0;
    for (const auto& group : report.groups) {
      double group_s = 0.0;
      for (const auto& layer : workload.shapes(group)) {
        group_s += layer_latency(layer, params, row.pes, config);
        ops += spatial_ops(layer);
      }
      row.group_ms.push_back(group_s * 1e3);
      total_s += group_s;
    }
    row.overall_ms = total_s * 1e3;
    row.gops = throughput(ops, total_s) / 1e9;
    row.gops_per_mult = row.gops / design.multipliers;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_fig1_csv(std::ostream& out, const SweepResult& result) {
  out << "m,group,O_m\n";
  for (const auto& t : result.totals)
    for (std::size_t g = 0; g < result.groups.size(); ++g)
      out << t.m << ',' << result.groups[g] << ',' << num(t.group_o_m[g]) << '\n';
}

void write_fig2_csv(std::ostream& out, const SweepResult& result) {
  out << "m,O_t\n";
  for (const auto& t : result.totals) out << t.m << ',' << num(t.o_t) << '\n';
}

void write_fig3_csv(std::ostream& out, const SweepResult& result) {
  // Each row is the step into m from the previous swept value.
  out << "m,pct_mult_decrease,pct_transform_increase\n";
  for (const auto& t : result.transitions) {
    out << t.m_to << ',' << num(t.pct_mult_decrease) << ','
        << (t.pct_transform_increase ? num(*t.pct_transform_increase) : std::string("nan")) << '\n';
  }
}

void write_fig6_csv(std::ostream& out, const SweepResult& result) {
  out << "m,multipliers,gops\n";
  for (const auto& row : result.network) {
    out << row.point.params.m() << ',' << row.budget << ',' << num(row.point.throughput / 1e9) << '\n';
  }
}

void write_table2_csv(std::ostream& out, const Table2Report& report) {
  out << "design";
  for (const auto& g : report.groups) out << ',' << g << "_ms";
  out << ",overall_ms,gops,gops_per_mult\n";
  for (const auto& row : report.rows) {
    out << row.design;
    for (double ms : row.group_ms) out << ',' << fmt::format("{:.4f}", ms);
    out << ',' << fmt::format("{:.4f}", row.overall_ms) << ',' << fmt::format("{:.4f}", row.gops) << ','
        << fmt::format("{:.4f}", row.gops_per_mult) << '\n';
  }
}

void write_reported_csv(std::ostream& out) {
  out << "design,m_r,multipliers,pes,precision_bits,frequency_mhz,conv1_ms,conv2_ms,conv3_ms,conv4_ms,conv5_ms,"
         "overall_ms,gops,gops_per_mult,power_w,gops_per_w\n";
  for (const auto& col : reference::kVgg16dComparison) {
    out << col.label << ",\"" << col.tile << "\"," << col.multipliers << ','
        << (col.pes ? std::to_string(*col.pes) : std::string("-")) << ',' << col.precision_bits << ','
        << num(col.frequency_mhz);
    for (double ms : col.group_ms) out << ',' << num(ms);
    out << ',' << num(col.overall_ms) << ',' << num(col.gops) << ',' << num(col.gops_per_mult) << ','
        << num(col.power_w) << ',' << num(col.gops_per_w) << '\n';
  }
}

void write_resources_csv(std::ostream& out) {
  out << "design,pes,model_luts,reported_luts,reported_registers,reported_dsps,multipliers\n";
  const int pes = 19;
  const auto row = [&](const reference::ReportedResources& rep, const LutModel& model) {
    out << rep.label << ',' << pes << ',' << num(lut_total(model, pes)) << ',' << rep.luts << ',' << rep.registers
        << ',' << rep.dsps << ',' << rep.multipliers << '\n';
  };
  row(reference::kF4x3Resources[0], kReferenceDesignLuts);
  row(reference::kF4x3Resources[1], kSharedTransformLuts);
}

}  // namespace wino
