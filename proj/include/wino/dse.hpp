#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wino/cost_model.hpp"
#include "wino/workload.hpp"

namespace wino {

struct SweepSpec {
  std::vector<int> m_values;
  int r = 3;
  std::vector<int> budgets;
  Workload workload;
  HardwareConfig hw;  // template; m_total is replaced by each budget
};

struct SweepRow {
  std::string group;  // layer group, or "network" for whole-workload rows
  int budget = 0;
  DesignPoint point;
};

// Whole-network complexity for one m; independent of the budget.
struct ComplexityTotals {
  int m = 0;
  TransformOpCounts ops;
  double o_m = 0.0;
  double o_t = 0.0;
  std::vector<double> group_o_m;  // parallel to SweepResult::groups
};

// Relative change between consecutive m values:
//   pct_mult_decrease = 100 (O_m(from) - O_m(to)) / O_m(from)
//   pct_transform_increase = 100 (O_t(to) - O_t(from)) / O_t(from)
// The latter is undefined when O_t(from) = 0 (the spatial baseline).
struct Transition {
  int m_from = 0;
  int m_to = 0;
  double pct_mult_decrease = 0.0;
  std::optional<double> pct_transform_increase;

  bool favorable() const { return !pct_transform_increase || *pct_transform_increase <= pct_mult_decrease; }
};

struct SweepResult {
  std::vector<std::string> groups;
  std::vector<SweepRow> rows;     // sorted by (m, budget, group order)
  std::vector<SweepRow> network;  // sorted by (m, budget)
  std::vector<ComplexityTotals> totals;  // sorted by m
  std::vector<Transition> transitions;
  std::vector<std::pair<int, int>> infeasible;  // (m, budget) with budget < (m+r-1)^2
};

SweepResult run_sweep(const SweepSpec& spec);

// Largest m reached by stepping up while each transition is favorable.
int knee(const SweepResult& result);

// Highest-throughput network point with m <= knee; ties go to smaller m,
// then smaller budget.
DesignPoint recommend(const SweepResult& result);

struct Table2Design {
  std::string label;
  int m = 2;
  int r = 3;
  int multipliers = 0;
};

// The three shared-transform designs plus the per-PE reference design at its
// original and normalized budgets (latency does not depend on where the data
// transform sits).
std::vector<Table2Design> table2_designs();

struct Table2Row {
  std::string design;
  MinimalParams params{2, 3};
  int multipliers = 0;
  int pes = 0;
  std::vector<double> group_ms;
  double overall_ms = 0.0;
  double gops = 0.0;
  double gops_per_mult = 0.0;
};

struct Table2Report {
  std::vector<std::string> groups;
  std::vector<Table2Row> rows;
};

Table2Report table2_report(const Workload& workload, const std::vector<Table2Design>& designs,
                           const HardwareConfig& hw);

// Plot-ready CSV emitters.
void write_fig1_csv(std::ostream& out, const SweepResult& result);
void write_fig2_csv(std::ostream& out, const SweepResult& result);
void write_fig3_csv(std::ostream& out, const SweepResult& result);
void write_fig6_csv(std::ostream& out, const SweepResult& result);
void write_table2_csv(std::ostream& out, const Table2Report& report);
void write_reported_csv(std::ostream& out);
void write_resources_csv(std::ostream& out);

}  // namespace wino
