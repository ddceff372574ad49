#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace wino::reference {

// Reported figures for the VGG16-D comparison. These are echoed into reports
// as-is; power and frequency are synthesis results and are never modeled.
struct ReportedColumn {
  std::string_view label;
  std::string_view tile;  // "m,r" or "-"
  int multipliers;
  std::optional<int> pes;
  int precision_bits;
  double frequency_mhz;
  std::array<double, 5> group_ms;
  double overall_ms;
  double gops;
  double gops_per_mult;
  double power_w;
  double gops_per_w;
};

inline constexpr std::array<ReportedColumn, 6> kVgg16dComparison{{
    {"prior_fixed16_780", "-", 780, std::nullopt, 16, 150.0, {31.29, 23.58, 39.29, 36.30, 32.95}, 163.4, 187.8, 0.24, 9.63, 19.50},
    {"prior_f2x3_256", "2,3", 256, 16, 32, 200.0, {16.81, 24.08, 40.14, 40.14, 12.04}, 133.22, 230.4, 0.90, 8.04, 28.66},
    {"prior_f2x3_688_normalized", "2,3", 688, 43, 32, 200.0, {6.25, 8.96, 14.94, 14.94, 4.48}, 49.57, 619.2, 0.90, 21.61, 28.66},
    {"shared_f2x3_688", "2,3", 688, 43, 32, 200.0, {6.25, 8.96, 14.94, 14.94, 4.48}, 49.57, 619.2, 0.90, 13.03, 41.34},
    {"shared_f3x3_700", "3,3", 700, 28, 32, 200.0, {4.27, 6.12, 10.19, 10.19, 3.06}, 33.83, 907.2, 1.29, 23.96, 37.87},
    {"shared_f4x3_684", "4,3", 684, 19, 32, 200.0, {3.54, 5.07, 8.45, 8.45, 2.54}, 28.05, 1094.3, 1.60, 36.32, 30.13},
}};

// Resource utilization of the 19-PE F(4x4, 3x3) designs.
struct ReportedResources {
  std::string_view label;
  int registers;
  int luts;
  int dsps;
  int multipliers;
};

inline constexpr std::array<ReportedResources, 3> kF4x3Resources{{
    {"per_pe_data_transform", 97052, 232256, 2736, 684},
    {"shared_data_transform", 76500, 107839, 2736, 684},
    {"available", 607200, 303600, 2800, 700},
}};

}  // namespace wino::reference
