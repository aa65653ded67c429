// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal static SVG charts for report figures.

#include <string>
#include <utility>
#include <vector>

namespace corpuslens::svg {

struct Series {
  std::string name;
  std::vector<double> values;  // one per category; NaN draws nothing
};

/// Grouped vertical bars: one group per category, one bar per series.
std::string bar_chart(const std::string& title, const std::vector<std::string>& categories,
                      const std::vector<Series>& series, const std::string& comment = {});

struct PointGroup {
  std::string name;
  std::vector<std::pair<double, double>> points;
  std::vector<std::string> labels;  // optional, per point
};

std::string scatter(const std::string& title, const std::vector<PointGroup>& groups, const std::string& comment = {});

/// Square or rectangular heatmap with row/column labels; NaN cells are grey.
std::string heatmap(const std::string& title, const std::vector<std::string>& rows,
                    const std::vector<std::string>& cols, const std::vector<std::vector<double>>& values,
                    const std::string& comment = {});

std::string escape(const std::string& s);

}  // namespace corpuslens::svg
