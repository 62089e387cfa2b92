#pragma once

#include <string>
#include <vector>

#include "qtk/types.hpp"

namespace qtk {

struct FigureSpec {
  int id = 1;          // 1..4
  int samples = 1000;
};

struct FigureData {
  std::string header;                          // column names: "x,value" or "q,value"
  std::vector<std::pair<double, double>> points;
  long long excluded = 0;                      // points dropped near poles
};

// fig 1: phi at q = 1.6, linear x in [1.01, 8] (shows the interior ascent)
// fig 2: f_q at q = 9.1, log x in [0.05, 20]  (dips below 1/2)
// fig 3: f_q at q = 9.0, log x in [0.05, 20]  (stays above 1/2)
// fig 4: u(q), linear q in [1.1, 10]          (single sign change at p0)
FigureData figure_data(const FigureSpec& spec, const EvalConfig& cfg = {});

// Two-column CSV, %.17g, LF line endings, trailing "# excluded=<k>" comment.
void write_figure_csv(const FigureData& data, const std::string& path);

}  // namespace qtk
