#include "qtk/qfigure.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qtk/qroots.hpp"
#include "qtk/qverify.hpp"

namespace qtk {

FigureData figure_data(const FigureSpec& spec, const EvalConfig& cfg) {
  if (spec.id < 1 || spec.id > 4)
    throw error(errc::domain_violation, "figure id must be 1..4");
  if (spec.samples < 2)
    throw error(errc::domain_violation, "need at least 2 samples");
  FigureData data;
  const int n = spec.samples;

  auto linspace = [&](double lo, double hi, int i) {
    return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  auto logspace = [&](double lo, double hi, int i) {
    if (i == 0) return lo;
    if (i == n - 1) return hi;
    const double ll = std::log(lo), lh = std::log(hi);
    return std::exp(ll + (lh - ll) * static_cast<double>(i) / (n - 1));
  };

  switch (spec.id) {
    case 1: {
      data.header = "x,value";
      const QPoint qp = QPoint::make(1.6, cfg);
      const double xq = find_x_q(qp, cfg).root;
      for (int i = 0; i < n; ++i) {
        const double x = linspace(1.01, 8.0, i);
        if (std::fabs(x - xq) <= 1e-4) {
          ++data.excluded;
          continue;
        }
        try {
          const double v = eval_statistic(StatId::phi, x, qp, {}, cfg).value;
          data.points.emplace_back(x, v);
        } catch (const error& e) {
          if (e.code() != errc::pole_proximity) throw;
          ++data.excluded;
        }
      }
      break;
    }
    case 2:
    case 3: {
      data.header = "x,value";
      const QPoint qp = QPoint::make(spec.id == 2 ? 9.1 : 9.0, cfg);
      for (int i = 0; i < n; ++i) {
        const double x = logspace(0.05, 20.0, i);
        const double v = eval_statistic(StatId::f_q, x, qp, {}, cfg).value;
        data.points.emplace_back(x, v);
      }
      break;
    }
    case 4: {
      data.header = "q,value";
      for (int i = 0; i < n; ++i) {
        const double q = linspace(1.1, 10.0, i);
        const QPoint qp = QPoint::make(q, cfg);
        const double v = eval_statistic(StatId::u_of_q, 1.0, qp, {}, cfg).value;
        data.points.emplace_back(q, v);
      }
      break;
    }
  }
  return data;
}

void write_figure_csv(const FigureData& data, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "%s\n", data.header.c_str());
  for (const auto& [a, b] : data.points) std::fprintf(f, "%.17g,%.17g\n", a, b);
  std::fprintf(f, "# excluded=%lld\n", data.excluded);
  std::fclose(f);
}

}  // namespace qtk
