// Property catalog and negative controls: the grid sweep behind `verify`.
// Margins are signed slack, negative = violated; claims with equality
// somewhere sit inside the -margin_tolerance band.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <iterator>
#include <limits>
#include <semaphore>
#include <string>
#include <utility>
#include <vector>

#include "qtk/qcore.hpp"
#include "qtk/qroots.hpp"
#include "qtk/qverify.hpp"

namespace qtk {

namespace {

double logaddexp(double a, double b) {
  const double hi = a >= b ? a : b;
  const double lo = a >= b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

double scale(double a) { return std::max(1.0, std::fabs(a)); }
double scale(double a, double b) {
  return std::max(scale(a), std::fabs(b));
}
double scale(double a, double b, double c) {
  return std::max(scale(a, b), std::fabs(c));
}

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

// worst-margin accumulator; first strict improvement wins, so with the fixed
// q-ascending / x-ascending scan order ties resolve to the smallest q then x
struct Sweep {
  double worst = std::numeric_limits<double>::infinity();
  double q = 0.0, x = 0.0;
  std::string what;
  long long evals = 0;
  long long excluded = 0;
  std::vector<std::string> notes;

  void add(double m, double qv, double xv, const std::string& w) {
    ++evals;
    if (m < worst) {
      worst = m;
      q = qv;
      x = xv;
      what = w;
    }
  }
};

PropertyReport finish(const char* id, const char* title, Sweep&& s) {
  PropertyReport r;
  r.id = id;
  r.title = title;
  r.evaluations = s.evals;
  r.excluded = s.excluded;
  r.notes = std::move(s.notes);
  if (s.evals == 0) {
    r.verdict = Verdict::Vacuous;
    return r;
  }
  r.verdict = s.worst < -margin_tolerance ? Verdict::Fail : Verdict::Pass;
  r.worst_margin = s.worst;
  r.witness_q = s.q;
  r.witness_x = s.x;
  r.detail = s.what;
  return r;
}

struct QData {
  double q = 0.0;
  QPoint qp;
  bool near1 = false;
  double xq = 0.0;     // root of psi_q in (1, 3/2)
  double p1[4] = {};   // psi_q^{(m)}(1)
  double psi15 = 0.0;  // psi_q(3/2)
  double lg1 = 0.0;    // log Gamma_q(1)
  std::array<std::vector<double>, 4> at;    // psi^{(m)}(x_i)
  std::array<std::vector<double>, 4> inv;   // psi^{(m)}(1/x_i)
  std::array<std::vector<double>, 4> plus;  // psi^{(m)}(x_i + 1)
  std::vector<double> lg, lginv;            // log Gamma at x_i, 1/x_i
};

// All evaluations a sweep needs, precomputed once; strictly read-only while
// runners execute (verify_all may run them on several threads).
struct Ctx {
  EvalConfig cfg;
  GridSpec grid;
  std::vector<double> xs;
  std::vector<QData> qd;  // ascending q, duplicates dropped
  double p0 = 0.0;        // sign-change point of u(q)
  double q0 = 0.0;

  Ctx(const GridSpec& g, const EvalConfig& c) : cfg(c), grid(g) {
    xs = grid.x_points();
    std::vector<double> qs = grid.q_set;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    p0 = find_p0(cfg).root;
    q0 = q0_closed_form();
    qd.reserve(qs.size());
    for (double q : qs) qd.push_back(build(q));
  }

  double psi(const QPoint& qp, double t, int m) const {
    return m == 0 ? psi_q(t, qp, cfg).value : psi_q_deriv(t, qp, m, cfg).value;
  }

  double fval(const QPoint& qp, double t) const {
    const double la = log_gamma_q(t, qp, cfg).value;
    const double lb = log_gamma_q(1.0 / t, qp, cfg).value;
    return std::exp(la + lb - logaddexp(la, lb));
  }

  double fval_i(const QData& d, size_t i) const {
    return std::exp(d.lg[i] + d.lginv[i] - logaddexp(d.lg[i], d.lginv[i]));
  }

 private:
  QData build(double q) const {
    QData d;
    d.q = q;
    d.qp = QPoint::make(q, cfg);
    d.near1 = d.qp.branch == Branch::NearOne;
    for (int m = 0; m < 4; ++m) d.p1[m] = psi(d.qp, 1.0, m);
    d.psi15 = psi(d.qp, 1.5, 0);
    d.lg1 = log_gamma_q(1.0, d.qp, cfg).value;
    // bisect psi_q over (1, 3/2); psi_q(1) < 0 < psi_q(3/2)
    double lo = 1.0, hi = 1.5;
    const double flo = psi(d.qp, lo, 0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = psi(d.qp, mid, 0);
      if ((fm > 0.0) == (flo > 0.0))
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-13) break;
    }
    d.xq = 0.5 * (lo + hi);
    for (int m = 0; m < 4; ++m) {
      d.at[m].resize(xs.size());
      d.inv[m].resize(xs.size());
      d.plus[m].resize(xs.size());
      for (size_t i = 0; i < xs.size(); ++i) {
        d.at[m][i] = psi(d.qp, xs[i], m);
        d.inv[m][i] = psi(d.qp, 1.0 / xs[i], m);
        d.plus[m][i] = psi(d.qp, xs[i] + 1.0, m);
      }
    }
    d.lg.resize(xs.size());
    d.lginv.resize(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      d.lg[i] = log_gamma_q(xs[i], d.qp, cfg).value;
      d.lginv[i] = log_gamma_q(1.0 / xs[i], d.qp, cfg).value;
    }
    return d;
  }
};

// indices of the two monotonicity segments flanking x_q
std::pair<std::vector<size_t>, std::vector<size_t>> sides(const Ctx& ctx,
                                                          const QData& d) {
  std::vector<size_t> left, right;
  const double r = ctx.grid.exclusion_radius;
  for (size_t i = 0; i < ctx.xs.size(); ++i) {
    if (ctx.xs[i] > 1.0 && ctx.xs[i] < d.xq - r) left.push_back(i);
    if (ctx.xs[i] > d.xq + r) right.push_back(i);
  }
  return {std::move(left), std::move(right)};
}

PropertyReport run_P1(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    s.add(-d.p1[0] / scale(d.p1[0]), d.q, 1.0, "psi(1)<=0");
    s.add(d.psi15 / scale(d.psi15), d.q, 1.5, "psi(3/2)>0");
    s.add(std::min(d.xq - 1.0, 1.5 - d.xq), d.q, d.xq, "x_q in (1,1.5)");
  }
  return finish("P1", "psi_q has its sign change inside (1, 3/2)", std::move(s));
}

PropertyReport run_P2(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    auto at = [&](double x, double d1, double d0) {
      const double v = x * d1 + 2.0 * d0;
      s.add(v / scale(v), d.q, x, "h");
    };
    at(1.0, d.p1[1], d.p1[0]);
    for (size_t i = 0; i < ctx.xs.size(); ++i)
      if (ctx.xs[i] > 1.0) at(ctx.xs[i], d.at[1][i], d.at[0][i]);
  }
  return finish("P2", "x psi'_q(x) + 2 psi_q(x) >= 0 on [1, inf)", std::move(s));
}

PropertyReport run_P3(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    std::vector<double> px{1.0}, s1, s2;
    for (size_t i = 0; i < ctx.xs.size(); ++i)
      if (ctx.xs[i] > 1.0) px.push_back(ctx.xs[i]);
    auto push = [&](double x, double p0v, double lg) {
      s1.push_back(x * p0v);
      if (p0v == 0.0) {
        s2.push_back(0.0);
        return;
      }
      const double L = std::log(x) + std::log(std::fabs(p0v)) + lg;
      const double mag = L > 30.0 ? L : std::log1p(std::exp(L));
      s2.push_back(std::copysign(mag, p0v));
    };
    push(1.0, d.p1[0], d.lg1);
    for (size_t i = 0; i < ctx.xs.size(); ++i)
      if (ctx.xs[i] > 1.0) push(ctx.xs[i], d.at[0][i], d.lg[i]);
    for (size_t i = 0; i + 1 < px.size(); ++i) {
      s.add((s1[i + 1] - s1[i]) / scale(s1[i], s1[i + 1]), d.q, px[i + 1], "xpsi");
      s.add((s2[i + 1] - s2[i]) / scale(s2[i], s2[i + 1]), d.q, px[i + 1], "xGam'");
    }
  }
  return finish("P3", "x psi_q and x Gamma_q' nondecreasing on [1, inf)", std::move(s));
}

PropertyReport run_P4(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    if (d.q < 1.0) {
      for (size_t i = 0; i + 1 < ctx.xs.size(); ++i) {
        const double va = ctx.xs[i] * d.at[1][i];
        const double vb = ctx.xs[i + 1] * d.at[1][i + 1];
        s.add((va - vb) / scale(va, vb), d.q, ctx.xs[i + 1], "x psi' dec (q<1)");
      }
    } else if (d.q > 1.0) {
      for (size_t i = 0; i + 1 < ctx.xs.size(); ++i) {
        const double va = ctx.xs[i] * ctx.xs[i] * d.at[1][i];
        const double vb = ctx.xs[i + 1] * ctx.xs[i + 1] * d.at[1][i + 1];
        s.add((vb - va) / scale(va, vb), d.q, ctx.xs[i + 1], "x^2 psi' nondec (q>1)");
      }
    }
  }
  return finish("P4", "x psi'_q falls for q < 1; x^2 psi'_q grows for q > 1",
                std::move(s));
}

// shared body of P5 (q <= 1) and P10 (q >= 1): G = psi'/psi nonincreasing on
// each side of x_q; phi = x G likewise, except in the strip 1 < q < q0 where
// phi is expected to turn around (P10 verifies the turnaround is there).
void g_phi_sweep(const Ctx& ctx, const QData& d, bool do_phi, Sweep& s) {
  auto [left, right] = sides(ctx, d);
  for (const auto* seg : {&left, &right}) {
    for (size_t j = 0; j + 1 < seg->size(); ++j) {
      const size_t ia = (*seg)[j], ib = (*seg)[j + 1];
      const double va = d.at[1][ia] / d.at[0][ia];
      const double vb = d.at[1][ib] / d.at[0][ib];
      s.add((va - vb) / scale(va, vb), d.q, ctx.xs[ib], "G");
    }
    if (do_phi) {
      for (size_t j = 0; j + 1 < seg->size(); ++j) {
        const size_t ia = (*seg)[j], ib = (*seg)[j + 1];
        const double va = ctx.xs[ia] * d.at[1][ia] / d.at[0][ia];
        const double vb = ctx.xs[ib] * d.at[1][ib] / d.at[0][ib];
        s.add((va - vb) / scale(va, vb), d.q, ctx.xs[ib], "phi");
      }
    }
  }
}

PropertyReport run_P5(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd)
    if (d.q <= 1.0) g_phi_sweep(ctx, d, true, s);
  return finish("P5", "psi'/psi and x psi'/psi nonincreasing off x_q (q <= 1)",
                std::move(s));
}

PropertyReport run_P10(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    if (d.q < 1.0) continue;
    g_phi_sweep(ctx, d, d.q <= 1.0 || d.q >= ctx.q0, s);
    if (d.q > 1.0 + 1e-6 && d.q < ctx.q0) {
      // strictly between 1 and q0 the phi-monotonicity must break somewhere
      auto [left, right] = sides(ctx, d);
      double best = -std::numeric_limits<double>::infinity();
      double bx = 0.0;
      for (const auto* seg : {&left, &right}) {
        for (size_t j = 0; j + 1 < seg->size(); ++j) {
          const size_t ia = (*seg)[j], ib = (*seg)[j + 1];
          const double va = ctx.xs[ia] * d.at[1][ia] / d.at[0][ia];
          const double vb = ctx.xs[ib] * d.at[1][ib] / d.at[0][ib];
          const double m = (vb - va) / scale(va, vb);
          ++s.evals;
          if (m > best) {
            best = m;
            bx = ctx.xs[ib];
          }
        }
      }
      if (best > 1e-9)
        s.notes.push_back("interior phi ascent at q=" + fmt("%g", d.q) + ": +" +
                          fmt("%.6e", best) + " at x=" + fmt("%g", bx) +
                          " (expected for 1 < q < q0)");
      else
        s.add(-1.0, d.q, bx, "expected interior phi ascent missing");
    }
  }
  return finish("P10",
                "psi'/psi nonincreasing off x_q (q >= 1); x psi'/psi from q0 on",
                std::move(s));
}

PropertyReport run_P6(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double a = d.at[3][i] * d.at[1][i];
      const double b = d.at[2][i] * d.at[2][i];
      s.add((a - b) / scale(a, b), d.q, ctx.xs[i], "S");
    }
  }
  return finish("P6", "psi'''_q psi'_q >= (psi''_q)^2", std::move(s));
}

PropertyReport run_P7(const Ctx& ctx) {
  Sweep s;
  std::vector<size_t> sub;
  for (size_t j = 0; j < ctx.qd.size(); ++j)
    if (ctx.qd[j].q < 1.0) sub.push_back(j);
  for (size_t i = 0; i < ctx.xs.size(); ++i) {
    for (size_t j = 0; j + 1 < sub.size(); ++j) {
      const double va = ctx.qd[sub[j]].at[1][i];
      const double vb = ctx.qd[sub[j + 1]].at[1][i];
      s.add((vb - va) / scale(va, vb), ctx.qd[sub[j + 1]].q, ctx.xs[i],
            "psi1 in q");
    }
    for (size_t j = 0; j + 1 < ctx.qd.size(); ++j) {
      const double da = ctx.qd[j].at[0][i] - ctx.qd[j].p1[0];
      const double db = ctx.qd[j + 1].at[0][i] - ctx.qd[j + 1].p1[0];
      const double m = ctx.xs[i] <= 1.0 ? (da - db) / scale(da, db)
                                        : (db - da) / scale(da, db);
      s.add(m, ctx.qd[j + 1].q, ctx.xs[i], "centered");
    }
  }
  return finish("P7", "psi'_q grows in q on (0,1); centered psi_q ordered in q",
                std::move(s));
}

PropertyReport run_P8(const Ctx& ctx) {
  Sweep s;
  std::vector<size_t> sub, sup;
  for (size_t j = 0; j < ctx.qd.size(); ++j) {
    if (ctx.qd[j].q < 1.0) sub.push_back(j);
    if (ctx.qd[j].q > 1.0) sup.push_back(j);
  }
  for (size_t i = 0; i < ctx.xs.size(); ++i) {
    for (size_t j = 0; j + 1 < sub.size(); ++j) {
      const double va = ctx.qd[sub[j]].at[2][i];
      const double vb = ctx.qd[sub[j + 1]].at[2][i];
      s.add((va - vb) / scale(va, vb), ctx.qd[sub[j + 1]].q, ctx.xs[i],
            "psi2 dec on (0,1)");
    }
    for (size_t j = 0; j + 1 < sup.size(); ++j) {
      const double va = ctx.qd[sup[j]].at[2][i];
      const double vb = ctx.qd[sup[j + 1]].at[2][i];
      s.add((vb - va) / scale(va, vb), ctx.qd[sup[j + 1]].q, ctx.xs[i],
            "psi2 inc on (1,inf)");
    }
    for (size_t j = 0; j + 1 < ctx.qd.size(); ++j) {
      const double va = ctx.qd[j].at[1][i];
      const double vb = ctx.qd[j + 1].at[1][i];
      s.add((vb - va) / scale(va, vb), ctx.qd[j + 1].q, ctx.xs[i],
            "psi1 inc all q");
    }
    if (ctx.xs[i] <= 1.0 || ctx.xs[i] >= 2.0) {
      for (size_t j = 0; j + 1 < ctx.qd.size(); ++j) {
        const double va = ctx.qd[j].at[0][i];
        const double vb = ctx.qd[j + 1].at[0][i];
        const double m = ctx.xs[i] <= 1.0 ? (va - vb) / scale(va, vb)
                                          : (vb - va) / scale(va, vb);
        s.add(m, ctx.qd[j + 1].q, ctx.xs[i], "psi0 per range");
      }
    }
  }
  return finish("P8", "psi''_q monotone per q-regime; psi'_q grows in q",
                std::move(s));
}

PropertyReport run_P9(const Ctx& ctx) {
  Sweep s;
  for (size_t i = 0; i < ctx.xs.size(); ++i) {
    const double x = ctx.xs[i];
    if (x < 2.0) continue;
    std::vector<double> ts(ctx.qd.size());
    for (size_t j = 0; j < ctx.qd.size(); ++j)
      ts[j] = x * ctx.qd[j].at[1][i] + 2.0 * ctx.qd[j].at[0][i];
    for (size_t j = 0; j + 1 < ctx.qd.size(); ++j)
      s.add((ts[j + 1] - ts[j]) / scale(ts[j], ts[j + 1]), ctx.qd[j + 1].q, x,
            "q-monotone");
    const double tc = x * classical_psi(x, 1) + 2.0 * classical_psi(x, 0);
    for (size_t j = 0; j < ctx.qd.size(); ++j)
      if (ctx.qd[j].q >= 1.0)
        s.add((ts[j] - tc) / scale(ts[j], tc), ctx.qd[j].q, x, "vs classical");
  }
  return finish("P9", "q -> x psi'_q + 2 psi_q nondecreasing for x >= 2",
                std::move(s));
}

PropertyReport run_P11(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    auto [left, right] = sides(ctx, d);
    for (const auto* seg : {&left, &right}) {
      for (size_t j = 0; j + 2 < seg->size(); ++j) {
        const size_t ia = (*seg)[j], ib = (*seg)[j + 1], ic = (*seg)[j + 2];
        const double ha = std::log(std::fabs(d.at[0][ia]));
        const double hb = std::log(std::fabs(d.at[0][ib]));
        const double hc = std::log(std::fabs(d.at[0][ic]));
        const double lam = (ctx.xs[ib] - ctx.xs[ia]) / (ctx.xs[ic] - ctx.xs[ia]);
        const double chord = ha + lam * (hc - ha);
        s.add((hb - chord) / scale(ha, hb, hc), d.q, ctx.xs[ib], "chord");
      }
    }
  }
  return finish("P11", "log |psi_q| concave on each side of x_q", std::move(s));
}

PropertyReport run_P12(const Ctx& ctx) {
  Sweep s;
  bool all_reversals_fired = !ctx.qd.empty();
  for (const QData& d : ctx.qd) {
    const double amax = -d.p1[1] / d.p1[0];
    s.add((amax - 2.0) / scale(amax), d.q, 1.0, "amax>=2");
    for (double a : {0.0, 1.0, 2.0, amax}) {
      const std::string tag = "a=" + fmt("%.3f", a);
      auto at = [&](double x, double d1, double d0) {
        const double v = x * d1 + a * d0;
        s.add(v / scale(v), d.q, x, tag);
      };
      at(1.0, d.p1[1], d.p1[0]);
      for (size_t i = 0; i < ctx.xs.size(); ++i)
        if (ctx.xs[i] > 1.0) at(ctx.xs[i], d.at[1][i], d.at[0][i]);
    }
    // the cutoff is sharp: just past amax (and below 0 when q < 1) the same
    // expression must go negative somewhere
    auto reversal_min = [&](double a) {
      double worst = std::numeric_limits<double>::infinity();
      auto probe = [&](double x, double d1, double d0) {
        const double v = x * d1 + a * d0;
        ++s.evals;
        worst = std::min(worst, v / scale(v));
      };
      probe(1.0, d.p1[1], d.p1[0]);
      for (size_t i = 0; i < ctx.xs.size(); ++i)
        if (ctx.xs[i] > 1.0) probe(ctx.xs[i], d.at[1][i], d.at[0][i]);
      return worst;
    };
    if (reversal_min(amax + 0.1) >= -1e-9) {
      s.add(-1.0, d.q, 1.0, "expected violation at a=amax+0.1 missing");
      all_reversals_fired = false;
    }
    if (d.q < 1.0) {
      const double vm = [&] {
        double worst = std::numeric_limits<double>::infinity();
        auto probe = [&](double x, double d1, double d0) {
          const double v = x * d1 - 0.1 * d0;
          ++s.evals;
          worst = std::min(worst, v / scale(v));
        };
        probe(1.0, d.p1[1], d.p1[0]);
        for (size_t i = 0; i < ctx.xs.size(); ++i)
          if (ctx.xs[i] > 1.0) probe(ctx.xs[i], d.at[1][i], d.at[0][i]);
        return worst;
      }();
      if (vm >= -1e-9) {
        s.add(-1.0, d.q, 1.0, "expected violation at a=-0.1 missing");
        all_reversals_fired = false;
      }
    }
  }
  if (all_reversals_fired)
    s.notes.push_back(
        "every q shows a violation just past amax (and at a=-0.1 for q<1)");
  return finish("P12", "x psi'_q + a psi_q >= 0 on [1,inf) exactly up to amax",
                std::move(s));
}

PropertyReport run_P13(const Ctx& ctx) {
  Sweep s;
  std::array<double, 12> alpha_base;
  for (int i = 0; i < 12; ++i)
    alpha_base[i] = 0.02 * std::pow(3.0 / 0.02, i / 11.0);
  for (const QData& d : ctx.qd) {
    const double w = d.p1[0] - d.p1[0] * d.p1[0] + d.p1[1];
    std::vector<double> fv(ctx.xs.size());
    for (size_t i = 0; i < ctx.xs.size(); ++i) fv[i] = ctx.fval_i(d, i);
    if (w >= 0.0) {
      for (size_t i = 0; i + 1 < ctx.xs.size(); ++i) {
        const double va = fv[i], vb = fv[i + 1];
        if (ctx.xs[i + 1] <= 1.0)
          s.add((va - vb) / scale(va, vb), d.q, ctx.xs[i + 1], "J pieces");
        else if (ctx.xs[i] >= 1.0)
          s.add((vb - va) / scale(va, vb), d.q, ctx.xs[i + 1], "J pieces");
      }
      for (size_t i = 0; i < ctx.xs.size(); ++i)
        if (std::fabs(ctx.xs[i] - 1.0) > 1e-6)
          s.add((2.0 * fv[i] - 1.0) / scale(2.0 * fv[i]), d.q, ctx.xs[i], "2f>1");
      for (double xp : {0.3, 3.0}) {
        const std::string tag = "g inc x=" + fmt("%g", xp);
        double prev = 0.0;
        for (int i = 0; i < 12; ++i) {
          const double v = ctx.fval(d.qp, std::pow(xp, alpha_base[i]));
          if (i > 0)
            s.add((v - prev) / scale(prev, v), d.q, alpha_base[i], tag);
          prev = v;
        }
      }
    } else {
      // y = the stationary point of f on (1, x_q), root of
      // N(t) = t psi + t^2 psi' - (t psi)^2
      auto N = [&](double t) {
        const double p = ctx.psi(d.qp, t, 0);
        return t * p + t * t * ctx.psi(d.qp, t, 1) - (t * p) * (t * p);
      };
      double lo = 1.0 + 1e-12, hi = d.xq;
      const double flo = N(lo);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((N(mid) > 0.0) == (flo > 0.0))
          lo = mid;
        else
          hi = mid;
        if (hi - lo < 1e-13) break;
      }
      const double y = 0.5 * (lo + hi);
      const double fy = ctx.fval(d.qp, y);
      const std::string ytag = "f>=f(y), y=" + fmt("%.9f", y);
      for (size_t i = 0; i < ctx.xs.size(); ++i)
        s.add((fv[i] - fy) / scale(fv[i], fy), d.q, ctx.xs[i], ytag);
      // monotone pieces around the pair (1/y, 1) and (1, y)
      struct Seg {
        bool (*sel)(double, double);
        int dir;
      };
      const Seg segs[4] = {
          {[](double x, double y_) { return x <= 1.0 / y_; }, -1},
          {[](double x, double y_) { return 1.0 / y_ <= x && x <= 1.0; }, +1},
          {[](double x, double y_) { return 1.0 <= x && x <= y_; }, -1},
          {[](double x, double y_) { return x >= y_; }, +1},
      };
      for (const Seg& sg : segs) {
        double va = 0.0;
        bool have = false;
        for (size_t i = 0; i < ctx.xs.size(); ++i) {
          if (!sg.sel(ctx.xs[i], y)) continue;
          if (have)
            s.add(sg.dir * (fv[i] - va) / scale(va, fv[i]), d.q, ctx.xs[i],
                  "notJ pieces");
          va = fv[i];
          have = true;
        }
      }
      for (double xp : {0.3, 3.0}) {
        const double ac = std::fabs(std::log(y) / std::log(xp));
        std::vector<double> agrid{0.3 * ac, 0.7 * ac};
        agrid.insert(agrid.end(), alpha_base.begin(), alpha_base.end());
        std::sort(agrid.begin(), agrid.end());
        agrid.erase(std::unique(agrid.begin(), agrid.end()), agrid.end());
        const std::string tag = "g pattern x=" + fmt("%g", xp);
        std::vector<double> gv(agrid.size());
        for (size_t i = 0; i < agrid.size(); ++i)
          gv[i] = ctx.fval(d.qp, std::pow(xp, agrid[i]));
        for (size_t i = 0; i + 1 < agrid.size(); ++i) {
          double m;
          if (agrid[i + 1] <= ac)
            m = (gv[i] - gv[i + 1]) / scale(gv[i], gv[i + 1]);
          else if (agrid[i] >= ac)
            m = (gv[i + 1] - gv[i]) / scale(gv[i], gv[i + 1]);
          else
            continue;
          s.add(m, d.q, agrid[i + 1], tag);
        }
      }
    }
  }
  return finish("P13", "f_q piecewise monotone; the dip sits at y_q outside J",
                std::move(s));
}

PropertyReport run_P14(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double p1 = d.p1[0], d1 = d.p1[1];
    const double mstar = -(p1 + d1) / (p1 * p1);
    const double minv = 1.0 / p1;
    std::vector<double> ms = d.q < 1.0 ? std::vector<double>{minv, 1.0}
                                       : std::vector<double>{mstar, mstar + 0.7,
                                                             minv, 1.0};
    for (double mp : ms) {
      const std::string tag = "m=" + fmt("%.3f", mp);
      std::vector<double> us(ctx.xs.size());
      for (size_t i = 0; i < ctx.xs.size(); ++i) {
        const double la = d.lg[i], lb = d.lginv[i];
        const double u = std::fabs(mp) < 1e-8
                             ? 0.5 * (la + lb)
                             : (logaddexp(mp * la, mp * lb) - std::log(2.0)) / mp;
        us[i] = u;
        s.add(u / scale(u), d.q, ctx.xs[i], tag);
      }
      if (mp >= minv - 1e-12) {
        const std::string mtag = "monotone " + tag;
        for (size_t i = 0; i + 1 < ctx.xs.size(); ++i) {
          double m;
          if (ctx.xs[i + 1] <= 1.0)
            m = (us[i] - us[i + 1]) / scale(us[i], us[i + 1]);
          else if (ctx.xs[i] >= 1.0)
            m = (us[i + 1] - us[i]) / scale(us[i], us[i + 1]);
          else
            continue;
          s.add(m, d.q, ctx.xs[i + 1], mtag);
        }
      }
    }
  }
  return finish("P14", "log-power means of the Gamma_q pair stay >= 0, V-shaped",
                std::move(s));
}

PropertyReport run_P15(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    if (d.near1) continue;
    const double p1 = d.p1[0];
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double x = ctx.xs[i];
      if (std::fabs(x - 1.0) <= 1e-6) {
        ++s.excluded;
        continue;
      }
      const double U = d.at[0][i] + d.inv[0][i];
      double m;
      if (d.q < 1.0) {
        m = (2.0 * p1 - U) / scale(U, 2.0 * p1);
      } else {
        const double rhs =
            (x - 1.0) * (x - 1.0) / x * std::log(d.q) + 2.0 * p1;
        m = (rhs - U) / scale(U, rhs);
      }
      s.add(m, d.q, x, "U bound");
    }
  }
  return finish("P15", "psi_q(x) + psi_q(1/x) capped by 2 psi_q(1) (+ slack, q>1)",
                std::move(s));
}

PropertyReport run_P16(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    if (d.near1) continue;
    const double L = std::log(d.q);
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double x = ctx.xs[i];
      double M2, M3;
      if (d.q < 1.0) {
        const double u = std::exp(x * L);
        const double omu = -std::expm1(x * L);
        M2 = -u * L * L / (omu * omu);
        M3 = -u * (1.0 + u) * std::pow(L, 3.0) / std::pow(omu, 3.0);
      } else {
        const double r = std::exp(-x * L);
        const double omr = -std::expm1(-x * L);
        M2 = -r * L * L / (omr * omr);
        M3 = r * (1.0 + r) * std::pow(L, 3.0) / std::pow(omr, 3.0);
      }
      s.add((M3 - d.plus[3][i]) / scale(M3, d.plus[3][i]), d.q, x, "M3>psi3(x+1)");
      s.add((d.at[3][i] - M3) / scale(M3, d.at[3][i]), d.q, x, "psi3(x)>M3");
      s.add((M2 - d.at[2][i]) / scale(M2, d.at[2][i]), d.q, x, "M2>psi2(x)");
      s.add((d.plus[2][i] - M2) / scale(M2, d.plus[2][i]), d.q, x, "psi2(x+1)>M2");
    }
  }
  return finish("P16", "first series block sandwiches psi''_q and psi'''_q",
                std::move(s));
}

PropertyReport run_P17(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double u = d.p1[1] + d.p1[2];
    s.add((d.q < ctx.p0 ? -u : u) / scale(u), d.q, 1.0, "sign u");
  }
  return finish("P17", "u(q) = psi'_q(1) + psi''_q(1) flips sign at p0",
                std::move(s));
}

PropertyReport run_P18(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double L = std::log(d.q);
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double x = ctx.xs[i];
      const double v = 2.0 * d.at[2][i] + x * d.at[3][i];
      s.add(v / scale(v), d.q, x, "2psi2+xpsi3");
      const double sp = d.at[1][i] + x * d.at[2][i];
      const double bound = d.q >= 1.0 ? L : 0.0;
      s.add((bound - sp) / scale(bound, sp), d.q, x, "s'<=bound");
    }
    if (d.q >= ctx.p0) {
      double va = 1.0 * d.p1[1];
      for (size_t i = 0; i < ctx.xs.size(); ++i) {
        if (ctx.xs[i] <= 1.0) continue;
        const double vb = ctx.xs[i] * d.at[1][i];
        s.add((vb - va) / scale(va, vb), d.q, ctx.xs[i], "xpsi' nondec");
        va = vb;
      }
    }
  }
  return finish("P18", "2 psi''_q + x psi'''_q >= 0; (x psi'_q)' capped by log q",
                std::move(s));
}

PropertyReport run_P19(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double p1 = d.p1[0];
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double U = d.at[0][i] + d.inv[0][i];
      const double m = d.q >= ctx.p0 ? (U - 2.0 * p1) / scale(U, 2.0 * p1)
                                     : (2.0 * p1 - U) / scale(U, 2.0 * p1);
      s.add(m, d.q, ctx.xs[i], "U vs 2psi1");
    }
  }
  return finish("P19", "U = psi_q(x) + psi_q(1/x) sits on one side of 2 psi_q(1)",
                std::move(s));
}

PropertyReport run_P20(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double p1sq = d.p1[0] * d.p1[0];
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double V = d.at[0][i] * d.inv[0][i];
      s.add((p1sq - V) / scale(V, p1sq), d.q, ctx.xs[i], "V<=psi1^2");
    }
  }
  return finish("P20", "psi_q(x) psi_q(1/x) <= psi_q(1)^2", std::move(s));
}

PropertyReport run_P21(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double p1 = d.p1[0];
    bool has_z = d.q >= ctx.p0;
    double z = 0.0;
    if (has_z) {
      auto U = [&](double t) {
        return ctx.psi(d.qp, t, 0) + ctx.psi(d.qp, 1.0 / t, 0);
      };
      double hi = std::max(2.0, d.xq + 1.0);
      while (U(hi) <= 0.0) hi *= 2.0;
      double lo = d.xq;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (U(mid) <= 0.0)
          lo = mid;
        else
          hi = mid;
        if (hi - lo < 1e-12) break;
      }
      z = 0.5 * (lo + hi);
    }
    const std::string in_tag =
        has_z ? "H in z=" + fmt("%.9f", z) : std::string("H in (no z)");
    const std::string out_tag = "H out z=" + fmt("%.9f", z);
    const double r = ctx.grid.exclusion_radius;
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double x = ctx.xs[i];
      if (std::fabs(x - 1.0) <= 1e-6) {
        ++s.excluded;
        continue;
      }
      if (has_z && (std::fabs(x - z) <= r || std::fabs(x - 1.0 / z) <= r)) {
        ++s.excluded;
        continue;
      }
      const double U = d.at[0][i] + d.inv[0][i];
      if (std::fabs(U) < 1e-10) {
        ++s.excluded;
        continue;
      }
      const double V = d.at[0][i] * d.inv[0][i];
      const double H2 = 2.0 * V / U;
      const bool inside = !has_z || (1.0 / z < x && x < z);
      const double m = inside ? (H2 - p1) / scale(H2, p1)
                              : (p1 - H2) / scale(H2, p1);
      s.add(m, d.q, x, inside ? in_tag : out_tag);
    }
  }
  return finish("P21", "2V/U vs psi_q(1): below inside (1/z, z), above outside",
                std::move(s));
}

PropertyReport run_P22(const Ctx& ctx) {
  Sweep s;
  bool any_sub = false;
  for (const QData& d : ctx.qd) any_sub = any_sub || d.q < 1.0;
  if (any_sub) {
    const double ladder[3] = {0.9, 0.99, 0.999};
    const double probes[4] = {0.5, 1.0, 1.5, 2.0};
    for (int m = 0; m < 4; ++m) {
      double dev[3];
      for (int j = 0; j < 3; ++j) {
        auto qp = QPoint::make(ladder[j], ctx.cfg);
        double worst = 0.0;
        for (double x : probes)
          worst = std::max(worst,
                           std::fabs(ctx.psi(qp, x, m) - classical_psi(x, m)));
        dev[j] = worst;
      }
      const std::string tag = "order " + fmt("%g", m) + " trend";
      s.add((dev[0] - dev[1]) / scale(dev[0], dev[1]), ladder[1], 0.0, tag);
      s.add((dev[1] - dev[2]) / scale(dev[1], dev[2]), ladder[2], 0.0, tag);
    }
  }
  return finish("P22", "classical gap shrinks along q = 0.9, 0.99, 0.999",
                std::move(s));
}

PropertyReport run_P23(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    const double L = d.near1 ? 0.0 : std::log(d.q);
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double d1 = d.at[1][i];
      const double v = d.at[2][i] + d1 * d1 - L * d1;
      s.add(v / scale(d.at[2][i], d1 * d1, L * d1), d.q, ctx.xs[i], "quad");
    }
  }
  return finish("P23", "psi''_q + (psi'_q)^2 >= log(q) psi'_q", std::move(s));
}

PropertyReport run_P24(const Ctx& ctx) {
  Sweep s;
  for (const QData& d : ctx.qd) {
    if (d.near1) continue;
    const double L = std::log(d.q);
    for (size_t i = 0; i < ctx.xs.size(); ++i) {
      const double sx = ctx.xs[i] + 0.5;
      double rhs, Bv;
      if (d.q < 1.0) {
        rhs = std::log(-std::expm1(sx * L)) - std::log1p(-d.q);
        Bv = -L * std::exp(sx * L) / (-std::expm1(sx * L));
      } else {
        rhs = sx * L + std::log1p(-std::exp(-sx * L)) - std::log(d.q - 1.0);
        Bv = L / (-std::expm1(-sx * L));
      }
      s.add((d.plus[0][i] - rhs) / scale(d.plus[0][i], rhs), d.q, ctx.xs[i],
            "log bound");
      s.add((Bv - d.plus[1][i]) / scale(Bv, d.plus[1][i]), d.q, ctx.xs[i],
            "deriv bound");
    }
  }
  return finish("P24", "midpoint bounds on psi_q(x+1) and psi'_q(x+1)",
                std::move(s));
}

struct Entry {
  const char* id;
  PropertyReport (*fn)(const Ctx&);
};

constexpr Entry kCatalog[] = {
    {"P1", run_P1},   {"P2", run_P2},   {"P3", run_P3},   {"P4", run_P4},
    {"P5", run_P5},   {"P6", run_P6},   {"P7", run_P7},   {"P8", run_P8},
    {"P9", run_P9},   {"P10", run_P10}, {"P11", run_P11}, {"P12", run_P12},
    {"P13", run_P13}, {"P14", run_P14}, {"P15", run_P15}, {"P16", run_P16},
    {"P17", run_P17}, {"P18", run_P18}, {"P19", run_P19}, {"P20", run_P20},
    {"P21", run_P21}, {"P22", run_P22}, {"P23", run_P23}, {"P24", run_P24},
};

}  // namespace

std::vector<std::string> property_ids() {
  std::vector<std::string> ids;
  for (const Entry& e : kCatalog) ids.emplace_back(e.id);
  return ids;
}

std::vector<PropertyReport> verify_all(const GridSpec& grid, const EvalConfig& cfg,
                                       int jobs) {
  const Ctx ctx(grid, cfg);
  constexpr size_t n = std::size(kCatalog);
  std::vector<PropertyReport> out(n);
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = kCatalog[i].fn(ctx);
    return out;
  }
  std::counting_semaphore<> sem(jobs);
  std::vector<std::future<PropertyReport>> futs;
  futs.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    futs.push_back(std::async(std::launch::async, [&ctx, &sem, i] {
      sem.acquire();
      PropertyReport r = kCatalog[i].fn(ctx);
      sem.release();
      return r;
    }));
  }
  for (size_t i = 0; i < n; ++i) out[i] = futs[i].get();
  return out;
}

PropertyReport verify_property(const std::string& id, const GridSpec& grid,
                               const EvalConfig& cfg) {
  for (const Entry& e : kCatalog) {
    if (id == e.id) {
      const Ctx ctx(grid, cfg);
      return e.fn(ctx);
    }
  }
  throw error(errc::domain_violation, "unknown property id: " + id);
}

std::vector<ControlReport> run_negative_controls(const GridSpec& grid,
                                                 const EvalConfig& cfg) {
  std::vector<ControlReport> out;
  const std::vector<double> xs = grid.x_points();
  std::vector<double> qs = grid.q_set;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  auto psi_at = [&](const QPoint& qp, double x, int m) {
    return m == 0 ? psi_q(x, qp, cfg).value : psi_q_deriv(x, qp, m, cfg).value;
  };

  {
    // phi is NOT monotone between the sides at q = 1.6 < q0; claiming it is
    // must produce a violation.
    ControlReport c;
    c.id = "NC-P10";
    c.title = "planted: x psi'/psi monotone on both sides at q = 1.6";
    c.witness_q = 1.6;
    const auto qp = QPoint::make(1.6, cfg);
    double lo = 1.0, hi = 1.5;
    const double flo = psi_at(qp, lo, 0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((psi_at(qp, mid, 0) > 0.0) == (flo > 0.0))
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-13) break;
    }
    const double xq = 0.5 * (lo + hi);
    double best = -std::numeric_limits<double>::infinity();
    double bx = 0.0;
    const double r = grid.exclusion_radius;
    for (int side = 0; side < 2; ++side) {
      bool have = false;
      double va = 0.0;
      for (double x : xs) {
        const bool in_seg = side == 0 ? (x > 1.0 && x < xq - r) : (x > xq + r);
        if (!in_seg) continue;
        const double v = x * psi_at(qp, x, 1) / psi_at(qp, x, 0);
        if (have) {
          const double m = (v - va) / scale(va, v);
          ++c.evaluations;
          if (m > best) {
            best = m;
            bx = x;
          }
        }
        va = v;
        have = true;
      }
    }
    c.worst_margin = -best;
    c.witness_x = bx;
    c.fired = c.worst_margin < -margin_tolerance;
    out.push_back(std::move(c));
  }

  {
    ControlReport c;
    c.id = "NC-P12-high-a";
    c.title = "planted: x psi'_q + (amax + 0.1) psi_q >= 0 on [1, inf)";
    double worst = std::numeric_limits<double>::infinity();
    for (double q : qs) {
      const auto qp = QPoint::make(q, cfg);
      const double amax = -psi_at(qp, 1.0, 1) / psi_at(qp, 1.0, 0);
      const double a = amax + 0.1;
      auto probe = [&](double x) {
        const double v = x * psi_at(qp, x, 1) + a * psi_at(qp, x, 0);
        const double m = v / scale(v);
        ++c.evaluations;
        if (m < worst) {
          worst = m;
          c.witness_q = q;
          c.witness_x = x;
        }
      };
      probe(1.0);
      for (double x : xs)
        if (x > 1.0) probe(x);
    }
    c.worst_margin = c.evaluations > 0 ? worst : 0.0;
    c.fired = c.evaluations > 0 && c.worst_margin < -margin_tolerance;
    out.push_back(std::move(c));
  }

  {
    ControlReport c;
    c.id = "NC-P12-negative-a";
    c.title = "planted: x psi'_q - 0.1 psi_q >= 0 on [1, inf) for q < 1";
    double worst = std::numeric_limits<double>::infinity();
    for (double q : qs) {
      if (!(q < 1.0)) continue;
      const auto qp = QPoint::make(q, cfg);
      auto probe = [&](double x) {
        const double v = x * psi_at(qp, x, 1) - 0.1 * psi_at(qp, x, 0);
        const double m = v / scale(v);
        ++c.evaluations;
        if (m < worst) {
          worst = m;
          c.witness_q = q;
          c.witness_x = x;
        }
      };
      probe(1.0);
      for (double x : xs)
        if (x > 1.0) probe(x);
    }
    c.worst_margin = c.evaluations > 0 ? worst : 0.0;
    c.fired = c.evaluations > 0 && c.worst_margin < -margin_tolerance;
    out.push_back(std::move(c));
  }

  return out;
}

}  // namespace qtk
