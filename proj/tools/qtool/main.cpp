// qtool: command-line front end for the q-gamma / q-digamma toolkit.
// Exit codes: 0 ok, 1 verification found a violation (or a planted control
// failed to fire), 2 usage error, 3 numerical failure, 4 not applicable.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtk/qcore.hpp"
#include "qtk/qfigure.hpp"
#include "qtk/qreport.hpp"
#include "qtk/qroots.hpp"
#include "qtk/qverify.hpp"

namespace {

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "usage error: %s\n", msg.c_str());
  return 2;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct EvalArgs {
  std::string fn;
  double x = 0.0;
  double q = 0.0;
  std::optional<double> m, a, alpha;
  std::optional<int> k;
};

int do_eval(const EvalArgs& args, const qtk::EvalConfig& cfg) {
  const qtk::QPoint qp = qtk::QPoint::make(args.q, cfg);
  qtk::Evaluation ev;
  if (args.fn == "gamma") {
    ev = qtk::gamma_q(args.x, qp, cfg);
  } else if (args.fn == "loggamma") {
    ev = qtk::log_gamma_q(args.x, qp, cfg);
  } else if (args.fn == "psi") {
    ev = qtk::psi_q(args.x, qp, cfg);
  } else if (args.fn == "psi1" || args.fn == "psi2" || args.fn == "psi3") {
    ev = qtk::psi_q_deriv(args.x, qp, args.fn[3] - '0', cfg);
  } else if (args.fn.rfind("stat:", 0) == 0) {
    const auto sid = qtk::stat_from_name(args.fn.substr(5));
    if (!sid) return usage_error("unknown statistic: " + args.fn.substr(5));
    qtk::StatExtra extra;
    extra.m = args.m;
    extra.a = args.a;
    extra.alpha = args.alpha;
    extra.k = args.k;
    ev = qtk::eval_statistic(*sid, args.x, qp, extra, cfg);
  } else {
    return usage_error("unknown function: " + args.fn);
  }
  std::printf("value=%.17g err<=%.3g terms=%lld\n", ev.value, ev.tail_bound,
              ev.terms_used);
  return 0;
}

int do_roots(const std::string& kind, double q, const qtk::EvalConfig& cfg) {
  const qtk::QPoint qp = qtk::QPoint::make(q, cfg);
  qtk::RootResult r;
  if (kind == "xq")
    r = qtk::find_x_q(qp, cfg);
  else if (kind == "yq")
    r = qtk::find_y_q(qp, cfg);
  else if (kind == "zq")
    r = qtk::find_z_q(qp, cfg);
  else
    return usage_error("unknown root kind: " + kind);
  std::printf("root=%.17g residual=%.3g bracket_width=%.3g iterations=%lld\n",
              r.root, r.residual, r.bracket_width, r.iterations);
  return 0;
}

int do_constants(const std::vector<double>& qs, const qtk::EvalConfig& cfg) {
  const qtk::Constants c = qtk::compute_constants(cfg);
  const double res = std::fabs(((c.q0 - 2.0) * c.q0 + 1.0) * c.q0 - 1.0);
  std::printf("q0=%.17g residual=%.3g\n", c.q0, res);
  std::printf("p0=%.17g\n", c.p0);
  std::printf("j_boundary=%.17g\n", c.j_boundary);
  std::printf("x1_classical=%.17g\n", c.x1_classical);
  for (double q : qs) {
    const auto r = qtk::find_x_q(qtk::QPoint::make(q, cfg), cfg);
    std::printf("x_q(%g)=%.17g\n", q, r.root);
  }
  return 0;
}

struct VerifyArgs {
  std::string props;
  std::string q_set;
  double x_min = 1e-3;
  double x_max = 1e3;
  int x_count = 400;
  std::string format = "json";
  std::string out;
  int jobs = 1;
};

int do_verify(const VerifyArgs& args, const qtk::EvalConfig& cfg) {
  qtk::GridSpec grid = qtk::GridSpec::standard(cfg);
  if (!args.q_set.empty()) {
    std::vector<double> qs;
    for (const std::string& tok : split_csv(args.q_set)) {
      char* end = nullptr;
      const double q = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0')
        return usage_error("bad q value: " + tok);
      qs.push_back(q);
    }
    grid.q_set = std::move(qs);
  }
  grid.x_min = args.x_min;
  grid.x_max = args.x_max;
  grid.x_count = args.x_count;

  std::vector<std::string> requested;
  if (!args.props.empty()) {
    const auto known = qtk::property_ids();
    const auto toks = split_csv(args.props);
    for (const std::string& t : toks)
      if (std::find(known.begin(), known.end(), t) == known.end())
        return usage_error("unknown property id: " + t);
    // emit in catalog order, once each
    for (const std::string& id : known)
      if (std::find(toks.begin(), toks.end(), id) != toks.end())
        requested.push_back(id);
  }

  qtk::ReportDocument doc;
  doc.config = cfg;
  doc.grid = grid;
  doc.props = requested;
  doc.jobs = args.jobs;
  const auto t0 = std::chrono::steady_clock::now();
  if (requested.empty()) {
    doc.properties = qtk::verify_all(grid, cfg, args.jobs);
    doc.controls = qtk::run_negative_controls(grid, cfg);
  } else {
    for (const std::string& id : requested)
      doc.properties.push_back(qtk::verify_property(id, grid, cfg));
  }
  doc.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string text =
      args.format == "text" ? qtk::render_text(doc) : qtk::to_json(doc) + "\n";
  if (args.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream f(args.out, std::ios::binary);
    if (!f) return usage_error("cannot open " + args.out);
    f << text;
  }
  return doc.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-gamma / q-digamma toolkit"};
  app.require_subcommand(1);

  qtk::EvalConfig cfg;
  app.add_option("--tol", cfg.tol_abs, "absolute series tolerance");
  app.add_option("--max-terms", cfg.max_terms, "series term cap");
  app.add_option("--near-one-delta", cfg.near_one_delta,
                 "half-width of the classical-limit band around q = 1");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate a function or statistic");
  eval->add_option("--fn", ev.fn,
                   "gamma|loggamma|psi|psi1|psi2|psi3|stat:<name>")
      ->required();
  eval->add_option("--x", ev.x, "argument")->required();
  eval->add_option("--q", ev.q, "deformation parameter")->required();
  eval->add_option("--m", ev.m, "power-mean order (stat:G_mean)");
  eval->add_option("--a", ev.a, "linear coefficient (stat:h_lin)");
  eval->add_option("--alpha", ev.alpha, "exponent (stat:g_alpha)");
  eval->add_option("--k", ev.k, "derivative offset (stat:S_qk)");

  std::string root_kind;
  double root_q = 0.0;
  auto* roots = app.add_subcommand("roots", "bracketed special points");
  roots->add_option("--kind", root_kind, "xq|yq|zq")->required();
  roots->add_option("--q", root_q, "deformation parameter")->required();

  std::vector<double> const_qs;
  auto* constants = app.add_subcommand("constants", "q0, p0, j-boundary, x1");
  constants->add_option("--q", const_qs, "also print x_q at these q");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the inequality sweep");
  verify->add_option("--props", va.props, "comma-separated property ids");
  verify->add_option("--q-set", va.q_set, "comma-separated q grid");
  verify->add_option("--x-min", va.x_min, "smallest x");
  verify->add_option("--x-max", va.x_max, "largest x");
  verify->add_option("--x-count", va.x_count, "points per q");
  verify->add_option("--format", va.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--out", va.out, "write report here instead of stdout");
  verify->add_option("--jobs", va.jobs, "worker threads");

  qtk::FigureSpec fig;
  std::string fig_out;
  auto* figure = app.add_subcommand("figure", "CSV data behind figures 1-4");
  figure->add_option("--fig", fig.id, "figure number")
      ->required()
      ->check(CLI::Range(1, 4));
  figure->add_option("--out", fig_out, "output CSV path")->required();
  figure->add_option("--samples", fig.samples, "points per curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*eval) return do_eval(ev, cfg);
    if (*roots) return do_roots(root_kind, root_q, cfg);
    if (*constants) return do_constants(const_qs, cfg);
    if (*verify) return do_verify(va, cfg);
    if (*figure) {
      qtk::write_figure_csv(qtk::figure_data(fig, cfg), fig_out);
      return 0;
    }
    return usage_error("no subcommand");
  } catch (const qtk::error& e) {
    switch (e.code()) {
      case qtk::errc::missing_parameter:
        return usage_error(e.what());
      case qtk::errc::not_applicable:
        std::fprintf(stderr, "not applicable: %s\n", e.what());
        return 4;
      default:
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
