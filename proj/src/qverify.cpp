#include "qtk/qverify.hpp"

#include <cmath>

#include "qtk/qcore.hpp"
#include "qtk/qroots.hpp"

namespace qtk {

namespace {

double logaddexp(double a, double b) {
  const double hi = a >= b ? a : b;
  const double lo = a >= b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

constexpr double kPoleEps = 1e-10;

Evaluation combine(double value, double tail, long long terms) {
  Evaluation ev;
  ev.value = value;
  ev.tail_bound = tail;
  ev.terms_used = terms;
  return ev;
}

double need(const std::optional<double>& v, const char* what) {
  if (!v) throw error(errc::missing_parameter, what);
  return *v;
}

// Gamma_q(x) Gamma_q(1/x) / (Gamma_q(x) + Gamma_q(1/x)) in log space.
Evaluation stat_f(double x, const QPoint& q, const EvalConfig& cfg) {
  Evaluation la = log_gamma_q(x, q, cfg);
  Evaluation lb = log_gamma_q(1.0 / x, q, cfg);
  const double v = std::exp(la.value + lb.value - logaddexp(la.value, lb.value));
  return combine(v, v * 2.0 * (la.tail_bound + lb.tail_bound),
                 la.terms_used + lb.terms_used);
}

}  // namespace

const char* stat_name(StatId id) {
  switch (id) {
    case StatId::f_q: return "f_q";
    case StatId::g_alpha: return "g_alpha";
    case StatId::G_mean: return "G_mean";
    case StatId::theta1: return "theta1";
    case StatId::G_ratio: return "G_ratio";
    case StatId::phi: return "phi";
    case StatId::U_sum: return "U_sum";
    case StatId::V_prod: return "V_prod";
    case StatId::H_harm: return "H_harm";
    case StatId::h_lin: return "h_lin";
    case StatId::S_qk: return "S_qk";
    case StatId::u_of_q: return "u_of_q";
    case StatId::w_of_q: return "w_of_q";
  }
  return "unknown";
}

std::optional<StatId> stat_from_name(const std::string& name) {
  for (StatId id : {StatId::f_q, StatId::g_alpha, StatId::G_mean, StatId::theta1,
                    StatId::G_ratio, StatId::phi, StatId::U_sum, StatId::V_prod,
                    StatId::H_harm, StatId::h_lin, StatId::S_qk, StatId::u_of_q,
                    StatId::w_of_q}) {
    if (name == stat_name(id)) return id;
  }
  return std::nullopt;
}

Evaluation eval_statistic(StatId id, double x, const QPoint& q,
                          const StatExtra& extra, const EvalConfig& cfg) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "statistics require x > 0");
  switch (id) {
    case StatId::f_q:
      return stat_f(x, q, cfg);
    case StatId::g_alpha: {
      const double alpha = need(extra.alpha, "g_alpha requires --alpha");
      return stat_f(std::pow(x, alpha), q, cfg);
    }
    case StatId::G_mean: {
      const double m = need(extra.m, "G_mean requires --m");
      Evaluation la = log_gamma_q(x, q, cfg);
      Evaluation lb = log_gamma_q(1.0 / x, q, cfg);
      double u;
      if (std::fabs(m) < 1e-8)
        u = 0.5 * (la.value + lb.value);
      else
        u = (logaddexp(m * la.value, m * lb.value) - std::log(2.0)) / m;
      const double v = std::exp(u);
      return combine(v, v * (la.tail_bound + lb.tail_bound),
                     la.terms_used + lb.terms_used);
    }
    case StatId::theta1: {
      Evaluation p = psi_q(x, q, cfg);
      Evaluation g = gamma_q(x, q, cfg);
      const double v = x * p.value / g.value;
      const double tail = std::fabs(x / g.value) * p.tail_bound +
                          std::fabs(v / g.value) * g.tail_bound;
      return combine(v, tail, p.terms_used + g.terms_used);
    }
    case StatId::G_ratio:
    case StatId::phi: {
      Evaluation num = psi_q_deriv(x, q, 1, cfg);
      Evaluation den = psi_q(x, q, cfg);
      if (std::fabs(den.value) < kPoleEps)
        throw error(errc::pole_proximity, "psi_q(x) vanishes at x_q");
      double v = num.value / den.value;
      double tail = (num.tail_bound + std::fabs(v) * den.tail_bound) /
                    std::fabs(den.value);
      if (id == StatId::phi) {
        v *= x;
        tail *= x;
      }
      return combine(v, tail, num.terms_used + den.terms_used);
    }
    case StatId::U_sum: {
      Evaluation a = psi_q(x, q, cfg);
      Evaluation b = psi_q(1.0 / x, q, cfg);
      return combine(a.value + b.value, a.tail_bound + b.tail_bound,
                     a.terms_used + b.terms_used);
    }
    case StatId::V_prod: {
      Evaluation a = psi_q(x, q, cfg);
      Evaluation b = psi_q(1.0 / x, q, cfg);
      const double tail = std::fabs(a.value) * b.tail_bound +
                          std::fabs(b.value) * a.tail_bound +
                          a.tail_bound * b.tail_bound;
      return combine(a.value * b.value, tail, a.terms_used + b.terms_used);
    }
    case StatId::H_harm: {
      Evaluation a = psi_q(x, q, cfg);
      Evaluation b = psi_q(1.0 / x, q, cfg);
      const double U = a.value + b.value;
      if (std::fabs(U) < kPoleEps)
        throw error(errc::pole_proximity, "psi_q(x) + psi_q(1/x) vanishes at z_q");
      const double V = a.value * b.value;
      const double v = V / U;
      const double vt = std::fabs(a.value) * b.tail_bound +
                        std::fabs(b.value) * a.tail_bound;
      const double tail =
          (vt + std::fabs(v) * (a.tail_bound + b.tail_bound)) / std::fabs(U);
      return combine(v, tail, a.terms_used + b.terms_used);
    }
    case StatId::h_lin: {
      const double a = need(extra.a, "h_lin requires --a");
      Evaluation d1 = psi_q_deriv(x, q, 1, cfg);
      Evaluation d0 = psi_q(x, q, cfg);
      return combine(x * d1.value + a * d0.value,
                     std::fabs(x) * d1.tail_bound + std::fabs(a) * d0.tail_bound,
                     d0.terms_used + d1.terms_used);
    }
    case StatId::S_qk: {
      if (!extra.k) throw error(errc::missing_parameter, "S_qk requires --k");
      const int k = *extra.k;
      if (k < 0 || k > 1)
        throw error(errc::unsupported_order,
                    "S_qk needs psi derivatives beyond order 3 unless k is 0 or 1");
      auto deriv = [&](int m) {
        return m == 0 ? psi_q(x, q, cfg) : psi_q_deriv(x, q, m, cfg);
      };
      Evaluation lo = deriv(k);
      Evaluation mid = deriv(k + 1);
      Evaluation hi = deriv(k + 2);
      const double v = hi.value * lo.value - mid.value * mid.value;
      const double tail = std::fabs(hi.value) * lo.tail_bound +
                          std::fabs(lo.value) * hi.tail_bound +
                          2.0 * std::fabs(mid.value) * mid.tail_bound;
      return combine(v, tail, lo.terms_used + mid.terms_used + hi.terms_used);
    }
    case StatId::u_of_q: {
      Evaluation d1 = psi_q_deriv(1.0, q, 1, cfg);
      Evaluation d2 = psi_q_deriv(1.0, q, 2, cfg);
      return combine(d1.value + d2.value, d1.tail_bound + d2.tail_bound,
                     d1.terms_used + d2.terms_used);
    }
    case StatId::w_of_q: {
      Evaluation p = psi_q(1.0, q, cfg);
      Evaluation d1 = psi_q_deriv(1.0, q, 1, cfg);
      const double v = p.value - p.value * p.value + d1.value;
      const double tail =
          (1.0 + 2.0 * std::fabs(p.value)) * p.tail_bound + d1.tail_bound;
      return combine(v, tail, p.terms_used + d1.terms_used);
    }
  }
  throw error(errc::domain_violation, "unknown statistic");
}

Membership membership_J(double q, const EvalConfig& cfg) {
  const double w = w_of_q(q, cfg);
  return {w >= 0.0, w};
}

Membership membership_I(double q, const EvalConfig& cfg) {
  const double u = u_of_q(q, cfg);
  return {u >= 0.0, u};
}

GridSpec GridSpec::standard(const EvalConfig& cfg) {
  GridSpec g;
  g.q_set = {0.1, 0.25, 0.5, 0.9, 0.99, 1.5, q0_closed_form(), 2.0, 3.0,
             find_p0(cfg).root, 4.0, 4.5, 5.0, 9.0, 10.0};
  return g;
}

std::vector<double> GridSpec::x_points() const {
  std::vector<double> xs;
  xs.reserve(x_count);
  if (x_count == 1) {
    xs.push_back(x_min);
    return xs;
  }
  const double ll = std::log(x_min), lh = std::log(x_max);
  for (int i = 0; i < x_count; ++i) {
    if (i == 0)
      xs.push_back(x_min);
    else if (i == x_count - 1)
      xs.push_back(x_max);
    else
      xs.push_back(std::exp(ll + (lh - ll) * i / (x_count - 1)));
  }
  return xs;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "unknown";
}

}  // namespace qtk
