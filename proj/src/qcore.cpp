#include "qtk/qcore.hpp"

#include <cmath>
#include <limits>

namespace qtk {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_positive_argument: return "non_positive_argument";
    case errc::tail_bound_unmet: return "tail_bound_unmet";
    case errc::overflow: return "overflow";
    case errc::unsupported_order: return "unsupported_order";
    case errc::invalid_bracket: return "invalid_bracket";
    case errc::max_iterations: return "max_iterations";
    case errc::not_applicable: return "not_applicable";
    case errc::pole_proximity: return "pole_proximity";
    case errc::missing_parameter: return "missing_parameter";
    case errc::ratio_not_contracting: return "ratio_not_contracting";
    case errc::domain_violation: return "domain_violation";
  }
  return "unknown";
}

QPoint QPoint::make(double q, const EvalConfig& cfg) {
  if (!(q > 0.0)) throw error(errc::non_positive_argument, "q must be positive");
  QPoint p;
  p.q = q;
  if (std::fabs(q - 1.0) <= cfg.near_one_delta)
    p.branch = Branch::NearOne;
  else
    p.branch = q < 1.0 ? Branch::SubOne : Branch::SuperOne;
  return p;
}

namespace {

// Compensated (Neumaier) accumulator; the series terms are benign but the
// certified bounds assume the summation itself contributes ~1 ulp.
struct Acc {
  double s = 0.0, c = 0.0;
  void add(double t) {
    double u = s + t;
    if (std::fabs(s) >= std::fabs(t))
      c += (s - u) + t;
    else
      c += (t - u) + s;
    s = u;
  }
  double total() const { return s + c; }
};

double ipow(double b, int m) {
  // m is 0..3; match pow() exactly in the exact-product regime
  if (m == 0) return 1.0;
  if (m == 1) return b;
  if (m == 2) return b * b;
  return b * b * b;
}

struct SeriesOut {
  double sum = 0.0;
  double tail = 0.0;
  long long terms = 0;
};

// sum_{n>=1} n^m q^{nx} / (1 - q^n) for q < 1, x >= 1.  The term ratio is
// eventually below q^x ((n+2)/(n+1))^m < 1, giving a geometric tail majorant.
SeriesOut power_series(double q, double x, int m, double tol_raw,
                       long long max_terms) {
  const double qx = std::exp(x * std::log(q));
  Acc acc;
  double p = 1.0, w = 1.0;
  long long n = 0;
  while (n < max_terms) {
    n += 1;
    p *= qx;
    w *= q;
    const double t = ipow(static_cast<double>(n), m) * p / (1.0 - w);
    acc.add(t);
    const double r = qx * ipow((n + 2.0) / (n + 1.0), m);
    if (r < 1.0) {
      const double t_next = ipow(n + 1.0, m) * (p * qx) / (1.0 - w * q);
      const double tail = t_next / (1.0 - r);
      if (tail <= tol_raw) return {acc.total(), tail, n};
    }
  }
  throw error(errc::tail_bound_unmet, "psi series: term cap before tolerance");
}

double g_m(double u, double omu, int m) {
  if (m == 0) return u / omu;
  if (m == 1) return u / (omu * omu);
  if (m == 2) return u * (1.0 + u) / std::pow(omu, 3.0);
  return u * (1.0 + u * (4.0 + u)) / std::pow(omu, 4.0);
}

// same sum for x < 1: group q^{nx}/(1-q^n) = sum_k rational pieces g_m of
// u = q^{x+k}; each piece is bounded by g_m(q^{x+k+1})/(1-q).
SeriesOut shifted_series(double q, double x, int m, double tol_raw,
                         long long max_terms) {
  const double lq = std::log(q);
  double u = std::exp(x * lq);
  const double one_minus_q = 1.0 - q;
  Acc acc;
  long long n = 0;
  double s = g_m(u, -std::expm1(x * lq), m);
  while (n < max_terms) {
    acc.add(s);
    const double un = u * q;
    const double sn = g_m(un, 1.0 - un, m);
    if (sn / one_minus_q <= tol_raw)
      return {acc.total(), sn / one_minus_q, n + 1};
    u = un;
    s = sn;
    n += 1;
  }
  throw error(errc::tail_bound_unmet, "psi series: term cap before tolerance");
}

// psi_q^{(m)}(x) for 0 < q < 1; the certified bound is on the final value.
Evaluation psi_sub(double q, double x, int m, const EvalConfig& cfg) {
  const double lq = std::log(q);
  double mult = lq;
  for (int i = 0; i < m; ++i) mult *= lq;
  const double tol_raw = cfg.tol_abs / std::fabs(mult);
  SeriesOut so = x >= 1.0 ? power_series(q, x, m, tol_raw, cfg.max_terms)
                          : shifted_series(q, x, m, tol_raw, cfg.max_terms);
  Evaluation ev;
  ev.value = m == 0 ? -std::log1p(-q) + lq * so.sum : mult * so.sum;
  ev.tail_bound = std::fabs(mult) * so.tail;
  ev.terms_used = so.terms;
  return ev;
}

Evaluation near_one(double value) {
  Evaluation ev;
  ev.value = value;
  ev.tail_bound = 4.0 * std::numeric_limits<double>::epsilon() *
                  std::max(1.0, std::fabs(value));
  ev.terms_used = 0;
  return ev;
}

Evaluation psi_any(double x, const QPoint& q, int m, const EvalConfig& cfg) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "psi_q: x must be positive");
  if (q.branch == Branch::NearOne) return near_one(classical_psi(x, m));
  if (q.q < 1.0) return psi_sub(q.q, x, m, cfg);
  const double r = 1.0 / q.q;
  Evaluation ev = psi_sub(r, x, m, cfg);
  if (m == 0)
    ev.value = (x - 1.5) * std::log(q.q) + ev.value;
  else if (m == 1)
    ev.value = std::log(q.q) + ev.value;
  return ev;  // m >= 2: invariant under q -> 1/q
}

// log Gamma_q(x) for 0 < q < 1 as the certified log-product.
Evaluation lgam_sub(double q, double x, const EvalConfig& cfg) {
  const double lq = std::log(q);
  const double one_minus_q = 1.0 - q;
  const double pmin = std::exp(std::min(1.0, x) * lq);
  double a = q;
  double b = std::exp(x * lq);
  const double omb0 = -std::expm1(x * lq);
  Acc acc;
  long long n = 0;
  while (n < cfg.max_terms) {
    acc.add(std::log1p(-a) - (n == 0 ? std::log(omb0) : std::log1p(-b)));
    const double tail = a * pmin / (one_minus_q * one_minus_q);
    if (tail <= cfg.tol_abs) {
      Evaluation ev;
      ev.value = (1.0 - x) * std::log1p(-q) + acc.total();
      ev.tail_bound = tail;
      ev.terms_used = n + 1;
      return ev;
    }
    a *= q;
    b *= q;
    n += 1;
  }
  throw error(errc::tail_bound_unmet, "log_gamma_q: term cap before tolerance");
}

}  // namespace

Evaluation log_gamma_q(double x, const QPoint& q, const EvalConfig& cfg) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "log_gamma_q: x must be positive");
  if (q.branch == Branch::NearOne) return near_one(std::lgamma(x));
  if (q.q < 1.0) return lgam_sub(q.q, x, cfg);
  Evaluation ev = lgam_sub(1.0 / q.q, x, cfg);
  ev.value = 0.5 * (x - 1.0) * (x - 2.0) * std::log(q.q) + ev.value;
  return ev;
}

Evaluation gamma_q(double x, const QPoint& q, const EvalConfig& cfg) {
  Evaluation lg = log_gamma_q(x, q, cfg);
  if (lg.value > 709.0)
    throw error(errc::overflow, "gamma_q: log Gamma exceeds exp() range");
  Evaluation ev;
  ev.value = std::exp(lg.value);
  // |exp(L+e) - exp(L)| <= exp(L) (e^|e| - 1)
  ev.tail_bound = std::fabs(ev.value) * std::expm1(lg.tail_bound);
  if (q.branch == Branch::NearOne)
    ev.tail_bound = 4.0 * std::numeric_limits<double>::epsilon() *
                    std::max(1.0, std::fabs(ev.value));
  ev.terms_used = lg.terms_used;
  return ev;
}

Evaluation psi_q(double x, const QPoint& q, const EvalConfig& cfg) {
  return psi_any(x, q, 0, cfg);
}

Evaluation psi_q_deriv(double x, const QPoint& q, int m, const EvalConfig& cfg) {
  if (m < 1 || m > 3)
    throw error(errc::unsupported_order, "psi_q_deriv: order must be 1..3");
  return psi_any(x, q, m, cfg);
}

}  // namespace qtk
