#include "qtk/qoracle.hpp"

#include <cmath>

#include "qtk/qcore.hpp"

namespace qtk {

double fd_derivative(const std::function<double(double)>& f, double x, int m,
                     const OracleConfig& cfg) {
  if (m == 1) {
    const double h = cfg.fd_step;
    if (!(x - h > 0.0))
      throw error(errc::domain_violation, "fd stencil reaches a non-positive point");
    return (f(x + h) - f(x - h)) / (2.0 * h);
  }
  if (m == 2) {
    const double h = cfg.fd_step_2;
    if (!(x - 2.0 * h > 0.0))
      throw error(errc::domain_violation, "fd stencil reaches a non-positive point");
    return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
            f(x - 2 * h)) /
           (12.0 * h * h);
  }
  if (m == 3) {
    const double h = cfg.fd_step_3;
    if (!(x - 3.0 * h > 0.0))
      throw error(errc::domain_violation, "fd stencil reaches a non-positive point");
    return (-f(x + 3 * h) + 8.0 * f(x + 2 * h) - 13.0 * f(x + h) +
            13.0 * f(x - h) - 8.0 * f(x - 2 * h) + f(x - 3 * h)) /
           (8.0 * h * h * h);
  }
  throw error(errc::unsupported_order, "fd_derivative: order must be 1..3");
}

ProductResult product_gamma_oracle(double x, const QPoint& q, long long n_factors) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "product oracle: x must be positive");
  if (q.branch == Branch::NearOne)
    throw error(errc::not_applicable,
                "product oracle: no finite q-product at the classical limit");
  const double r = q.q < 1.0 ? q.q : 1.0 / q.q;
  const double lr = std::log(r);
  double sum = 0.0;
  for (long long k = 0; k < n_factors; ++k) {
    sum += std::log1p(-std::exp((k + 1.0) * lr)) -
           std::log1p(-std::exp((k + x) * lr));
  }
  ProductResult out;
  out.value = (1.0 - x) * std::log1p(-r) + sum;
  if (q.q > 1.0)
    out.value += 0.5 * (x - 1.0) * (x - 2.0) * std::log(q.q);
  // each dropped factor is bounded by r^{k+min(1,x)}/(1-r); geometric sum
  out.tail_bound = std::exp((n_factors + std::min(1.0, x)) * lr) /
                   ((1.0 - r) * (1.0 - r));
  out.terms = n_factors;
  return out;
}

double series_tail_bound(double q, double x, int m, long long n_terms) {
  if (!(q > 0.0) || !(x > 0.0))
    throw error(errc::non_positive_argument, "series_tail_bound: q, x must be positive");
  if (q >= 1.0)
    throw error(errc::domain_violation, "series_tail_bound: defined for q < 1 only");
  if (m < 0 || m > 3)
    throw error(errc::unsupported_order, "series_tail_bound: order must be 0..3");
  const double qx = std::exp(x * std::log(q));
  const double ratio = qx * std::pow((n_terms + 2.0) / (n_terms + 1.0), m);
  if (ratio >= 1.0)
    throw error(errc::ratio_not_contracting,
                "series_tail_bound: no geometric majorant after n_terms terms");
  const double t_next = std::pow(n_terms + 1.0, m) *
                        std::exp((n_terms + 1.0) * x * std::log(q)) /
                        (1.0 - std::pow(q, static_cast<double>(n_terms + 1)));
  return t_next / (1.0 - ratio);
}

double psi_super_direct(double x, double q, const EvalConfig& cfg) {
  if (!(x > 0.0))
    throw error(errc::non_positive_argument, "psi_super_direct: x must be positive");
  if (!(q > 1.0 + cfg.near_one_delta))
    throw error(errc::domain_violation, "psi_super_direct: requires q > 1");
  const double L = std::log(q);
  const double lr = -L;
  const double rx = std::exp(x * lr);
  double s = 0.0;
  bool certified = false;
  for (long long n = 1; n <= cfg.max_terms; ++n) {
    const double t = std::exp(n * x * lr) / (1.0 - std::exp(n * lr));
    s += t;
    // crude geometric tail in r^x per extra term
    if (t * rx / (1.0 - rx) <= cfg.tol_abs / L) {
      certified = true;
      break;
    }
  }
  if (!certified)
    throw error(errc::tail_bound_unmet, "psi_super_direct: term cap before tolerance");
  return -std::log(q - 1.0) + L * (x - 0.5 - s);
}

}  // namespace qtk
