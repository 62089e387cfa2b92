#include "qtk/qroots.hpp"

#include <cmath>

#include "qtk/qcore.hpp"

namespace qtk {

Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi) {
  if (!(lo < hi)) throw error(errc::invalid_bracket, "bracket endpoints out of order");
  Bracket b;
  b.lo = lo;
  b.hi = hi;
  b.f_lo = f(lo);
  b.f_hi = f(hi);
  if (b.f_lo == 0.0 || b.f_hi == 0.0) return b;
  if ((b.f_lo < 0.0) == (b.f_hi < 0.0))
    throw error(errc::invalid_bracket, "no sign change over the bracket");
  return b;
}

RootResult solve_bracketed(const std::function<double(double)>& f, Bracket b,
                           double tol) {
  constexpr int kMaxIter = 200;
  double lo = b.lo, hi = b.hi, flo = b.f_lo, fhi = b.f_hi;
  long long iters = 0;
  if (flo == 0.0) hi = lo;
  if (fhi == 0.0) lo = hi;
  while (hi - lo > tol) {
    if (iters >= kMaxIter)
      throw error(errc::max_iterations, "root refinement stalled before tolerance");
    // secant proposal, rejected when it crowds an endpoint
    const double guard = 0.01 * (hi - lo);
    double mid = lo - flo * (hi - lo) / (fhi - flo);
    if (!std::isfinite(mid) || mid <= lo + guard || mid >= hi - guard)
      mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    const double fm = f(mid);
    ++iters;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (hi - lo > tol)
    throw error(errc::max_iterations, "root refinement stalled before tolerance");
  RootResult r;
  r.root = 0.5 * (lo + hi);
  r.residual = f(r.root);
  r.bracket_width = hi - lo;
  r.iterations = iters;
  return r;
}

RootResult find_x_q(const QPoint& q, const EvalConfig& cfg) {
  auto f = [&](double t) { return psi_q(t, q, cfg).value; };
  return solve_bracketed(f, make_bracket(f, 1.0, 1.5));
}

double u_of_q(double q, const EvalConfig& cfg) {
  auto qp = QPoint::make(q, cfg);
  return psi_q_deriv(1.0, qp, 1, cfg).value + psi_q_deriv(1.0, qp, 2, cfg).value;
}

double w_of_q(double q, const EvalConfig& cfg) {
  auto qp = QPoint::make(q, cfg);
  const double p = psi_q(1.0, qp, cfg).value;
  return p - p * p + psi_q_deriv(1.0, qp, 1, cfg).value;
}

RootResult find_y_q(const QPoint& q, const EvalConfig& cfg) {
  if (w_of_q(q.q, cfg) >= 0.0)
    throw error(errc::not_applicable,
                "y_q requires w(q) < 0 (q beyond the j-boundary)");
  auto N = [&](double t) {
    const double p = psi_q(t, q, cfg).value;
    return t * p + t * t * psi_q_deriv(t, q, 1, cfg).value - (t * p) * (t * p);
  };
  const double xq = find_x_q(q, cfg).root;
  // N(1+) = w(q) < 0 and N(x_q) = x_q^2 psi'_q(x_q) > 0
  return solve_bracketed(N, make_bracket(N, 1.0 + 1e-9, xq));
}

RootResult find_z_q(const QPoint& q, const EvalConfig& cfg) {
  if (u_of_q(q.q, cfg) < -1e-12)
    throw error(errc::not_applicable, "z_q requires u(q) >= 0 (q at or past p0)");
  auto U = [&](double t) {
    return psi_q(t, q, cfg).value + psi_q(1.0 / t, q, cfg).value;
  };
  const double xq = find_x_q(q, cfg).root;
  double hi = std::max(2.0, xq + 1.0);
  int doublings = 0;
  while (U(hi) <= 0.0) {
    hi *= 2.0;
    if (++doublings > 40)
      throw error(errc::max_iterations, "z_q: no sign change found while doubling");
  }
  return solve_bracketed(U, make_bracket(U, xq, hi));
}

RootResult find_p0(const EvalConfig& cfg) {
  auto f = [&](double t) { return u_of_q(t, cfg); };
  return solve_bracketed(f, make_bracket(f, 3.0, 4.5));
}

RootResult find_J_boundary(const EvalConfig& cfg) {
  auto f = [&](double t) { return w_of_q(t, cfg); };
  return solve_bracketed(f, make_bracket(f, 4.0, 10.0));
}

double q0_closed_form() {
  const double s = 3.0 * std::sqrt(69.0);
  return (2.0 * std::cbrt(2.0) + std::cbrt(25.0 - s) + std::cbrt(25.0 + s)) /
         (3.0 * std::cbrt(2.0));
}

Constants compute_constants(const EvalConfig& cfg) {
  Constants c;
  c.q0 = q0_closed_form();
  c.p0 = find_p0(cfg).root;
  c.j_boundary = find_J_boundary(cfg).root;
  c.x1_classical = find_x_q(QPoint::make(1.0, cfg), cfg).root;
  return c;
}

}  // namespace qtk
