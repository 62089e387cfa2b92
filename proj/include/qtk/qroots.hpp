#pragma once

#include <functional>

#include "qtk/types.hpp"

namespace qtk {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  double bracket_width = 0.0;
  long long iterations = 0;
};

struct Constants {
  double q0 = 0.0;           // largest root of q^3 - 2q^2 + q - 1
  double p0 = 0.0;           // sign change of u(q) = psi'_q(1) + psi''_q(1)
  double j_boundary = 0.0;   // sign change of w(q) = psi_q(1) - psi_q(1)^2 + psi'_q(1)
  double x1_classical = 0.0; // positive root of classical psi
};

// Evaluates f at the endpoints and requires a sign change.
Bracket make_bracket(const std::function<double(double)>& f, double lo, double hi);

// Bisection with guarded secant acceleration.  The bracket must straddle a
// sign change; the iterate never leaves it.
RootResult solve_bracketed(const std::function<double(double)>& f, Bracket b,
                           double tol = 1e-12);

// Root of psi_q on (1, 1.5): psi_q(1) < 0 < psi_q(3/2) for every q > 0.
RootResult find_x_q(const QPoint& q, const EvalConfig& cfg = {});

// Root of x psi_q(x) + x^2 psi'_q(x) - (x psi_q(x))^2 on (1, x_q): the
// stationarity criterion behind the f_q piecewise-monotone claim.  Only
// exists when w(q) < 0 (q past the j-boundary); otherwise not_applicable.
RootResult find_y_q(const QPoint& q, const EvalConfig& cfg = {});

// Second zero of U(x) = psi_q(x) + psi_q(1/x) right of x_q.  Only exists
// from p0 upward (u(q) >= 0); below that, errc::not_applicable.
RootResult find_z_q(const QPoint& q, const EvalConfig& cfg = {});

// u(q) = psi'_q(1) + psi''_q(1) and its sign-change point p0 in (3, 4.5).
double u_of_q(double q, const EvalConfig& cfg = {});
RootResult find_p0(const EvalConfig& cfg = {});

// w(q) = psi_q(1) - psi_q(1)^2 + psi'_q(1) and its sign-change point in
// (4, 10).  w >= 0 is the J-membership criterion.
double w_of_q(double q, const EvalConfig& cfg = {});
RootResult find_J_boundary(const EvalConfig& cfg = {});

// q0 = largest root of q^3 - 2q^2 + q - 1, in closed form (Cardano).
double q0_closed_form();

Constants compute_constants(const EvalConfig& cfg = {});

}  // namespace qtk
