#pragma once

#include <functional>

#include "qtk/types.hpp"

namespace qtk {

struct OracleConfig {
  double fd_step = 1e-5;    // first derivative, central 3-point
  double fd_step_2 = 5e-3;  // second derivative, central 5-point
  // the 7-point stencil error is ~0.06 h^4 f^(7); 5e-3 keeps psi-family
  // residuals under fd_tolerance down to x ~ 0.5 without hitting the
  // rounding floor (~1e-14 / (8 h^3))
  double fd_step_3 = 5e-3;  // third derivative, central 7-point
  double fd_tolerance = 1e-6;
};

// Central finite-difference derivative of order m in {1,2,3}.  Step widths
// are per-order (the higher stencils need wide steps to beat cancellation).
double fd_derivative(const std::function<double(double)>& f, double x, int m,
                     const OracleConfig& cfg = {});

struct ProductResult {
  double value = 0.0;       // log Gamma_q(x)
  double tail_bound = 0.0;  // bound on the dropped log-factors
  long long terms = 0;
};

// log Gamma_q(x) from the defining partial product with N explicit factors.
// Shares no series code with log_gamma_q; used to cross-check it.
ProductResult product_gamma_oracle(double x, const QPoint& q, long long n_factors);

// Bound on the psi-series remainder after the first n_terms terms (q < 1,
// order m).  Throws errc::ratio_not_contracting when the term-ratio bound
// reaches 1 and no geometric majorant exists.
double series_tail_bound(double q, double x, int m, long long n_terms);

// psi_q(x) for q > 1 summed directly in the q > 1 series form, without the
// 1/q reduction.  Independent check of the reduction path.
double psi_super_direct(double x, double q, const EvalConfig& cfg = {});

}  // namespace qtk
