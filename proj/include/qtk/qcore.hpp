#pragma once

#include "qtk/types.hpp"

namespace qtk {

// Gamma_q(x).  Sub-one q: exp of the certified log-product; super-one q:
// reduction Gamma_q(x) = q^{(x-1)(x-2)/2} Gamma_{1/q}(x); near-one: classical
// Gamma.  tail_bound is the log-scale bound pushed through exp, i.e. an
// absolute bound on the returned value (so it scales with |value|).
Evaluation gamma_q(double x, const QPoint& q, const EvalConfig& cfg = {});

// log Gamma_q(x), summing logs of product factors (never exponentiates).
Evaluation log_gamma_q(double x, const QPoint& q, const EvalConfig& cfg = {});

// q-digamma psi_q(x) = Gamma_q'(x)/Gamma_q(x).
Evaluation psi_q(double x, const QPoint& q, const EvalConfig& cfg = {});

// m-th derivative of psi_q, m in {1,2,3}.  Super-one reduction:
// psi'_q = log q + psi'_{1/q};  psi_q^{(m)} = psi_{1/q}^{(m)} for m >= 2.
Evaluation psi_q_deriv(double x, const QPoint& q, int m, const EvalConfig& cfg = {});

// Classical psi^{(m)}(x), m in {0,1,2,3}, >= 12 significant digits.
// Argument-shift recurrence to x >= 12, then the Bernoulli asymptotic series.
double classical_psi(double x, int m);

}  // namespace qtk
