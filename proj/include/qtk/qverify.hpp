#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtk/types.hpp"

namespace qtk {

enum class StatId {
  f_q,      // Gamma_q(x) Gamma_q(1/x) / (Gamma_q(x) + Gamma_q(1/x))
  g_alpha,  // f_q(x^alpha)
  G_mean,   // power mean ((Gamma_q(x)^m + Gamma_q(1/x)^m)/2)^(1/m), m real
  theta1,   // x psi_q(x) / Gamma_q(x)
  G_ratio,  // psi'_q(x) / psi_q(x)
  phi,      // x psi'_q(x) / psi_q(x)
  U_sum,    // psi_q(x) + psi_q(1/x)
  V_prod,   // psi_q(x) psi_q(1/x)
  H_harm,   // psi_q(x) psi_q(1/x) / (psi_q(x) + psi_q(1/x))
  h_lin,    // x psi'_q(x) + a psi_q(x)
  S_qk,     // psi_q^(k+2)(x) psi_q^(k)(x) - psi_q^(k+1)(x)^2
  u_of_q,   // psi'_q(1) + psi''_q(1)
  w_of_q,   // psi_q(1) - psi_q(1)^2 + psi'_q(1)
};

const char* stat_name(StatId id);
std::optional<StatId> stat_from_name(const std::string& name);

struct StatExtra {
  std::optional<double> m;
  std::optional<double> a;
  std::optional<double> alpha;
  std::optional<int> k;
};

// Evaluates one named statistic at (x, q).  Throws errc::missing_parameter
// when the statistic needs an extra (m, a, alpha, k) that is absent, and
// errc::pole_proximity when a denominator vanishes to rounding.
Evaluation eval_statistic(StatId id, double x, const QPoint& q,
                          const StatExtra& extra = {}, const EvalConfig& cfg = {});

struct Membership {
  bool member = false;
  double margin = 0.0;  // signed distance of the deciding function from 0
};

Membership membership_J(double q, const EvalConfig& cfg = {});  // w(q) >= 0
Membership membership_I(double q, const EvalConfig& cfg = {});  // u(q) >= 0

struct GridSpec {
  std::vector<double> q_set;
  double x_min = 1e-3;
  double x_max = 1e3;
  int x_count = 400;
  double exclusion_radius = 1e-4;

  static GridSpec standard(const EvalConfig& cfg = {});
  std::vector<double> x_points() const;  // log-spaced, exact endpoints

  bool operator==(const GridSpec&) const = default;
};

enum class Verdict { Pass, Fail, Vacuous };

const char* verdict_name(Verdict v);

struct PropertyReport {
  std::string id;     // "P1" .. "P24"
  std::string title;
  Verdict verdict = Verdict::Vacuous;
  double worst_margin = 0.0;     // signed; negative = violated
  double witness_q = 0.0;
  double witness_x = 0.0;
  std::string detail;            // sub-claim the worst margin came from
  long long evaluations = 0;
  long long excluded = 0;        // grid points skipped near poles/equality
  std::vector<std::string> notes;

  bool operator==(const PropertyReport&) const = default;
};

struct ControlReport {
  std::string id;
  std::string title;
  bool fired = false;            // the planted violation was detected
  double worst_margin = 0.0;
  double witness_q = 0.0;
  double witness_x = 0.0;
  long long evaluations = 0;

  bool operator==(const ControlReport&) const = default;
};

// Margins below -margin_tolerance count as violations; the band absorbs
// rounding on claims that hold with equality somewhere.
inline constexpr double margin_tolerance = 1e-9;

std::vector<std::string> property_ids();  // "P1" .. "P24"

PropertyReport verify_property(const std::string& id, const GridSpec& grid,
                               const EvalConfig& cfg = {});

std::vector<PropertyReport> verify_all(const GridSpec& grid, const EvalConfig& cfg = {},
                                       int jobs = 1);

std::vector<ControlReport> run_negative_controls(const GridSpec& grid,
                                                 const EvalConfig& cfg = {});

}  // namespace qtk
