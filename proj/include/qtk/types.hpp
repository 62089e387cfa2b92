#pragma once

#include <stdexcept>
#include <string>

namespace qtk {

enum class errc {
  non_positive_argument,
  tail_bound_unmet,
  overflow,
  unsupported_order,
  invalid_bracket,
  max_iterations,
  not_applicable,
  pole_proximity,
  missing_parameter,
  ratio_not_contracting,
  domain_violation,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Evaluation branch for the deformation parameter.  Super-one arguments are
// always reduced to 1/q; the near-one band falls back to the classical limit
// functions (direct series there would need ~1e9 terms).
enum class Branch { SubOne, NearOne, SuperOne };

struct EvalConfig {
  double tol_abs = 1e-14;        // certified series-truncation target
  long long max_terms = 10'000'000;
  double near_one_delta = 1e-6;  // half-width of the classical fallback band

  bool operator==(const EvalConfig&) const = default;
};

struct QPoint {
  double q = 0.0;
  Branch branch = Branch::SubOne;

  // Validates q > 0 and assigns the branch from cfg.near_one_delta.
  static QPoint make(double q, const EvalConfig& cfg = {});
};

struct Evaluation {
  double value = 0.0;
  double tail_bound = 0.0;  // certified bound on the truncation error
  long long terms_used = 0;
};

}  // namespace qtk
