#include <doctest.h>

#include <cmath>
#include <limits>

#include "qtk/qcore.hpp"

using namespace qtk;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

}  // namespace

TEST_CASE("classical psi at unit argument matches the zeta anchors") {
  CHECK(rel_err(classical_psi(1.0, 0), -0.57721566490153286061) < 1e-13);
  CHECK(rel_err(classical_psi(1.0, 1), 1.64493406684822643647) < 1e-13);
  CHECK(rel_err(classical_psi(1.0, 2), -2.40411380631918857080) < 1e-13);
  CHECK(rel_err(classical_psi(1.0, 3), 6.49393940226682914909) < 1e-13);
}

TEST_CASE("classical psi interior and extreme arguments") {
  CHECK(rel_err(classical_psi(3.7, 0), 1.1671535393615113859) < 1e-13);
  CHECK(rel_err(classical_psi(3.7, 1), 0.3100378576700383191) < 1e-13);
  CHECK(rel_err(classical_psi(3.7, 2), -0.095395308728554043835) < 1e-13);
  CHECK(rel_err(classical_psi(3.7, 3), 0.05827921795656362354) < 1e-13);
  // small argument: the recurrence does the heavy lifting
  CHECK(std::fabs(classical_psi(0.03, 0) - (-33.862254420618763835)) < 1e-12);
  CHECK(std::fabs(classical_psi(0.03, 3) / 7407413.2065912646715 - 1.0) < 1e-13);
  // large argument: asymptotic series only
  CHECK(rel_err(classical_psi(11.25, 0), 2.3752657662964800669) < 1e-13);
  CHECK(std::fabs(classical_psi(25.5, 2) - (-0.0015993605962783072858)) < 1e-15);
}

TEST_CASE("classical psi rejects bad input") {
  CHECK_THROWS_AS(classical_psi(0.0, 0), error);
  CHECK_THROWS_AS(classical_psi(-1.0, 1), error);
  CHECK_THROWS_AS(classical_psi(1.0, 4), error);
  try {
    classical_psi(1.0, 4);
  } catch (const error& e) {
    CHECK(e.code() == errc::unsupported_order);
  }
}

TEST_CASE("QPoint branch assignment") {
  EvalConfig cfg;
  CHECK(QPoint::make(0.5, cfg).branch == Branch::SubOne);
  CHECK(QPoint::make(2.0, cfg).branch == Branch::SuperOne);
  CHECK(QPoint::make(1.0, cfg).branch == Branch::NearOne);
  CHECK(QPoint::make(1.0 + 0.5e-6, cfg).branch == Branch::NearOne);
  CHECK(QPoint::make(1.0 - 0.5e-6, cfg).branch == Branch::NearOne);
  CHECK(QPoint::make(1.0 + 2e-6, cfg).branch == Branch::SuperOne);
  CHECK_THROWS_AS(QPoint::make(0.0, cfg), error);
  CHECK_THROWS_AS(QPoint::make(-1.0, cfg), error);
}

TEST_CASE("gamma_q integer anchors 1/(factorial-like products)") {
  EvalConfig cfg;
  auto qh = QPoint::make(0.5, cfg);
  auto q2 = QPoint::make(2.0, cfg);

  CHECK(gamma_q(1.0, qh, cfg).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_q(2.0, qh, cfg).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_q(1.0, q2, cfg).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_q(2.0, q2, cfg).value == doctest::Approx(1.0).epsilon(1e-14));
  // [3]_q = 1 + q at x = 3
  CHECK(gamma_q(3.0, qh, cfg).value == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(gamma_q(3.0, q2, cfg).value == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("gamma_q non-integer anchors") {
  EvalConfig cfg;
  CHECK(rel_err(gamma_q(0.5, QPoint::make(0.5, cfg), cfg).value,
                1.5720327257863238828) < 1e-13);
  CHECK(rel_err(gamma_q(2.5, QPoint::make(0.25, cfg), cfg).value,
                1.10576316760549235201) < 1e-13);
  CHECK(rel_err(log_gamma_q(0.5, QPoint::make(2.0, cfg), cfg).value,
                0.712299704430535668739) < 1e-13);
  CHECK(rel_err(log_gamma_q(3.25, QPoint::make(9.0, cfg), cfg).value,
                3.22400046344973153824) < 1e-13);
}

TEST_CASE("gamma_q certified tail bounds actually bound") {
  EvalConfig cfg;
  for (double q : {0.1, 0.5, 0.9}) {
    for (double x : {0.3, 1.7, 4.2}) {
      auto ev = log_gamma_q(x, QPoint::make(q, cfg), cfg);
      CHECK(ev.tail_bound >= 0.0);
      CHECK(ev.tail_bound < 1e-12);
      CHECK(ev.terms_used > 0);
    }
  }
}

TEST_CASE("gamma_q overflow reporting for huge super-one values") {
  EvalConfig cfg;
  auto q10 = QPoint::make(10.0, cfg);
  // log Gamma_10(30) = 937.788... > 709, exp overflows
  CHECK(rel_err(log_gamma_q(30.0, q10, cfg).value, 937.788480241652649317) < 1e-13);
  CHECK_THROWS_AS(gamma_q(30.0, q10, cfg), error);
  try {
    gamma_q(30.0, q10, cfg);
  } catch (const error& e) {
    CHECK(e.code() == errc::overflow);
  }
}

TEST_CASE("gamma_q and psi_q reject non-positive x") {
  EvalConfig cfg;
  auto q = QPoint::make(0.5, cfg);
  CHECK_THROWS_AS(gamma_q(0.0, q, cfg), error);
  CHECK_THROWS_AS(log_gamma_q(-2.0, q, cfg), error);
  CHECK_THROWS_AS(psi_q(0.0, q, cfg), error);
  CHECK_THROWS_AS(psi_q_deriv(-1.0, q, 1, cfg), error);
  try {
    psi_q(0.0, q, cfg);
  } catch (const error& e) {
    CHECK(e.code() == errc::non_positive_argument);
  }
}

TEST_CASE("psi_q_deriv supports only orders 1..3") {
  EvalConfig cfg;
  auto q = QPoint::make(0.5, cfg);
  CHECK_THROWS_AS(psi_q_deriv(2.0, q, 0, cfg), error);
  CHECK_THROWS_AS(psi_q_deriv(2.0, q, 4, cfg), error);
  try {
    psi_q_deriv(2.0, q, 4, cfg);
  } catch (const error& e) {
    CHECK(e.code() == errc::unsupported_order);
  }
}

TEST_CASE("psi_q sub-one anchors, x below and above 1") {
  EvalConfig cfg;
  auto qh = QPoint::make(0.5, cfg);
  // x < 1 exercises the shifted series
  CHECK(rel_err(psi_q(0.35, qh, cfg).value, -2.5936698714251223516) < 1e-13);
  CHECK(rel_err(psi_q_deriv(0.35, qh, 1, cfg).value, 8.8878687774975145018) < 1e-13);
  CHECK(rel_err(psi_q_deriv(0.35, qh, 2, cfg).value, -47.693693309593502162) < 1e-13);
  CHECK(rel_err(psi_q_deriv(0.35, qh, 3, cfg).value, 401.91840566869470507) < 1e-13);
  // x >= 1 exercises the direct power series
  CHECK(rel_err(psi_q(1.0, qh, cfg).value, -0.42052903435604577978) < 1e-13);
  CHECK(rel_err(psi_q_deriv(0.6, QPoint::make(0.9, cfg), 1, cfg).value,
                3.5836219241671848716) < 1e-13);
  // tiny x, q near 1: dominated by the 1/(x log q)-like blowup
  CHECK(rel_err(psi_q(0.001, QPoint::make(0.99, cfg), cfg).value,
                -1000.5680427165545813) < 1e-12);
}

TEST_CASE("psi_q super-one anchors") {
  EvalConfig cfg;
  auto q9 = QPoint::make(9.0, cfg);
  CHECK(rel_err(psi_q(2.5, q9, cfg).value, 2.3047974476963174866) < 1e-13);
  CHECK(rel_err(psi_q_deriv(2.5, q9, 1, cfg).value, 2.21974206261619895295) < 1e-13);
  CHECK(rel_err(psi_q_deriv(2.5, q9, 2, cfg).value, -0.0498442280618961353991) < 1e-12);
  CHECK(rel_err(psi_q_deriv(2.5, q9, 3, cfg).value, 0.111147166728749358118) < 1e-12);
  CHECK(rel_err(psi_q(2.5, QPoint::make(4.0, cfg), cfg).value,
                1.61472576407690529155) < 1e-13);
  CHECK(rel_err(psi_q(1.0, QPoint::make(4.0, cfg), cfg).value,
                -0.989230455736933884135) < 1e-13);
}

TEST_CASE("psi_q reflection-style constant shifts between q and 1/q") {
  EvalConfig cfg;
  const double log2 = std::log(2.0), log4 = std::log(4.0);
  auto qh = QPoint::make(0.5, cfg);
  auto q4 = QPoint::make(4.0, cfg);
  auto qq = QPoint::make(0.25, cfg);

  // psi_q(x+1) - psi_q(x) = -log(q) q^x / (1 - q^x), both sides of x = 1
  for (double x : {0.4, 1.3, 2.6}) {
    double lhs = psi_q(x + 1.0, qh, cfg).value - psi_q(x, qh, cfg).value;
    double rhs = -std::log(0.5) * std::pow(0.5, x) / (1.0 - std::pow(0.5, x));
    CHECK(std::fabs(lhs - rhs) < 1e-13);
  }
  CHECK(std::fabs(psi_q(2.0, qh, cfg).value - psi_q(1.0, qh, cfg).value - log2) < 1e-13);
  // psi_q vs psi_{1/q}: (x - 3/2) log q offset
  CHECK(std::fabs(psi_q(3.0, q4, cfg).value - psi_q(3.0, qq, cfg).value - 1.5 * log4) <
        1e-12);
  CHECK(std::fabs(psi_q_deriv(2.0, q4, 1, cfg).value -
                  psi_q_deriv(2.0, qq, 1, cfg).value - log4) < 1e-12);
  CHECK(std::fabs(psi_q_deriv(2.0, q4, 2, cfg).value -
                  psi_q_deriv(2.0, qq, 2, cfg).value) < 1e-12);
}

TEST_CASE("log-derivative identity x psi'' + 2 psi' stays symmetric under q -> 1/q") {
  // x^3 (psi''_q(x) + derivative structure): spot identity at a few q > 1
  EvalConfig cfg;
  for (double q : {2.0, 4.0, 9.0}) {
    auto qp = QPoint::make(q, cfg);
    auto qi = QPoint::make(1.0 / q, cfg);
    for (double x : {0.7, 1.9}) {
      double d2 = psi_q_deriv(x, qp, 2, cfg).value;
      double d2i = psi_q_deriv(x, qi, 2, cfg).value;
      CHECK(std::fabs(d2 - d2i) < 1e-11 * std::max(1.0, std::fabs(d2)));
    }
  }
}

TEST_CASE("near-one band falls back to the classical functions") {
  EvalConfig cfg;
  auto q1 = QPoint::make(1.0, cfg);
  CHECK(q1.branch == Branch::NearOne);
  auto ev = psi_q(3.7, q1, cfg);
  CHECK(std::fabs(ev.value - 1.1671535393615113859) < 1e-13);
  CHECK(ev.terms_used == 0);
  CHECK(ev.tail_bound <= 8 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, std::fabs(ev.value)));
  auto g = gamma_q(3.7, q1, cfg);
  CHECK(std::fabs(g.value - std::exp(std::lgamma(3.7))) < 1e-13 * g.value);
}

TEST_CASE("psi values converge to classical ones as q -> 1") {
  EvalConfig cfg;
  const double target = classical_psi(2.3, 0);
  double prev = 1e300;
  for (double q : {0.9, 0.99, 0.999}) {
    double v = psi_q(2.3, QPoint::make(q, cfg), cfg).value;
    double gap = std::fabs(v - target);
    CHECK(gap < prev);
    prev = gap;
  }
  // the gap at x = 2.3 contracts like 0.40 * (1 - q)
  CHECK(prev < 5e-4);
}

TEST_CASE("tail certification refuses quietly impossible budgets") {
  // q extremely close to 1 but still outside the near-one band: the geometric
  // factor is so weak the term cap trips before tolerance is met.
  EvalConfig cfg;
  cfg.max_terms = 2000;
  auto q = QPoint::make(1.0 - 2e-6, cfg);
  CHECK(q.branch == Branch::SubOne);
  CHECK_THROWS_AS(psi_q(1.0, q, cfg), error);
  try {
    psi_q(1.0, q, cfg);
  } catch (const error& e) {
    CHECK(e.code() == errc::tail_bound_unmet);
  }
}

TEST_CASE("reported Evaluation tail bounds cover a tighter recomputation") {
  EvalConfig loose;
  loose.tol_abs = 1e-10;
  EvalConfig tight;
  tight.tol_abs = 1e-15;
  for (double q : {0.3, 0.9, 3.0, 9.0}) {
    for (double x : {0.45, 1.0, 2.7, 20.0}) {
      auto a = psi_q(x, QPoint::make(q, loose), loose);
      auto b = psi_q(x, QPoint::make(q, tight), tight);
      CHECK(std::fabs(a.value - b.value) <= a.tail_bound + 1e-12);
    }
  }
}
