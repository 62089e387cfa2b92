#include <doctest.h>

#include <cmath>

#include "qtk/qcore.hpp"
#include "qtk/qroots.hpp"

using namespace qtk;

TEST_CASE("solve_bracketed on textbook roots") {
  auto sq = [](double t) { return t * t - 2.0; };
  auto r = solve_bracketed(sq, make_bracket(sq, 1.0, 2.0));
  CHECK(std::fabs(r.root - std::sqrt(2.0)) < 1e-12);
  CHECK(std::fabs(r.residual) < 1e-10);
  CHECK(r.bracket_width < 1e-11);

  auto lin = [](double t) { return 3.0 * t; };
  auto r0 = solve_bracketed(lin, make_bracket(lin, -1.0, 2.0));
  CHECK(std::fabs(r0.root) < 1e-12);

  // plastic number: real root of t^3 = t + 1
  auto pl = [](double t) { return t * t * t - t - 1.0; };
  auto rp = solve_bracketed(pl, make_bracket(pl, 1.0, 2.0));
  CHECK(std::fabs(rp.root - 1.32471795724474602596) < 1e-12);
}

TEST_CASE("make_bracket requires a sign change") {
  auto sq = [](double t) { return t * t - 2.0; };
  CHECK_THROWS_AS(make_bracket(sq, 2.0, 3.0), error);
  try {
    make_bracket(sq, 2.0, 3.0);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_bracket);
  }
}

TEST_CASE("solve_bracketed iteration cap") {
  // an impossible tolerance forces the iteration guard
  auto f = [](double t) { return std::cos(t) - t; };
  CHECK_THROWS_AS(solve_bracketed(f, make_bracket(f, 0.0, 1.0), 0.0), error);
  try {
    solve_bracketed(f, make_bracket(f, 0.0, 1.0), 0.0);
  } catch (const error& e) {
    CHECK(e.code() == errc::max_iterations);
  }
}

TEST_CASE("find_x_q frozen roots across both q regimes") {
  EvalConfig cfg;
  struct Row {
    double q, root;
  };
  const Row rows[] = {
      {0.25, 1.4282817875021777596},  {0.5, 1.44636271560981686698},
      {1.5, 1.46913823133156107629},  {2.0, 1.47382317069861892514},
      {4.0, 1.4830244369812633913},   {9.0, 1.49044961045099364225},
      {10.0, 1.49118601209824660719},
  };
  for (const auto& row : rows) {
    auto r = find_x_q(QPoint::make(row.q, cfg), cfg);
    CHECK(std::fabs(r.root - row.root) < 1e-10);
    CHECK(r.root > 1.0);
    CHECK(r.root < 1.5);
    // residual really is a root of psi_q
    CHECK(std::fabs(psi_q(r.root, QPoint::make(row.q, cfg), cfg).value) < 1e-10);
  }
  // q = 1 routes through the classical digamma
  auto r1 = find_x_q(QPoint::make(1.0, cfg), cfg);
  CHECK(std::fabs(r1.root - 1.46163214496836234126) < 1e-9);
}

TEST_CASE("find_y_q exists only past the j-boundary") {
  EvalConfig cfg;
  auto r10 = find_y_q(QPoint::make(10.0, cfg), cfg);
  CHECK(std::fabs(r10.root - 1.00710096118714689224) < 1e-10);

  auto r95 = find_y_q(QPoint::make(9.5, cfg), cfg);
  CHECK(r95.root > 1.0);
  CHECK(r95.root < find_x_q(QPoint::make(9.5, cfg), cfg).root);

  for (double q : {2.0, 9.0}) {
    CHECK_THROWS_AS(find_y_q(QPoint::make(q, cfg), cfg), error);
    try {
      find_y_q(QPoint::make(q, cfg), cfg);
    } catch (const error& e) {
      CHECK(e.code() == errc::not_applicable);
    }
  }
}

TEST_CASE("find_z_q exists only from p0 upward") {
  EvalConfig cfg;
  auto r4 = find_z_q(QPoint::make(4.0, cfg), cfg);
  CHECK(std::fabs(r4.root - 8.3293224315893880395) < 1e-9);
  auto r10 = find_z_q(QPoint::make(10.0, cfg), cfg);
  CHECK(std::fabs(r10.root - 4.01848958398137509483) < 1e-9);

  // at the root, U(z) = psi_q(z) + psi_q(1/z) = 0 and psi_q(z) alone is positive
  for (double q : {4.0, 10.0}) {
    auto qp = QPoint::make(q, cfg);
    auto r = find_z_q(qp, cfg);
    double u = psi_q(r.root, qp, cfg).value + psi_q(1.0 / r.root, qp, cfg).value;
    CHECK(std::fabs(u) < 1e-9);
    CHECK(psi_q(r.root, qp, cfg).value > 0.0);
    CHECK(r.root > find_x_q(qp, cfg).root);
  }

  for (double q : {2.0, 3.0}) {
    CHECK_THROWS_AS(find_z_q(QPoint::make(q, cfg), cfg), error);
    try {
      find_z_q(QPoint::make(q, cfg), cfg);
    } catch (const error& e) {
      CHECK(e.code() == errc::not_applicable);
    }
  }
}

TEST_CASE("u and w scalar diagnostics") {
  EvalConfig cfg;
  CHECK(std::fabs(u_of_q(2.0, cfg) - (-0.35271044336218515652)) < 1e-12);
  CHECK(std::fabs(u_of_q(3.0, cfg) - (-0.0600265903821817)) < 1e-12);
  CHECK(std::fabs(u_of_q(3.5, cfg) - 0.06164595742165942614) < 1e-12);
  CHECK(std::fabs(u_of_q(10.0, cfg) - 1.03435201560069472756) < 1e-12);
  CHECK(std::fabs(w_of_q(0.5, cfg) - 0.72100564905570472955) < 1e-12);
  CHECK(std::fabs(w_of_q(4.0, cfg) - 0.450349399416505692846) < 1e-12);
  CHECK(std::fabs(w_of_q(10.0, cfg) - (-0.0729622451494763469313)) < 1e-12);
}

TEST_CASE("find_p0 frozen and tolerance-stable") {
  EvalConfig cfg;
  auto r = find_p0(cfg);
  CHECK(std::fabs(r.root - 3.239950170805115080759) < 1e-9);
  CHECK(r.root > 3.0);
  CHECK(r.root < 4.5);
  CHECK(std::fabs(u_of_q(r.root, cfg)) < 1e-10);

  EvalConfig tighter = cfg;
  tighter.tol_abs = cfg.tol_abs / 2;
  auto r2 = find_p0(tighter);
  CHECK(std::fabs(r.root - r2.root) < 1e-10);
}

TEST_CASE("find_J_boundary frozen") {
  EvalConfig cfg;
  auto r = find_J_boundary(cfg);
  CHECK(std::fabs(r.root - 9.04701287717304102281) < 1e-9);
  CHECK(w_of_q(9.0, cfg) > 0.0);
  CHECK(w_of_q(9.1, cfg) < 0.0);
}

TEST_CASE("q0 closed form") {
  double q0 = q0_closed_form();
  CHECK(std::fabs(q0 - 1.75487766624669276005) < 1e-14);
  // it really solves q^3 - 2q^2 + q - 1 = 0
  CHECK(std::fabs(((q0 - 2.0) * q0 + 1.0) * q0 - 1.0) < 1e-12);
  // and its square root is the plastic number
  CHECK(std::fabs(std::sqrt(q0) - 1.32471795724474602596) < 1e-14);
}

TEST_CASE("compute_constants bundles the four landmarks") {
  EvalConfig cfg;
  auto c = compute_constants(cfg);
  CHECK(std::fabs(c.p0 - 3.239950170805115080759) < 1e-9);
  CHECK(std::fabs(c.q0 - 1.75487766624669276005) < 1e-12);
  CHECK(std::fabs(c.j_boundary - 9.04701287717304102281) < 1e-9);
  CHECK(std::fabs(c.x1_classical - 1.46163214496836234126) < 1e-9);
}

TEST_CASE("special point ordering y < x_q < z where all exist") {
  EvalConfig cfg;
  // q = 10: past the j-boundary and past p0, so all three points exist
  auto q = QPoint::make(10.0, cfg);
  auto y = find_y_q(q, cfg);
  auto x = find_x_q(q, cfg);
  auto z = find_z_q(q, cfg);
  CHECK(y.root < x.root);
  CHECK(x.root < z.root);

  // q = 4.5: past p0 (z exists) but before the j-boundary (no y)
  auto q45 = QPoint::make(4.5, cfg);
  auto x45 = find_x_q(q45, cfg);
  auto z45 = find_z_q(q45, cfg);
  CHECK(x45.root < z45.root);
  CHECK_THROWS_AS(find_y_q(q45, cfg), error);

  // q = 2: only x_q
  auto q2 = QPoint::make(2.0, cfg);
  CHECK(find_x_q(q2, cfg).root > 1.0);
  CHECK_THROWS_AS(find_y_q(q2, cfg), error);
  CHECK_THROWS_AS(find_z_q(q2, cfg), error);
}
