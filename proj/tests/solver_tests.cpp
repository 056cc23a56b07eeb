#include <cmath>

#include "test_support.hpp"

using namespace radial;

TEST_CASE("step_size: frozen values for each rule") {
  // Square-summable: alpha = -z * beta0 / (i + 1).
  StepPolicy sq = SquareSummable::harmonic(1.0);
  CHECK(step_size(sq, StepState{0, -1.0, 3.0}) == 1.0);
  CHECK(step_size(sq, StepState{3, -2.0, 3.0}) == 0.5);

  // Epsilon-target: alpha = eps / (2 ||zeta||^2).
  StepPolicy et = EpsilonTarget{0.1};
  CHECK(step_size(et, StepState{7, -1.0, 2.0}) == Catch::Approx(0.0125).margin(1e-18));

  // Known-optimum: alpha = ((z - f*) / (0 - f*)) / ||zeta||^2.
  StepPolicy ko = KnownOptimum{-3.0};
  CHECK(step_size(ko, StepState{0, -1.0, 1.0}) == Catch::Approx(2.0 / 3.0).margin(1e-15));
  // Level at the optimum: the rule reports a zero step, the solver's stop signal.
  CHECK(step_size(ko, StepState{0, -3.0, 1.0}) == 0.0);

  // Custom: whatever the hook returns, validated positive.
  StepPolicy cu = CustomStep{[](const StepState& s) { return 0.5 * s.subgrad_norm; }};
  CHECK(step_size(cu, StepState{0, -1.0, 4.0}) == 2.0);
}

TEST_CASE("step_size: contract violations throw") {
  StepPolicy sq = SquareSummable::harmonic(1.0);
  CHECK_THROWS_AS(step_size(sq, StepState{0, -1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(step_size(sq, StepState{0, 1.0, 1.0}), std::invalid_argument);
  StepPolicy bad_beta = SquareSummable{[](std::size_t) { return -1.0; }};
  CHECK_THROWS_AS(step_size(bad_beta, StepState{0, -1.0, 1.0}), std::invalid_argument);
  StepPolicy bad_eps = EpsilonTarget{0.0};
  CHECK_THROWS_AS(step_size(bad_eps, StepState{0, -1.0, 1.0}), std::invalid_argument);
  StepPolicy bad_opt = KnownOptimum{1.0};
  CHECK_THROWS_AS(step_size(bad_opt, StepState{0, -1.0, 1.0}), std::invalid_argument);
  StepPolicy bad_custom = CustomStep{[](const StepState&) { return 0.0; }};
  CHECK_THROWS_AS(step_size(bad_custom, StepState{0, -1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SquareSummable::harmonic(0.0), std::invalid_argument);
}

TEST_CASE("relative_accuracy: frozen values") {
  CHECK(relative_accuracy(-3.0, -3.0) == 0.0);
  CHECK(relative_accuracy(0.0, -2.0) == 1.0);
  CHECK(relative_accuracy(-2.7, -3.0) == Catch::Approx(0.1).margin(1e-15));
  CHECK_THROWS_AS(relative_accuracy(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(relative_accuracy(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("radial run with max_iters = 0 emits exactly the starting record") {
  SolverConfig cfg;
  cfg.max_iters = 0;
  for (const ProblemInstance& p : {ts::ball2d(), ts::lp1d(), ts::pw_abs()}) {
    RunTrace trace = radial_subgradient_run(p, SquareSummable::harmonic(), cfg);
    CHECK(trace.status == RunStatus::MaxIters);
    REQUIRE(trace.records.size() == 1);
    const IterateRecord& rec = trace.records.front();
    CHECK(rec.iter == 0);
    CHECK(rec.x == Point(p.dimension, 0.0));
    CHECK(rec.z == evaluate(p, rec.x).finite());
    CHECK(rec.f_x == rec.z);
    CHECK_FALSE(rec.alpha.has_value());
    CHECK_FALSE(rec.subgrad_norm.has_value());
    CHECK_FALSE(rec.lemma34_slack.has_value());
    CHECK(std::abs(rec.gamma_residual) <= 2e-10);
  }
}

TEST_CASE("baseline runs with max_iters = 0 emit exactly one record") {
  SolverConfig cfg;
  cfg.max_iters = 0;
  ProblemInstance ball = ts::ball2d();
  RunTrace a = renegar_a_run(ball, 0.1, cfg);
  CHECK(a.status == RunStatus::MaxIters);
  CHECK(a.records.size() == 1);
  RunTrace b = renegar_b_run(ball, -1.0, cfg);
  CHECK(b.status == RunStatus::MaxIters);
  CHECK(b.records.size() == 1);
  // At the origin gamma_{f*} = f*/f(0) = 1/sqrt(0.75), so variant B starts
  // with residual 2/sqrt(3) - 1.
  CHECK(b.records.front().gamma_residual ==
        Catch::Approx(2.0 / std::sqrt(3.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("known-optimum run converges fast on the ball") {
  SolverConfig cfg;
  cfg.max_iters = 100;
  cfg.target_epsilon = 0.1;
  ProblemInstance ball = ts::ball2d();
  RunTrace trace = radial_subgradient_run(ball, KnownOptimum{-1.0}, cfg);
  CHECK(trace.status == RunStatus::TargetReached);
  REQUIRE_FALSE(trace.records.empty());
  CHECK(trace.records.back().iter <= 100);
  CHECK(relative_accuracy(trace.best_value, -1.0) <= 0.1);
  // Every iterate obeys the sandwich f* <= f(x_i) <= z_i < 0. (The level is
  // not monotone in general: an overshooting step can push it back up.)
  for (const IterateRecord& rec : trace.records) {
    CHECK(rec.f_x >= -1.0 - 1e-9);
    CHECK(rec.f_x <= rec.z + 1e-9);
    CHECK(rec.z < 0.0);
  }
}

TEST_CASE("square-summable run makes steady progress on every stock instance") {
  SolverConfig cfg;
  cfg.max_iters = 2000;
  for (const ProblemInstance& p : {ts::ball2d(), ts::lp1d(), ts::pw_abs(), ts::pw_skew()}) {
    RunTrace trace = radial_subgradient_run(p, SquareSummable::harmonic(), cfg);
    CHECK(trace.status == RunStatus::MaxIters);
    CHECK(trace.records.size() == 2001);
    const double f_star = *p.metadata.f_star;
    CHECK(relative_accuracy(trace.best_value, f_star) <= 1e-2);
    TraceAudit audit = audit_trace(trace, p.metadata.f_star, cfg.line_search.gamma_tol);
    CHECK(audit.total() == 0);
    CHECK(audit.max_gamma_residual <= 10.0 * cfg.line_search.gamma_tol);
    CHECK(audit.min_ordering_slack >= -kOrderingSlackTol);
    CHECK(audit.min_descent_slack >= -kDescentSlackTol);
  }
}

TEST_CASE("per-step descent inequality is recorded when the optimum is known") {
  SolverConfig cfg;
  cfg.max_iters = 500;
  ProblemInstance lp = ts::lp1d();
  RunTrace trace = radial_subgradient_run(lp, SquareSummable::harmonic(), cfg);
  REQUIRE(trace.records.size() == 501);
  CHECK_FALSE(trace.records.front().lemma34_slack.has_value());
  std::size_t with_slack = 0;
  for (std::size_t i = 1; i < trace.records.size(); ++i)
    if (trace.records[i].lemma34_slack) {
      ++with_slack;
      CHECK(*trace.records[i].lemma34_slack >= -kDescentSlackTol);
    }
  CHECK(with_slack == 500);
}

TEST_CASE("rel_accuracy and lemma34_slack stay absent without metadata") {
  ProblemInstance lp = ts::lp1d();
  lp.metadata = ProblemMetadata{};  // strip the ground truth
  SolverConfig cfg;
  cfg.max_iters = 5;
  RunTrace trace = radial_subgradient_run(lp, SquareSummable::harmonic(0.1), cfg);
  REQUIRE(trace.records.size() == 6);
  for (const IterateRecord& rec : trace.records) {
    CHECK_FALSE(rec.rel_accuracy.has_value());
    CHECK_FALSE(rec.lemma34_slack.has_value());
  }
}

TEST_CASE("unbounded instance is detected within a few iterations") {
  ProblemInstance lp = ts::lp_unbounded();
  SolverConfig cfg;
  cfg.max_iters = 10;
  RunTrace trace = radial_subgradient_run(lp, SquareSummable::harmonic(), cfg);
  CHECK(trace.status == RunStatus::UnboundedDetected);
  REQUIRE(trace.unbounded_ray.has_value());
  // The certified ray points toward decreasing objective: f(t * ray) -> -inf.
  const Point& ray = *trace.unbounded_ray;
  CHECK(evaluate(lp, scaled(ray, 1000.0 / norm(ray))).finite() <
        evaluate(lp, scaled(ray, 1.0 / norm(ray))).finite());
}

TEST_CASE("stationary start: the center ball stops immediately") {
  // Center at the origin: x = 0 already minimizes, the subgradient is zero.
  ProblemInstance ball = make_ball_sqrt({Point{0.0, 0.0}});
  SolverConfig cfg;
  cfg.max_iters = 50;
  RunTrace trace = radial_subgradient_run(ball, SquareSummable::harmonic(), cfg);
  CHECK(trace.status == RunStatus::TargetReached);
  CHECK(trace.records.size() == 1);
  CHECK(trace.best_value == -1.0);
}

TEST_CASE("numerical stall is reported when steps underflow") {
  ProblemInstance ball = ts::ball2d();
  // First step moves to an O(1) iterate; afterwards the step size is far
  // below one ulp of the coordinates, so x - alpha * zeta == x exactly.
  StepPolicy tiny = CustomStep{[](const StepState& s) {
    return s.iter == 0 ? 0.3 : 1e-25;
  }};
  SolverConfig cfg;
  cfg.max_iters = 50;
  RunTrace trace = radial_subgradient_run(ball, tiny, cfg);
  CHECK(trace.status == RunStatus::NumericalStall);
  CHECK(trace.records.size() >= 2);
}

TEST_CASE("runs reject instances that are not canonical") {
  // f(0) = +1 > 0: not canonicalized.
  ProblemInstance bad;
  bad.dimension = 1;
  bad.value_oracle = [](const Point& x) -> ExtendedValue { return x[0] + 1.0; };
  bad.normal_oracle = [](const Point&, double) { return EpigraphNormal{Point{1.0}, -1.0}; };
  SolverConfig cfg;
  CHECK_THROWS_AS(radial_subgradient_run(bad, SquareSummable::harmonic(), cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(renegar_a_run(bad, 0.1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(renegar_b_run(bad, -1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(renegar_a_run(ts::ball2d(), 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(renegar_b_run(ts::ball2d(), 1.0, cfg), std::invalid_argument);
}

TEST_CASE("renegar A reaches the target accuracy on the ball") {
  SolverConfig cfg;
  cfg.max_iters = 5000;
  cfg.target_epsilon = 0.1;
  RunTrace trace = renegar_a_run(ts::ball2d(), 0.1, cfg);
  CHECK(trace.status == RunStatus::TargetReached);
  CHECK(relative_accuracy(trace.best_value, -1.0) <= 0.1);
  // Reported objective values come from the scaled points, so they are
  // feasible values above f*.
  for (const IterateRecord& rec : trace.records) {
    CHECK(rec.f_x >= -1.0 - 1e-9);
    CHECK(rec.f_x < 0.0);
  }
}

TEST_CASE("renegar B reaches the target accuracy on the ball") {
  SolverConfig cfg;
  cfg.max_iters = 5000;
  cfg.target_epsilon = 0.1;
  RunTrace trace = renegar_b_run(ts::ball2d(), -1.0, cfg);
  CHECK(trace.status == RunStatus::TargetReached);
  CHECK(relative_accuracy(trace.best_value, -1.0) <= 0.1);
  // Variant B never rescales: the level stays pinned at f*.
  for (const IterateRecord& rec : trace.records) CHECK(rec.z == -1.0);
}

TEST_CASE("renegar A detects unboundedness") {
  SolverConfig cfg;
  cfg.max_iters = 100;
  RunTrace trace = renegar_a_run(ts::lp_unbounded(), 2.0, cfg);
  CHECK(trace.status == RunStatus::UnboundedDetected);
  CHECK(trace.unbounded_ray.has_value());
}

TEST_CASE("audit flags traces that violate the invariants") {
  // A fabricated trace with a broken ordering and a big gamma residual.
  RunTrace trace;
  IterateRecord bad;
  bad.iter = 0;
  bad.x = Point{0.0};
  bad.z = -1.0;
  bad.f_x = -0.5;  // above the level: breaks f(x) <= z
  bad.gamma_residual = 1e-3;
  bad.lemma34_slack = -1.0;
  trace.records.push_back(bad);
  TraceAudit audit = audit_trace(trace, std::nullopt, 1e-10);
  CHECK(audit.gamma_residual_violations == 1);
  CHECK(audit.ordering_violations == 1);
  CHECK(audit.descent_slack_violations == 1);
  CHECK(audit.total() == 3);
}
