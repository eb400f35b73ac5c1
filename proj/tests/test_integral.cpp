#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "picardo/integral.hpp"

using namespace picardo;

namespace {

FredholmProblem separable(double delta) {
  FredholmProblem p;
  p.delta = 0.6;
  p.kernel = [delta](std::span<const double> t, std::span<const double> s) { return delta * t[0] * s[0]; };
  p.forcing = [](std::span<const double> t) { return t[0]; };
  return p;
}

double sup_error(const GridFunction& u, double (*exact)(std::span<const double>)) {
  double e = 0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    e = std::max(e, std::abs(u.values[i] - exact(u.grid->node(i))));
  return e;
}

IterationConfig tight() {
  IterationConfig c;
  c.eps_step = 1e-14;
  c.eps_res = 1e-13;
  return c;
}

UrysohnProblem sine_problem(double alpha = 1.0) {
  UrysohnProblem p;
  p.tau = 10;
  p.alpha = alpha;
  p.integrand = [](std::span<const double> t, std::span<const double> s, double u) {
    return std::sin(u) * t[0] * s[0] / 10.0;
  };
  p.forcing = [](std::span<const double> t) { return t[0]; };
  return p;
}

} // namespace

TEST(ApplyFredholm, ZeroKernelReturnsForcing) {
  FredholmProblem p = separable(0.0);
  p.kernel = [](auto, auto) { return 0.0; };
  FredholmOperator T(p, QuadratureRule::gauss(8));
  auto u = GridFunction::constant(T.grid(), 3.0);
  EXPECT_EQ(T(u).values, T.forcing().values);
}

TEST(ApplyFredholm, SeparableKernelOnLinearFunction) {
  // t + 0.5 t int_0^1 s^2 ds = 7t/6.
  for (std::size_t m : {2, 5, 16}) {
    FredholmProblem p = separable(0.5);
    FredholmOperator T(p, QuadratureRule::gauss(m));
    auto u = GridFunction::sample(T.grid(), [](std::span<const double> t) { return t[0]; });
    auto tu = apply_fredholm(u, p, QuadratureRule::gauss(m));
    for (std::size_t i = 0; i < tu.values.size(); ++i)
      EXPECT_NEAR(tu.values[i], 7.0 / 6.0 * T.grid()->node(i)[0], 1e-15);
  }
}

TEST(ApplyFredholm, ExactSolutionIsFixed) {
  FredholmProblem p = separable(0.5);
  FredholmOperator T(p, QuadratureRule::gauss(16));
  auto u = GridFunction::sample(T.grid(), [](std::span<const double> t) { return 1.2 * t[0]; });
  EXPECT_LE(WeightedSup{}(T(u), u), 1e-15);
}

TEST(ApplyFredholm, IsAffine) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> d(-1, 1);
  FredholmProblem p;
  p.delta = 0.9;
  p.kernel = [](std::span<const double> t, std::span<const double> s) { return 0.8 * std::cos(3 * t[0] * s[0]); };
  p.forcing = [](std::span<const double> t) { return std::exp(t[0]); };
  FredholmOperator T(p, QuadratureRule::gauss(12));
  for (int trial = 0; trial < 50; ++trial) {
    auto u = GridFunction::sample(T.grid(), [&](auto) { return d(rng); });
    auto v = GridFunction::sample(T.grid(), [&](auto) { return d(rng); });
    const double a = d(rng), b = d(rng);
    GridFunction mix(T.grid(), std::vector<double>(u.values.size()));
    for (std::size_t i = 0; i < mix.values.size(); ++i) mix.values[i] = a * u.values[i] + b * v.values[i];
    auto lhs = T(mix), tu = T(u), tv = T(v), f = T.forcing();
    for (std::size_t i = 0; i < mix.values.size(); ++i)
      EXPECT_NEAR(lhs.values[i], a * tu.values[i] + b * tv.values[i] + (1 - a - b) * f.values[i], 1e-12);
  }
}

TEST(ApplyFredholm, RejectsForeignGridsAndNonFinite) {
  FredholmProblem p = separable(0.5);
  FredholmOperator T(p, QuadratureRule::gauss(4));
  auto other = GridFunction::constant(discretize(QuadratureRule::gauss(5), 1, {0, 1}).grid, 1.0);
  EXPECT_THROW(T(other), MismatchedDomain);
  p.kernel = [](std::span<const double> t, auto) { return 1.0 / (t[0] - t[0]); };
  EXPECT_THROW(FredholmOperator(p, QuadratureRule::gauss(4)), NonFinite);
}

TEST(SolveFredholm, SeparableClosedForm) {
  auto rep = solve_fredholm(separable(0.5), QuadratureRule::gauss(16), tight());
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(sup_error(rep.solution, [](std::span<const double> t) { return 1.2 * t[0]; }), 1e-8);
  EXPECT_TRUE(rep.hypothesis_checks.kernel_bound_ok->ok);
  EXPECT_EQ(rep.hypothesis_checks.kernel_bound_ok->worst, 0.5);
  EXPECT_TRUE(rep.hypothesis_checks.beta_ok->ok);
  ASSERT_TRUE(rep.hypothesis_checks.trace_condition);
  EXPECT_TRUE(rep.hypothesis_checks.trace_condition->ok);
}

TEST(SolveFredholm, ResidualRecheckedOutsideLoop) {
  const FredholmProblem p = separable(0.5);
  auto rep = solve_fredholm(p, QuadratureRule::gauss(16));
  ASSERT_TRUE(rep.converged);
  auto tu = apply_fredholm(rep.solution, p, QuadratureRule::gauss(16));
  EXPECT_LE(WeightedSup{}(tu, rep.solution), 1e-12);
}

TEST(SolveFredholm, ZeroForcingGivesZero) {
  FredholmProblem p = separable(0.5);
  p.forcing = [](auto) { return 0.0; };
  auto rep = solve_fredholm(p, QuadratureRule::gauss(8));
  EXPECT_TRUE(rep.converged);
  for (double x : rep.solution.values) EXPECT_EQ(x, 0.0);
}

TEST(SolveFredholm, TwoDimensionalSeparable) {
  // u = t1 t2 + 0.5 t1 t2 int int s1 s2 u, so u = t1 t2 / (1 - 0.5/9).
  FredholmProblem p;
  p.n_trunc = 2;
  p.delta = 0.6;
  p.kernel = [](std::span<const double> t, std::span<const double> s) { return 0.5 * t[0] * t[1] * s[0] * s[1]; };
  p.forcing = [](std::span<const double> t) { return t[0] * t[1]; };
  const auto q = QuadratureRule::gauss(8);
  auto rep = solve_fredholm(p, q, tight(), {false, true});
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(sup_error(rep.solution, [](std::span<const double> t) { return t[0] * t[1] / (1 - 0.5 / 9); }), 1e-12);
  ASSERT_TRUE(rep.oracle_gap);
  EXPECT_LE(*rep.oracle_gap, 1e-8);
}

TEST(SolveFredholm, HypothesisViolationNamesCondition) {
  FredholmProblem p = separable(2.0);
  p.delta = 0.5;
  try {
    solve_fredholm(p, QuadratureRule::gauss(16));
    FAIL() << "expected HypothesisViolated";
  } catch (const HypothesisViolated& e) {
    EXPECT_EQ(e.condition(), "kernel_bound_ok");
    EXPECT_EQ(e.worst(), 2.0);
  }
  auto checks = check_fredholm_hypotheses(p, *FredholmOperator(p, QuadratureRule::gauss(16)).grid());
  EXPECT_EQ(checks.kernel_bound_ok->location, "(1,1)");
}

TEST(SolveFredholm, ForceRunsAnyway) {
  FredholmProblem p = separable(0.55);
  p.delta = 0.5;
  auto rep = solve_fredholm(p, QuadratureRule::gauss(16), {}, {true, false});
  EXPECT_FALSE(rep.hypothesis_checks.kernel_bound_ok->ok);
  EXPECT_TRUE(rep.converged);
}

TEST(SolveFredholm, GammaAtMostOneFailsBetaCheck) {
  FredholmProblem p = separable(0.5);
  p.gamma = 1.0;
  EXPECT_THROW(solve_fredholm(p, QuadratureRule::gauss(4)), HypothesisViolated);
}

TEST(OracleFredholm, ZeroKernelAndClosedForm) {
  FredholmProblem p = separable(0.5);
  auto u = oracle_fredholm_dense(p, QuadratureRule::gauss(16));
  EXPECT_LE(sup_error(u, [](std::span<const double> t) { return 1.2 * t[0]; }), 1e-10);
  p.kernel = [](auto, auto) { return 0.0; };
  auto f = oracle_fredholm_dense(p, QuadratureRule::gauss(5));
  for (std::size_t i = 0; i < f.values.size(); ++i) EXPECT_EQ(f.values[i], f.grid->node(i)[0]);
}

TEST(OracleFredholm, CapAndRuleChecks) {
  FredholmProblem p = separable(0.5);
  EXPECT_THROW(oracle_fredholm_dense(p, QuadratureRule::gauss(16), 10), CapExceeded);
  EXPECT_THROW(oracle_fredholm_dense(p, QuadratureRule::monte_carlo(16, 1)), InvalidArgument);
}

TEST(OracleFredholm, SingularSystemIsReported) {
  // 1 - w K = 0 with a single node of weight 1 and K = 1.
  FredholmProblem p;
  p.delta = 0.5;
  p.kernel = [](auto, auto) { return 1.0; };
  p.forcing = [](auto) { return 1.0; };
  EXPECT_THROW(oracle_fredholm_dense(p, QuadratureRule::gauss(1)), SingularSystem);
}

TEST(SolveFredholm, AgreesWithDenseSolveOnRandomKernels) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> c(-0.45, 0.45);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = c(rng), b = c(rng), w = 4 * c(rng);
    FredholmProblem p;
    p.delta = 0.95;
    p.kernel = [=](std::span<const double> t, std::span<const double> s) { return a * std::cos(w * t[0]) + b * s[0] * t[0]; };
    p.forcing = [](std::span<const double> t) { return std::sin(3 * t[0]); };
    const auto q = QuadratureRule::gauss(20);
    auto rep = solve_fredholm(p, q, tight());
    ASSERT_TRUE(rep.converged);
    // Contraction estimate: max_i sum_j w_j |K_ij| <= |a| + |b| < 0.9.
    const double bound = 1e-13 / (1 - 0.9);
    EXPECT_LE(WeightedSup{}(rep.solution, oracle_fredholm_dense(p, q)), bound + 1e-14);
  }
}

TEST(SolveFredholm, TrapezoidAndMonteCarloRun) {
  auto r1 = solve_fredholm(separable(0.5), QuadratureRule::trapezoid(201));
  EXPECT_LE(sup_error(r1.solution, [](std::span<const double> t) { return 1.2 * t[0]; }), 1e-4);
  auto r2 = solve_fredholm(separable(0.5), QuadratureRule::monte_carlo(2000, 3));
  EXPECT_TRUE(r2.converged);
}

TEST(ApplyUrysohn, ZeroIntegrandAndConstantIntegrand) {
  UrysohnProblem p = sine_problem();
  p.integrand = [](auto, auto, double) { return 0.0; };
  UrysohnOperator Z(p, QuadratureRule::gauss(6));
  EXPECT_EQ(Z(GridFunction::constant(Z.grid(), 5.0)).values, Z.forcing().values);

  p.integrand = [](auto, auto, double u) { return std::sin(u) / 10.0; };
  p.forcing = [](auto) { return 0.0; };
  UrysohnOperator T(p, QuadratureRule::gauss(6));
  for (double x : T(GridFunction::constant(T.grid(), std::numbers::pi / 2)).values)
    EXPECT_NEAR(x, 0.1, 1e-15);
}

TEST(ApplyUrysohn, LinearIntegrandReproducesFredholmBitwise) {
  FredholmProblem f;
  f.delta = 0.9;
  auto K = [](std::span<const double> t, std::span<const double> s) { return 0.7 * std::sin(t[0] + 2 * s[0]); };
  f.kernel = K;
  f.forcing = [](std::span<const double> t) { return t[0] * t[0]; };
  UrysohnProblem u;
  u.integrand = [K](std::span<const double> t, std::span<const double> s, double x) { return K(t, s) * x; };
  u.forcing = f.forcing;
  for (const auto& q : {QuadratureRule::gauss(24), QuadratureRule::trapezoid(17)}) {
    FredholmOperator TF(f, q);
    UrysohnOperator TU(u, q);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> d(-2, 2);
    auto x = GridFunction::sample(TF.grid(), [&](auto) { return d(rng); });
    EXPECT_EQ(TF(x).values, TU(x).values);
  }
}

TEST(SolveUrysohn, SineExampleAgreesWithNewton) {
  const auto p = sine_problem();
  const auto q = QuadratureRule::gauss(32);
  IterationConfig c;
  c.eps_step = 1e-13;
  c.eps_res = 1e-11;
  c.max_iter = 200;
  auto rep = solve_urysohn(p, q, c, {false, true});
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.residual, 1e-10);
  EXPECT_LE(rep.iterations, 200u);
  ASSERT_TRUE(rep.oracle_gap);
  EXPECT_LE(*rep.oracle_gap, 1e-8);
  EXPECT_TRUE(rep.hypothesis_checks.lipschitz_ok->ok);
  EXPECT_TRUE(rep.hypothesis_checks.beta_ok->ok);
}

TEST(SolveUrysohn, ConstantForcingZeroIntegrandInOneStep) {
  UrysohnProblem p = sine_problem();
  p.integrand = [](auto, auto, double) { return 0.0; };
  p.forcing = [](auto) { return 0.25; };
  auto rep = solve_urysohn(p, QuadratureRule::gauss(4));
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.iterations, 1u);
  for (double x : rep.solution.values) EXPECT_EQ(x, 0.25);
}

TEST(SolveUrysohn, QuadraticIntegrandFailsLipschitz) {
  UrysohnProblem p = sine_problem();
  p.integrand = [](auto, auto, double u) { return u * u; };
  p.u_range = {0, 10};
  try {
    solve_urysohn(p, QuadratureRule::gauss(4));
    FAIL() << "expected HypothesisViolated";
  } catch (const HypothesisViolated& e) {
    EXPECT_EQ(e.condition(), "lipschitz_ok");
    EXPECT_GT(e.worst(), 1.0);
    EXPECT_LE(e.worst(), 20.0);
  }
  auto h = check_urysohn_hypotheses(p);
  EXPECT_FALSE(h.lipschitz_ok->ok);
  EXPECT_GT(h.lipschitz_ok->samples, 1000u);
}

TEST(SolveUrysohn, SmallTauFailsVolumeCondition) {
  UrysohnProblem p = sine_problem();
  p.tau = 2;
  p.domain = {0, 3};
  p.integrand = [](auto, auto, double u) { return std::sin(u) / 10.0; };
  auto h = check_urysohn_hypotheses(p);
  EXPECT_TRUE(h.lipschitz_ok->ok);
  EXPECT_FALSE(h.beta_ok->ok);
}

TEST(SolveUrysohn, AlphaOnlyRescalesDistances) {
  const auto q = QuadratureRule::gauss(16);
  auto run = [&](double alpha) {
    IterationConfig c;
    const double w = arcsin_weight(alpha);
    c.eps_step = 1e-13 * w;
    c.eps_res = 1e-12 * w;
    c.record_trace = true;
    return solve_urysohn(sine_problem(alpha), q, c);
  };
  auto a = run(0.1), b = run(1.0);
  ASSERT_EQ(a.trace->iterates.size(), b.trace->iterates.size());
  for (std::size_t i = 0; i < a.trace->iterates.size(); ++i)
    EXPECT_EQ(a.trace->iterates[i].values, b.trace->iterates[i].values);
}

TEST(OracleUrysohn, SolvesLinearCaseLikeDenseFredholm) {
  FredholmProblem f = separable(0.5);
  UrysohnProblem u = sine_problem();
  u.integrand = [](std::span<const double> t, std::span<const double> s, double x) { return 0.5 * t[0] * s[0] * x; };
  auto a = oracle_urysohn_newton(u, QuadratureRule::gauss(10));
  auto b = oracle_fredholm_dense(f, QuadratureRule::gauss(10));
  EXPECT_LE(WeightedSup{}(a, b), 1e-12);
}

TEST(Discretization, DeterministicRulesCapDimension) {
  FredholmProblem p = separable(0.5);
  p.n_trunc = 5;
  p.kernel = [](auto, auto) { return 0.0; };
  EXPECT_THROW(FredholmOperator(p, QuadratureRule::gauss(2)), InvalidArgument);
  EXPECT_NO_THROW(FredholmOperator(p, QuadratureRule::monte_carlo(50, 1)));
}

TEST(Threads, ResultsDoNotDependOnThreadCount) {
  FredholmProblem p;
  p.delta = 0.9;
  p.n_trunc = 2;
  p.kernel = [](std::span<const double> t, std::span<const double> s) { return 0.8 * std::cos(t[0] * s[1] + t[1]); };
  p.forcing = [](std::span<const double> t) { return t[0] - t[1]; };
  setenv("PICARDO_THREADS", "1", 1);
  auto a = solve_fredholm(p, QuadratureRule::gauss(18));
  setenv("PICARDO_THREADS", "3", 1);
  auto b = solve_fredholm(p, QuadratureRule::gauss(18));
  unsetenv("PICARDO_THREADS");
  EXPECT_EQ(a.solution.values, b.solution.values);
  EXPECT_EQ(a.step_distances, b.step_distances);
}
