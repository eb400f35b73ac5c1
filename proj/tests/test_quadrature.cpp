#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "picardo/detail/parallel.hpp"
#include "picardo/quadrature.hpp"

using namespace picardo;

namespace {

double integrate(const Rule1D& r, int p) {
  double s = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
  return s;
}

double exact_monomial(Interval d, int p) {
  return (std::pow(d.upper, p + 1) - std::pow(d.lower, p + 1)) / (p + 1);
}

} // namespace

TEST(GaussLegendre, ExactUpToDegreeTwoMMinusOne) {
  for (Interval d : {Interval{0, 1}, Interval{-1, 1}, Interval{-0.5, 2.0}})
    for (std::size_t m = 1; m <= 24; ++m) {
      auto r = gauss_legendre(m, d);
      for (int p = 0; p <= static_cast<int>(2 * m - 1); ++p) {
        const double exact = exact_monomial(d, p);
        EXPECT_NEAR(integrate(r, p), exact, 1e-13 * std::max(1.0, std::abs(exact)))
            << "m=" << m << " p=" << p;
      }
    }
}

TEST(GaussLegendre, NotExactAtDegreeTwoM) {
  auto r = gauss_legendre(3);
  EXPECT_GT(std::abs(integrate(r, 6) - 1.0 / 7.0), 1e-6);
}

TEST(GaussLegendre, KnownSmallRules) {
  auto r2 = gauss_legendre(2, {-1, 1});
  EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
  auto r3 = gauss_legendre(3, {-1, 1});
  EXPECT_EQ(r3.nodes[1], 0.0);
  EXPECT_NEAR(r3.nodes[2], std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(r3.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(r3.weights[1], 8.0 / 9.0, 1e-15);
  auto r1 = gauss_legendre(1, {2, 4});
  EXPECT_EQ(r1.nodes[0], 3.0);
  EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, NodesAscendInsideAndWeightsSumToWidth) {
  for (std::size_t m = 1; m <= 64; ++m) {
    auto r = gauss_legendre(m, {0, 3});
    double sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_GT(r.nodes[i], 0.0);
      EXPECT_LT(r.nodes[i], 3.0);
      if (i) {
        EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
      }
      EXPECT_GT(r.weights[i], 0.0);
      sum += r.weights[i];
    }
    EXPECT_NEAR(sum, 3.0, 1e-13);
  }
  EXPECT_THROW(gauss_legendre(0), InvalidArgument);
}

TEST(Trapezoid, IncludesEndpointsAndIsExactForLines) {
  auto r = composite_trapezoid(5, {1, 3});
  EXPECT_EQ(r.nodes.front(), 1.0);
  EXPECT_EQ(r.nodes.back(), 3.0);
  EXPECT_NEAR(integrate(r, 0), 2.0, 1e-15);
  EXPECT_NEAR(integrate(r, 1), 4.0, 1e-15);
  EXPECT_THROW(composite_trapezoid(1), InvalidArgument);
}

TEST(Discretize, TensorOrderingLastAxisFastest) {
  auto d = discretize(QuadratureRule::gauss(3), 2, {0, 1});
  auto r = gauss_legendre(3);
  ASSERT_EQ(d.size(), 9u);
  EXPECT_EQ(d.grid->dim(), 2u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      auto x = d.grid->node(3 * i + j);
      EXPECT_EQ(x[0], r.nodes[i]);
      EXPECT_EQ(x[1], r.nodes[j]);
      EXPECT_EQ(d.weights[3 * i + j], r.weights[i] * r.weights[j]);
    }
}

TEST(Discretize, TensorGaussIntegratesSeparableProducts) {
  auto d = discretize(QuadratureRule::gauss(4), 3, {0, 2});
  double s = 0, vol = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto x = d.grid->node(i);
    s += d.weights[i] * x[0] * x[1] * x[1] * x[2] * x[2] * x[2];
    vol += d.weights[i];
  }
  EXPECT_NEAR(vol, 8.0, 1e-13);
  EXPECT_NEAR(s, 2.0 * (8.0 / 3.0) * 4.0, 1e-12);
}

TEST(Discretize, MonteCarloIsSeededWithEqualWeights) {
  auto a = discretize(QuadratureRule::monte_carlo(100, 7), 2, {0, 2});
  auto b = discretize(QuadratureRule::monte_carlo(100, 7), 2, {0, 2});
  auto c = discretize(QuadratureRule::monte_carlo(100, 8), 2, {0, 2});
  EXPECT_EQ(a.grid->coords(), b.grid->coords());
  EXPECT_NE(a.grid->coords(), c.grid->coords());
  for (double w : a.weights) EXPECT_EQ(w, 4.0 / 100.0);
  for (double x : a.grid->coords()) {
    EXPECT_GE(x, 0.0);
    EXPECT_LE(x, 2.0);
  }
}

TEST(QuadratureRule, NamesAndValidation) {
  EXPECT_EQ(QuadratureRule::gauss(16).name(), "gauss 16");
  EXPECT_EQ(QuadratureRule::trapezoid(5).name(), "trapezoid 5");
  EXPECT_EQ(QuadratureRule::monte_carlo(9, 1).name(), "montecarlo 9");
  EXPECT_THROW(QuadratureRule::gauss(0), InvalidArgument);
  EXPECT_THROW(discretize(QuadratureRule::gauss(2), 0, {0, 1}), InvalidArgument);
  EXPECT_THROW(discretize(QuadratureRule::gauss(2), 1, {1, 1}), InvalidArgument);
}

TEST(PairwiseSum, SumsExactlyRepresentableValues) {
  std::vector<double> xs;
  double naive = 0;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(i * 0.25);
    naive += i * 0.25;
  }
  EXPECT_EQ(detail::pairwise_sum(xs), naive);
  EXPECT_EQ(detail::pairwise_sum({}), 0.0);
}

TEST(ParallelFor, VisitsEveryRowOnceAndRethrows) {
  setenv("PICARDO_THREADS", "4", 1);
  EXPECT_EQ(detail::thread_count(), 4u);
  std::vector<std::atomic<int>> hits(5000);
  detail::parallel_for(hits.size(), 1000, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(detail::parallel_for(5000, 1000,
                                    [](std::size_t i) {
                                      if (i == 4321) throw std::runtime_error("row");
                                    }),
               std::runtime_error);
  setenv("PICARDO_THREADS", "0", 1);
  EXPECT_GE(detail::thread_count(), 1u);
  unsetenv("PICARDO_THREADS");
}
