#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "roughimg/expression.hpp"
#include "roughimg/surfaces.hpp"

using namespace roughimg;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps) return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double eps) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), eps, 50);
}

const char* kCatalog[] = {"gamma1", "gamma2", "gamma3", "gamma4", "gamma5", "gamma6"};

}  // namespace

TEST(Catalog, ReferenceHeights) {
  EXPECT_DOUBLE_EQ(catalog("gamma1").height(0.0), 0.8);
  EXPECT_NEAR(catalog("gamma3").height(0.5), 0.96, 1e-15);
  const auto f = flat(0.8);
  for (double s : {-3.0, 0.0, 7.5}) {
    EXPECT_EQ(f.height(s), 0.8);
    EXPECT_EQ(f.slope(s), 0.0);
  }
}

TEST(Catalog, FlatSpellings) {
  EXPECT_EQ(catalog("flat:0.8").height(1.0), 0.8);
  EXPECT_EQ(catalog("flat(0.8)").height(1.0), 0.8);
  EXPECT_THROW(catalog("flat:abc"), DomainError);
  EXPECT_THROW(catalog("flat:-1"), DomainError);
  EXPECT_THROW(catalog("gamma7"), DomainError);
}

TEST(Catalog, SlopesMatchFiniteDifferences) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const double h = 1e-5;
  for (const char* name : kCatalog) {
    const auto p = catalog(name);
    for (int i = 0; i < 1000; ++i) {
      const double s = u(rng);
      const double fd = (p.height(s + h) - p.height(s - h)) / (2 * h);
      ASSERT_NEAR(p.slope(s), fd, 1e-6) << name << " s=" << s;
    }
  }
}

TEST(Catalog, LabelsRoundTrip) {
  for (const char* name : kCatalog) EXPECT_EQ(catalog(name).label(), name);
  EXPECT_EQ(catalog(flat(0.8).label()).height(0.0), 0.8);
}

TEST(Normal, FlatPointsDown) {
  const auto n = normal_at(flat(2.0), 1.3);
  EXPECT_EQ(n.x1, 0.0);
  EXPECT_EQ(n.x2, -1.0);
}

TEST(Normal, Gamma3AtOrigin) {
  const auto n = normal_at(catalog("gamma3"), 0.0);
  const double d = 0.16 * pi, j = std::sqrt(1 + d * d);
  EXPECT_NEAR(n.x1, d / j, 1e-15);
  EXPECT_NEAR(n.x2, -1 / j, 1e-15);
  EXPECT_NEAR(n.x1, 0.4490, 2e-4);
  EXPECT_NEAR(n.x2, -0.8935, 2e-4);
}

TEST(Normal, UnitAndOrthogonalToTangent) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (const char* name : kCatalog) {
    const auto p = catalog(name);
    for (int i = 0; i < 100; ++i) {
      const double s = u(rng);
      const auto n = normal_at(p, s);
      const double d = p.slope(s);
      EXPECT_NEAR(norm(n), 1.0, 1e-14);
      EXPECT_NEAR((n.x1 + d * n.x2) / std::sqrt(1 + d * d), 0.0, 1e-12);
    }
  }
}

TEST(Quadrature, SmallFlatGrid) {
  const auto nodes = quadrature_nodes(flat(1.0), 1.0, 4, 0.0);
  ASSERT_EQ(nodes.size(), 5u);
  const double expect_s[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  for (int m = 0; m < 5; ++m) {
    EXPECT_DOUBLE_EQ(nodes[m].s, expect_s[m]);
    EXPECT_EQ(nodes[m].jacobian, 1.0);
    EXPECT_DOUBLE_EQ(nodes[m].weight, (m == 0 || m == 4) ? 0.25 : 0.5);
  }
}

TEST(Quadrature, FlatWeightsSumToLength) {
  double sum = 0.0;
  for (const auto& n : quadrature_nodes(flat(0.8), 7.0, 1000, 0.0)) sum += n.weight;
  EXPECT_NEAR(sum, 14.0, 1e-12);
}

TEST(Quadrature, Gamma1ArcLength) {
  const auto g = catalog("gamma1");
  double sum = 0.0;
  for (const auto& n : quadrature_nodes(g, 10.0, 2000, 0.0)) sum += n.weight;
  const double ref = adaptive_simpson(
      [&](double s) {
        const double d = g.slope(s);
        return std::sqrt(1 + d * d);
      },
      -10.0, 10.0, 1e-12);
  EXPECT_NEAR(sum, ref, 1e-6);
}

TEST(Quadrature, SymmetricNonnegativeWeights) {
  for (const auto& p : {flat(0.8), catalog("gamma3")}) {
    const auto nodes = quadrature_nodes(p, 9.0, 600, 2.0);
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      EXPECT_GE(nodes[m].weight, 0.0);
      EXPECT_EQ(nodes[m].s, -nodes[nodes.size() - 1 - m].s);
      EXPECT_DOUBLE_EQ(nodes[m].weight, nodes[nodes.size() - 1 - m].weight);
    }
  }
}

TEST(Quadrature, TaperRollsToZero) {
  const auto nodes = quadrature_nodes(flat(1.0), 5.0, 100, 1.0);
  EXPECT_EQ(nodes.front().weight, 0.0);
  EXPECT_EQ(nodes.back().weight, 0.0);
  EXPECT_EQ(nodes[50].taper, 1.0);
  for (std::size_t m = 1; m <= 10; ++m) EXPECT_GT(nodes[m].taper, nodes[m - 1].taper);
}

TEST(Quadrature, RejectsBadArguments) {
  EXPECT_THROW(quadrature_nodes(flat(1.0), 1.0, 3, 0.0), DomainError);
  EXPECT_THROW(quadrature_nodes(flat(1.0), 1.0, 0, 0.0), DomainError);
  EXPECT_THROW(quadrature_nodes(flat(1.0), 1.0, 4, 1.0), DomainError);
  EXPECT_THROW(quadrature_nodes(flat(1.0), -1.0, 4, 0.0), DomainError);
}

TEST(Taper, SmoothstepProfile) {
  EXPECT_EQ(taper_weight(5.0, 5.0, 1.0), 0.0);
  EXPECT_EQ(taper_weight(0.0, 5.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(taper_weight(4.5, 5.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(taper_weight(-4.5, 5.0, 1.0), 0.5);
}

TEST(Band, Checks) {
  EXPECT_TRUE(band_check(flat(0.8).with_bounds(0.5, 2.0), 10.0, 1000));
  EXPECT_FALSE(band_check(flat(0.8).with_bounds(0.9, 2.0), 10.0, 1000));
  EXPECT_TRUE(band_check(catalog("gamma4").with_bounds(0.3, 3.0), 10.0, 20001));
  EXPECT_THROW(band_check(flat(0.8), 10.0, 10), DomainError);
}

TEST(Expression, ImpedanceFunction) {
  const auto rho = Expression::parse("5+exp(2*pi*x1*i)");
  for (double x : {-1.0, 0.0, 0.25, 0.7}) {
    const Complex want = 5.0 + std::exp(2.0 * pi * x * I);
    EXPECT_LT(std::abs(rho(x) - want), 1e-14);
  }
  EXPECT_EQ(rho.text(), "5+exp(2*pi*x1*i)");
}

TEST(Expression, PrecedenceAndFunctions) {
  EXPECT_NEAR(Expression::parse("2+3*4^2/8")(0).real(), 8.0, 1e-15);
  EXPECT_NEAR(Expression::parse("-x^2")(3).real(), -9.0, 1e-14);
  EXPECT_NEAR(Expression::parse("sqrt(abs(x))+cos(0)+sin(0)+log(1)")(4).real(), 3.0, 1e-15);
  EXPECT_NEAR(Expression::parse("i*i")(0).real(), -1.0, 1e-15);
}

TEST(Expression, MalformedInputThrows) {
  EXPECT_THROW(Expression::parse(""), ConfigError);
  EXPECT_THROW(Expression::parse("5+"), ConfigError);
  EXPECT_THROW(Expression::parse("foo(1)"), ConfigError);
  EXPECT_THROW(Expression::parse("(1"), ConfigError);
}
