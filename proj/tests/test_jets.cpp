#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace acm;

namespace {

MultiIndex mi(int a, int b = 0, int c = 0) {
  return MultiIndex{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c), 0, 0};
}

// f = x^2 y + 3 y z^2 - z
Jet poly(const Point& p) {
  const Jet x = Jet::variable(0, p), y = Jet::variable(1, p), z = Jet::variable(2, p);
  return x * x * y + 3.0 * y * z * z - z;
}

Jet mixed(const Point& p) {
  const Jet x = Jet::variable(0, p), y = Jet::variable(1, p), z = Jet::variable(2, p);
  return exp(x * y) * sin(z) + sqrt(1.0 + x * x) / (2.0 + cos(y)) + log(3.0 + z) * pow(1.5 + y * y, 0.7);
}

}  // namespace

TEST(Jets, PolynomialPartialsExact) {
  const Point p{0.5, -1.5, 2.0};
  const Jet f = poly(p);
  const double x = 0.5, y = -1.5, z = 2.0;
  EXPECT_DOUBLE_EQ(f.value(), x * x * y + 3 * y * z * z - z);
  EXPECT_DOUBLE_EQ(f.d(0), 2 * x * y);
  EXPECT_DOUBLE_EQ(f.d(1), x * x + 3 * z * z);
  EXPECT_DOUBLE_EQ(f.d(2), 6 * y * z - 1);
  EXPECT_DOUBLE_EQ(f.d(0, 0), 2 * y);
  EXPECT_DOUBLE_EQ(f.d(0, 1), 2 * x);
  EXPECT_DOUBLE_EQ(f.d(2, 2), 6 * y);
  EXPECT_DOUBLE_EQ(f.d(0, 0, 1), 2.0);
  EXPECT_DOUBLE_EQ(f.d(1, 2, 2), 6.0);
  EXPECT_DOUBLE_EQ(f.partial(mi(1, 1, 0)), 2 * x);
  EXPECT_DOUBLE_EQ(f.d(0, 1, 2), 0.0);
}

TEST(Jets, DerivativeLowersValidOrder) {
  const Jet f = poly(Point{1.0, 2.0, 3.0});
  EXPECT_EQ(f.valid_order(), 3);
  const Jet fx = f.derivative(0);
  EXPECT_EQ(fx.valid_order(), 2);
  EXPECT_DOUBLE_EQ(fx.value(), f.d(0));
  EXPECT_DOUBLE_EQ(fx.d(1), f.d(0, 1));
  EXPECT_EQ((fx * f).valid_order(), 2);
}

TEST(Jets, ElementaryFunctionsMatchClosedForms) {
  const Point p{0.3};
  const Jet x = Jet::variable(0, p);
  const double v = 0.3;
  EXPECT_NEAR(exp(x).d(0, 0, 0), std::exp(v), 1e-14);
  EXPECT_NEAR(log(x).d(0, 0), -1.0 / (v * v), 1e-12);
  EXPECT_NEAR(sqrt(x).d(0), 0.5 / std::sqrt(v), 1e-14);
  EXPECT_NEAR(sin(x).d(0, 0, 0), -std::cos(v), 1e-14);
  EXPECT_NEAR(cos(x).d(0, 0), -std::cos(v), 1e-14);
  EXPECT_NEAR(pow(x, 2.5).d(0, 0), 2.5 * 1.5 * std::pow(v, 0.5), 1e-13);
  EXPECT_NEAR((1.0 / x).d(0, 0, 0), -6.0 / std::pow(v, 4), 1e-9);
}

TEST(Jets, DomainErrorsThrow) {
  const Jet x = Jet::variable(0, Point{-1.0});
  EXPECT_THROW(log(x), std::domain_error);
  EXPECT_THROW(sqrt(x), std::domain_error);
  EXPECT_THROW(x / Jet(1, 0.0), std::domain_error);
  EXPECT_THROW(Jet(2) + Jet(3), std::invalid_argument);
}

// Property: first, second and third partials against central differences of lower-order data.
TEST(JetsProperty, PartialsMatchCentralDifferences) {
  const Box box{{{-0.8, 0.8}, {-0.8, 0.8}, {0.1, 1.5}}};
  const double h = 1e-4;
  for (const Point& p : test::seeded(box, 40, 7)) {
    const Jet f = mixed(p);
    for (int i = 0; i < 3; ++i) {
      const double fd = (mixed(p.displaced(i, h)).value() - mixed(p.displaced(i, -h)).value()) / (2 * h);
      EXPECT_LT(test::rel_err(f.d(i), fd), 1e-5) << "d" << i;
      for (int j = 0; j < 3; ++j) {
        const double fd2 = (mixed(p.displaced(j, h)).d(i) - mixed(p.displaced(j, -h)).d(i)) / (2 * h);
        EXPECT_LT(test::rel_err(f.d(i, j), fd2), 1e-5);
        for (int k = 0; k < 3; ++k) {
          const double fd3 = (mixed(p.displaced(k, h)).d(i, j) - mixed(p.displaced(k, -h)).d(i, j)) / (2 * h);
          EXPECT_LT(test::rel_err(f.d(i, j, k), fd3), 1e-5);
        }
      }
    }
  }
}

TEST(JetsProperty, ArithmeticIsAFieldOnTruncatedSeries) {
  for (const Point& p : test::seeded(Box{{{0.5, 2}, {0.5, 2}}}, 20, 11)) {
    const Jet x = Jet::variable(0, p), y = Jet::variable(1, p);
    const Jet a = exp(x) + y, b = x * y + 1.0;
    const Jet r = (a * b) / b - a;
    for (double c : r.coefficients()) EXPECT_NEAR(c, 0.0, 1e-12);
    const Jet s = sqrt(a) * sqrt(a) - a;
    for (double c : s.coefficients()) EXPECT_NEAR(c, 0.0, 1e-12);
  }
}
