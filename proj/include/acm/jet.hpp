#pragma once

// Order-3 truncated multivariate Taylor expansions ("jets").
//
// A Jet holds the Taylor coefficients c_a = (d^a f)(p) / a! of a scalar
// function around a point p for every multi-index a of total degree <= 3,
// stored densely in graded-lexicographic order. Arithmetic and elementary
// functions are exact through the stored degree.
//
// Differentiating a jet lowers the degree that is still trustworthy; that
// degree is tracked as valid_order() and arithmetic propagates the minimum.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace acm {

inline constexpr int kJetOrder = 3;
inline constexpr int kMaxChartDim = 5;

/// Coordinates of a point in a single chart.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// p + step * e_axis
  Point displaced(int axis, double step) const;
  /// p + step * direction
  Point displaced(std::span<const double> direction, double step) const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

using MultiIndex = std::array<std::uint8_t, kMaxChartDim>;

/// Slot bookkeeping for the dense coefficient table of one chart dimension.
struct JetLayout {
  int dim = 0;
  int size = 0;
  std::vector<MultiIndex> index;        // slot -> multi-index
  std::vector<int> degree;              // slot -> total degree
  std::vector<std::array<int, kMaxChartDim>> raise;  // slot of a + e_i, -1 if degree > 3
  std::vector<std::array<int, 3>> products;          // (a, b, a+b) with deg(a)+deg(b) <= 3

  int slot(const MultiIndex& a) const;
};

const JetLayout& jet_layout(int dim);

class Jet {
 public:
  static constexpr int kMaxCoeffs = 56;  // C(5+3, 3)

  explicit Jet(int dim = 1, double constant = 0.0);

  /// Jet of the i-th coordinate function at p.
  static Jet variable(int i, const Point& p);

  int dim() const noexcept { return dim_; }
  int valid_order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }

  double coeff(const MultiIndex& a) const;
  /// Mixed partial derivative d^a f (coefficient times a!).
  double partial(const MultiIndex& a) const;
  double d(int i) const;
  double d(int i, int j) const;
  double d(int i, int j, int k) const;

  /// Jet of d_i f; valid order drops by one.
  Jet derivative(int i) const;

  std::span<const double> coefficients() const noexcept {
    return {c_.data(), static_cast<std::size_t>(jet_layout(dim_).size)};
  }

  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);
  Jet& operator+=(double b) noexcept;
  Jet& operator-=(double b) noexcept;
  Jet& operator*=(double b) noexcept;
  Jet& operator/=(double b);

  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

 private:
  friend Jet compose(const Jet& a, const std::array<double, 4>& f);

  void truncate_above(int order) noexcept;
  void require_same_dim(const Jet& b) const;

  int dim_;
  int order_ = kJetOrder;
  std::array<double, kMaxCoeffs> c_{};
};

/// Composition f(a) from the univariate derivatives f(a0), f'(a0), f''(a0), f'''(a0).
Jet compose(const Jet& a, const std::array<double, 4>& f);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow(const Jet& a, double exponent);

enum class JetOp { add, sub, mul, div };
enum class Elementary { exp, ln, sqrt, sin, cos, pow_const };

Jet jet_arith(const Jet& a, const Jet& b, JetOp op);
Jet jet_elementary(const Jet& a, Elementary f, double exponent = 0.0);

}  // namespace acm
