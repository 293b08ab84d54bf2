#pragma once

// Small dense linear algebra for chart dimensions up to kMaxChartDim.

#include <array>
#include <span>
#include <vector>

#include "acm/jet.hpp"

namespace acm {

/// Coordinate components of a tangent vector (or covector) at a point.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<double> v);
  static Vec basis(int dim, int i);

  int dim() const noexcept { return dim_; }
  double& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> components() const noexcept { return {v_.data(), static_cast<std::size_t>(dim_)}; }

  Vec& operator+=(const Vec& b);
  Vec& operator-=(const Vec& b);
  Vec& operator*=(double s) noexcept;
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  Vec operator-() const { return *this * -1.0; }

  double max_abs() const noexcept;

 private:
  int dim_ = 0;
  std::array<double, kMaxChartDim> v_{};
};

/// Row-major dim x dim matrix.
class SmallMatrix {
 public:
  SmallMatrix() = default;
  explicit SmallMatrix(int dim);
  SmallMatrix(std::initializer_list<std::initializer_list<double>> rows);
  static SmallMatrix identity(int dim);
  static SmallMatrix outer(const Vec& a, const Vec& b);

  int dim() const noexcept { return dim_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

  Vec column(int j) const;
  SmallMatrix transpose() const;
  double trace() const noexcept;
  double max_abs() const noexcept;

  SmallMatrix& operator+=(const SmallMatrix& b);
  SmallMatrix& operator-=(const SmallMatrix& b);
  SmallMatrix& operator*=(double s) noexcept;
  friend SmallMatrix operator+(SmallMatrix a, const SmallMatrix& b) { return a += b; }
  friend SmallMatrix operator-(SmallMatrix a, const SmallMatrix& b) { return a -= b; }
  friend SmallMatrix operator*(SmallMatrix a, double s) { return a *= s; }
  friend SmallMatrix operator*(double s, SmallMatrix a) { return a *= s; }
  friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b);
  friend Vec operator*(const SmallMatrix& a, const Vec& v);

 private:
  int dim_ = 0;
  std::array<double, kMaxChartDim * kMaxChartDim> a_{};
};

double dot(const Vec& a, const Vec& b);
/// g(a, b) for a metric matrix g.
double inner(const SmallMatrix& g, const Vec& a, const Vec& b);
double g_norm(const SmallMatrix& g, const Vec& a);

double determinant(const SmallMatrix& m);
/// Throws std::runtime_error when |det| <= 1e-12.
SmallMatrix invert(const SmallMatrix& m);
/// Lower-triangular L with m = L L^T; throws std::domain_error unless m is positive definite.
SmallMatrix cholesky(const SmallMatrix& m);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  SmallMatrix vectors;         // columns, orthonormal
};

/// Cyclic Jacobi sweeps on a symmetric matrix.
SymmetricEigen jacobi_eigen(const SmallMatrix& sym);

struct EigenPairs {
  std::vector<double> values;  // descending
  std::vector<Vec> vectors;    // g-orthonormal
};

/// Eigenpairs of a g-self-adjoint operator h (g h symmetric). The eigenproblem
/// is moved to orthonormal coordinates through the Cholesky factor of g and
/// solved by cyclic Jacobi. Eigenvector signs: the component of largest
/// magnitude (first one on ties) is made positive.
EigenPairs g_orthonormal_eig(const SmallMatrix& h, const SmallMatrix& g);

/// Singular values (descending) of an operator with respect to the metric g.
std::vector<double> g_singular_values(const SmallMatrix& op, const SmallMatrix& g);

/// Gram matrix G_ab = g(v_a, v_b).
SmallMatrix gram(const SmallMatrix& g, std::span<const Vec> vectors);

/// Apply the deterministic sign rule used for frame vectors.
Vec fix_sign(Vec v);

}  // namespace acm
