#include "acm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acm {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxChartDim) throw std::invalid_argument("dimension out of range");
}

}  // namespace

Vec::Vec(int dim) : dim_(dim) { check_dim(dim); }

Vec::Vec(std::initializer_list<double> v) : dim_(static_cast<int>(v.size())) {
  check_dim(dim_);
  std::copy(v.begin(), v.end(), v_.begin());
}

Vec Vec::basis(int dim, int i) {
  Vec v(dim);
  v[i] = 1.0;
  return v;
}

Vec& Vec::operator+=(const Vec& b) {
  if (b.dim_ != dim_) throw std::invalid_argument("vector dimension mismatch");
  for (int i = 0; i < dim_; ++i) v_[i] += b.v_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& b) {
  if (b.dim_ != dim_) throw std::invalid_argument("vector dimension mismatch");
  for (int i = 0; i < dim_; ++i) v_[i] -= b.v_[i];
  return *this;
}

Vec& Vec::operator*=(double s) noexcept {
  for (int i = 0; i < dim_; ++i) v_[i] *= s;
  return *this;
}

double Vec::max_abs() const noexcept {
  double m = 0.0;
  for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(v_[i]));
  return m;
}

SmallMatrix::SmallMatrix(int dim) : dim_(dim) { check_dim(dim); }

SmallMatrix::SmallMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(static_cast<int>(rows.size())) {
  check_dim(dim_);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) throw std::invalid_argument("matrix must be square");
    int j = 0;
    for (double v : row) (*this)(i, j++) = v;
    ++i;
  }
}

SmallMatrix SmallMatrix::identity(int dim) {
  SmallMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

SmallMatrix SmallMatrix::outer(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  SmallMatrix m(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

Vec SmallMatrix::column(int j) const {
  Vec v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = (*this)(i, j);
  return v;
}

SmallMatrix SmallMatrix::transpose() const {
  SmallMatrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double SmallMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double SmallMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(a_[i]));
  return m;
}

SmallMatrix& SmallMatrix::operator+=(const SmallMatrix& b) {
  if (b.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] += b.a_[i];
  return *this;
}

SmallMatrix& SmallMatrix::operator-=(const SmallMatrix& b) {
  if (b.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= b.a_[i];
  return *this;
}

SmallMatrix& SmallMatrix::operator*=(double s) noexcept {
  for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
  return *this;
}

SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("matrix dimension mismatch");
  SmallMatrix c(a.dim_);
  for (int i = 0; i < a.dim_; ++i)
    for (int k = 0; k < a.dim_; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < a.dim_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const SmallMatrix& a, const Vec& v) {
  if (a.dim_ != v.dim()) throw std::invalid_argument("matrix/vector dimension mismatch");
  Vec out(a.dim_);
  for (int i = 0; i < a.dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < a.dim_; ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double dot(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double inner(const SmallMatrix& g, const Vec& a, const Vec& b) { return dot(a, g * b); }

double g_norm(const SmallMatrix& g, const Vec& a) { return std::sqrt(std::max(0.0, inner(g, a, a))); }

double determinant(const SmallMatrix& m) {
  const int n = m.dim();
  SmallMatrix a = m;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (a(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

SmallMatrix invert(const SmallMatrix& m) {
  if (!(std::abs(determinant(m)) > 1e-12)) throw std::runtime_error("singular matrix");
  const int n = m.dim();
  SmallMatrix a = m;
  SmallMatrix inv = SmallMatrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(p, c))) p = r;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const double pivot = a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a(r, c);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

SmallMatrix cholesky(const SmallMatrix& m) {
  const int n = m.dim();
  SmallMatrix L(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0)) throw std::domain_error("matrix is not positive definite");
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

SymmetricEigen jacobi_eigen(const SmallMatrix& sym) {
  const int n = sym.dim();
  SmallMatrix a = sym;
  SmallMatrix v = SmallMatrix::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j) off += a(i, j) * a(i, j);
        scale += a(i, j) * a(i, j);
      }
    if (off <= 1e-32 * scale || off == 0.0) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });
  SymmetricEigen out;
  out.vectors = SmallMatrix(n);
  for (int c = 0; c < n; ++c) {
    out.values.push_back(a(order[c], order[c]));
    for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

Vec fix_sign(Vec v) {
  int best = 0;
  for (int i = 1; i < v.dim(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-12) + 1e-300) best = i;
  if (v[best] < 0.0) v *= -1.0;
  return v;
}

EigenPairs g_orthonormal_eig(const SmallMatrix& h, const SmallMatrix& g) {
  if (h.dim() != g.dim()) throw std::invalid_argument("dimension mismatch");
  const SmallMatrix gh = g * h;
  const double scale = std::max(1.0, gh.max_abs());
  if ((gh - gh.transpose()).max_abs() > 1e-8 * scale) throw std::invalid_argument("operator is not g-self-adjoint");
  const SmallMatrix L = cholesky(g);
  const SmallMatrix Linv = invert(L);
  // M = L^{-1} (g h) L^{-T}, symmetric
  SmallMatrix M = Linv * gh * Linv.transpose();
  M = (M + M.transpose()) * 0.5;
  const SymmetricEigen eig = jacobi_eigen(M);
  const SmallMatrix LinvT = Linv.transpose();
  EigenPairs out;
  out.values = eig.values;
  for (int c = 0; c < h.dim(); ++c) out.vectors.push_back(fix_sign(LinvT * eig.vectors.column(c)));
  return out;
}

std::vector<double> g_singular_values(const SmallMatrix& op, const SmallMatrix& g) {
  const SmallMatrix L = cholesky(g);
  const SmallMatrix Linv = invert(L);
  // operator in orthonormal coordinates: B = L^T op L^{-T}
  const SmallMatrix B = L.transpose() * op * Linv.transpose();
  const SymmetricEigen eig = jacobi_eigen(B.transpose() * B);
  std::vector<double> sv;
  for (double v : eig.values) sv.push_back(std::sqrt(std::max(0.0, v)));
  return sv;
}

SmallMatrix gram(const SmallMatrix& g, std::span<const Vec> vectors) {
  const int n = static_cast<int>(vectors.size());
  SmallMatrix G(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) G(a, b) = inner(g, vectors[a], vectors[b]);
  return G;
}

}  // namespace acm
