#include "acm/jet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace acm {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty() || static_cast<int>(coords_.size()) > kMaxChartDim) {
    throw std::invalid_argument("point dimension must be in [1, " + std::to_string(kMaxChartDim) + "]");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::displaced(int axis, double step) const {
  std::vector<double> c = coords_;
  c.at(static_cast<std::size_t>(axis)) += step;
  return Point(std::move(c));
}

Point Point::displaced(std::span<const double> direction, double step) const {
  if (static_cast<int>(direction.size()) != dim()) throw std::invalid_argument("direction dimension mismatch");
  std::vector<double> c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += step * direction[i];
  return Point(std::move(c));
}

namespace {

int degree_of(const MultiIndex& a) {
  int s = 0;
  for (auto v : a) s += v;
  return s;
}

JetLayout build_layout(int dim) {
  JetLayout L;
  L.dim = dim;
  // graded lexicographic: degree 0, then e_i, then i<=j, then i<=j<=k
  L.index.push_back(MultiIndex{});
  for (int i = 0; i < dim; ++i) {
    MultiIndex a{};
    ++a[i];
    L.index.push_back(a);
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      MultiIndex a{};
      ++a[i];
      ++a[j];
      L.index.push_back(a);
    }
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) {
        MultiIndex a{};
        ++a[i];
        ++a[j];
        ++a[k];
        L.index.push_back(a);
      }
  L.size = static_cast<int>(L.index.size());
  for (const auto& a : L.index) L.degree.push_back(degree_of(a));

  L.raise.resize(L.index.size());
  for (int s = 0; s < L.size; ++s) {
    L.raise[s].fill(-1);
    for (int i = 0; i < dim; ++i) {
      if (L.degree[s] >= kJetOrder) continue;
      MultiIndex b = L.index[s];
      ++b[i];
      L.raise[s][i] = L.slot(b);
    }
  }
  for (int a = 0; a < L.size; ++a)
    for (int b = 0; b < L.size; ++b) {
      if (L.degree[a] + L.degree[b] > kJetOrder) continue;
      MultiIndex c{};
      for (int i = 0; i < kMaxChartDim; ++i) c[i] = static_cast<std::uint8_t>(L.index[a][i] + L.index[b][i]);
      L.products.push_back({a, b, L.slot(c)});
    }
  return L;
}

double factorial_weight(const MultiIndex& a) {
  double w = 1.0;
  for (auto v : a)
    for (int t = 2; t <= v; ++t) w *= t;
  return w;
}

}  // namespace

int JetLayout::slot(const MultiIndex& a) const {
  const auto it = std::find(index.begin(), index.end(), a);
  if (it == index.end()) return -1;
  return static_cast<int>(it - index.begin());
}

const JetLayout& jet_layout(int dim) {
  static const std::array<JetLayout, kMaxChartDim> layouts = [] {
    std::array<JetLayout, kMaxChartDim> out;
    for (int d = 1; d <= kMaxChartDim; ++d) out[d - 1] = build_layout(d);
    return out;
  }();
  if (dim < 1 || dim > kMaxChartDim) throw std::invalid_argument("jet dimension out of range");
  return layouts[dim - 1];
}

Jet::Jet(int dim, double constant) : dim_(dim) {
  if (dim < 1 || dim > kMaxChartDim) throw std::invalid_argument("jet dimension out of range");
  if (!std::isfinite(constant)) throw std::domain_error("jet constant must be finite");
  c_[0] = constant;
}

Jet Jet::variable(int i, const Point& p) {
  if (i < 0 || i >= p.dim()) throw std::out_of_range("coordinate index out of range");
  Jet j(p.dim(), p[i]);
  j.c_[1 + i] = 1.0;
  return j;
}

double Jet::coeff(const MultiIndex& a) const {
  const int deg = degree_of(a);
  if (deg > kJetOrder) throw std::invalid_argument("multi-index degree exceeds jet order");
  for (int i = dim_; i < kMaxChartDim; ++i)
    if (a[i] != 0) throw std::invalid_argument("multi-index outside jet dimension");
  if (deg > order_) throw std::invalid_argument("multi-index degree exceeds the jet's valid order");
  return c_[jet_layout(dim_).slot(a)];
}

double Jet::partial(const MultiIndex& a) const { return coeff(a) * factorial_weight(a); }

double Jet::d(int i) const {
  MultiIndex a{};
  ++a.at(i);
  return partial(a);
}

double Jet::d(int i, int j) const {
  MultiIndex a{};
  ++a.at(i);
  ++a.at(j);
  return partial(a);
}

double Jet::d(int i, int j, int k) const {
  MultiIndex a{};
  ++a.at(i);
  ++a.at(j);
  ++a.at(k);
  return partial(a);
}

Jet Jet::derivative(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("derivative index out of range");
  if (order_ == 0) throw std::logic_error("cannot differentiate an order-0 jet");
  const auto& L = jet_layout(dim_);
  Jet out(dim_);
  out.order_ = order_ - 1;
  for (int s = 0; s < L.size; ++s) {
    const int up = L.raise[s][i];
    if (up < 0) continue;
    out.c_[s] = c_[up] * (L.index[s][i] + 1);
  }
  out.truncate_above(out.order_);
  return out;
}

void Jet::truncate_above(int order) noexcept {
  const auto& L = jet_layout(dim_);
  for (int s = 0; s < L.size; ++s)
    if (L.degree[s] > order) c_[s] = 0.0;
}

void Jet::require_same_dim(const Jet& b) const {
  if (b.dim_ != dim_) throw std::invalid_argument("jet dimension mismatch");
}

Jet& Jet::operator+=(const Jet& b) {
  require_same_dim(b);
  for (int s = 0; s < kMaxCoeffs; ++s) c_[s] += b.c_[s];
  order_ = std::min(order_, b.order_);
  truncate_above(order_);
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  require_same_dim(b);
  for (int s = 0; s < kMaxCoeffs; ++s) c_[s] -= b.c_[s];
  order_ = std::min(order_, b.order_);
  truncate_above(order_);
  return *this;
}

Jet& Jet::operator*=(const Jet& b) {
  require_same_dim(b);
  std::array<double, kMaxCoeffs> out{};
  for (const auto& [x, y, z] : jet_layout(dim_).products) out[z] += c_[x] * b.c_[y];
  c_ = out;
  order_ = std::min(order_, b.order_);
  truncate_above(order_);
  return *this;
}

Jet& Jet::operator/=(const Jet& b) {
  require_same_dim(b);
  const double b0 = b.value();
  if (b0 == 0.0) throw std::domain_error("jet division by a jet with zero constant term");
  return *this *= compose(b, {1.0 / b0, -1.0 / (b0 * b0), 2.0 / (b0 * b0 * b0), -6.0 / (b0 * b0 * b0 * b0)});
}

Jet& Jet::operator+=(double b) noexcept {
  c_[0] += b;
  return *this;
}

Jet& Jet::operator-=(double b) noexcept {
  c_[0] -= b;
  return *this;
}

Jet& Jet::operator*=(double b) noexcept {
  for (auto& c : c_) c *= b;
  return *this;
}

Jet& Jet::operator/=(double b) {
  if (b == 0.0) throw std::domain_error("jet division by zero");
  for (auto& c : c_) c /= b;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

Jet operator/(double a, const Jet& b) {
  Jet num(b.dim(), a);
  return num /= b;
}

Jet compose(const Jet& a, const std::array<double, 4>& f) {
  for (double v : f)
    if (!std::isfinite(v)) throw std::domain_error("elementary function not finite at jet constant term");
  Jet delta = a;
  delta.c_[0] = 0.0;
  Jet out(a.dim_, f[0]);
  out.order_ = a.order_;
  Jet power = delta;
  out += power * f[1];
  power *= delta;
  out += power * (f[2] / 2.0);
  power *= delta;
  out += power * (f[3] / 6.0);
  out.order_ = a.order_;
  return out;
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e, e});
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw std::domain_error("log of a jet with non-positive constant term");
  return compose(a, {std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)});
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw std::domain_error("sqrt of a jet with non-positive constant term");
  const double s = std::sqrt(x);
  return compose(a, {s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {s, c, -s, -c});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {c, -s, -c, s});
}

Jet pow(const Jet& a, double p) {
  const double x = a.value();
  const bool integral = p >= 0.0 && std::floor(p) == p;
  if (!integral && !(x > 0.0)) throw std::domain_error("pow of a jet with non-positive base and non-integer exponent");
  auto term = [&](double coeff, double e) { return coeff == 0.0 ? 0.0 : coeff * std::pow(x, e); };
  return compose(a, {std::pow(x, p), term(p, p - 1), term(p * (p - 1), p - 2), term(p * (p - 1) * (p - 2), p - 3)});
}

Jet jet_arith(const Jet& a, const Jet& b, JetOp op) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::sub: return a - b;
    case JetOp::mul: return a * b;
    case JetOp::div: return a / b;
  }
  throw std::invalid_argument("unknown jet operation");
}

Jet jet_elementary(const Jet& a, Elementary f, double exponent) {
  switch (f) {
    case Elementary::exp: return exp(a);
    case Elementary::ln: return log(a);
    case Elementary::sqrt: return sqrt(a);
    case Elementary::sin: return sin(a);
    case Elementary::cos: return cos(a);
    case Elementary::pow_const: return pow(a, exponent);
  }
  throw std::invalid_argument("unknown elementary function");
}

}  // namespace acm
