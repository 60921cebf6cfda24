#pragma once

// Truncated Taylor arithmetic. A jet of order n at t0 stores the coefficients
// c[k] = f^(k)(t0) / k!, k = 0..n, of the local variable tau = t - t0.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace liesphere {

inline constexpr int kMaxJetOrder = 6;

class Jet {
 public:
  Jet() { c_.fill(0.0); }
  Jet(double value, int order) : order_(order) {
    c_.fill(0.0);
    c_[0] = value;
  }

  static Jet variable(double t0, int order) {
    Jet j(t0, order);
    if (order > 0) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double operator[](int k) const { return c_[k]; }
  double& operator[](int k) { return c_[k]; }

  // k-th derivative at t0.
  double derivative_value(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c_[k] * f;
  }

  Jet derivative() const {
    Jet d(0.0, std::max(order_ - 1, 0));
    for (int k = 0; k < order_; ++k) d.c_[k] = (k + 1) * c_[k + 1];
    return d;
  }

  Jet integral(double c0) const {
    Jet r(c0, std::min(order_ + 1, kMaxJetOrder));
    for (int k = 1; k <= r.order_; ++k) r.c_[k] = c_[k - 1] / k;
    return r;
  }

  Jet truncated(int order) const {
    Jet r = *this;
    for (int k = order + 1; k <= kMaxJetOrder; ++k) r.c_[k] = 0.0;
    r.order_ = std::min(order, order_);
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
    clear_tail();
    return *this;
  }
  Jet& operator*=(double a) {
    for (auto& x : c_) x *= a;
    return *this;
  }
  Jet& operator+=(double a) {
    c_[0] += a;
    return *this;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(0.0, std::min(a.order_, b.order_));
    for (int k = 0; k <= r.order_; ++k) {
      double s = 0.0;
      for (int i = 0; i <= k; ++i) s += a.c_[i] * b.c_[k - i];
      r.c_[k] = s;
    }
    return r;
  }

 private:
  void clear_tail() {
    for (int k = order_ + 1; k <= kMaxJetOrder; ++k) c_[k] = 0.0;
  }

  int order_ = 0;
  std::array<double, kMaxJetOrder + 1> c_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator+(double b, Jet a) { return a += b; }
inline Jet operator-(Jet a, double b) { return a += -b; }
inline Jet operator-(double b, const Jet& a) {
  Jet r = a;
  r *= -1.0;
  return r += b;
}
inline Jet operator-(Jet a) { return a *= -1.0; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator*(double b, Jet a) { return a *= b; }
inline Jet operator/(Jet a, double b) { return a *= 1.0 / b; }

// f(x) given f^(k)(x.value()) for k = 0..x.order().
template <class Derivs>
Jet compose(const Jet& x, const Derivs& f) {
  const int n = x.order();
  Jet delta = x;
  delta[0] = 0.0;
  Jet r(f[0], n);
  Jet power(1.0, n);
  double fact = 1.0;
  for (int k = 1; k <= n; ++k) {
    power = power * delta;
    fact *= k;
    Jet term = power;
    term *= f[k] / fact;
    r += term;
  }
  return r;
}

inline Jet pow(const Jet& x, double alpha) {
  std::array<double, kMaxJetOrder + 1> f{};
  const double x0 = x.value();
  double coef = 1.0;
  for (int k = 0; k <= x.order(); ++k) {
    f[k] = coef * std::pow(x0, alpha - k);
    coef *= alpha - k;
  }
  return compose(x, f);
}

inline Jet inv(const Jet& x) { return pow(x, -1.0); }
inline Jet sqrt(const Jet& x) { return pow(x, 0.5); }
inline Jet cbrt(const Jet& x) {
  // Real cube root, valid for negative arguments as well.
  return x.value() < 0.0 ? -pow(-x, 1.0 / 3.0) : pow(x, 1.0 / 3.0);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
inline Jet operator/(double a, const Jet& b) { return a * inv(b); }

inline Jet exp(const Jet& x) {
  std::array<double, kMaxJetOrder + 1> f{};
  f.fill(std::exp(x.value()));
  return compose(x, f);
}

inline Jet sin(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const std::array<double, 4> cycle{s, c, -s, -c};
  std::array<double, kMaxJetOrder + 1> f{};
  for (int k = 0; k <= kMaxJetOrder; ++k) f[k] = cycle[k % 4];
  return compose(x, f);
}

inline Jet cos(const Jet& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const std::array<double, 4> cycle{c, -s, -c, s};
  std::array<double, kMaxJetOrder + 1> f{};
  for (int k = 0; k <= kMaxJetOrder; ++k) f[k] = cycle[k % 4];
  return compose(x, f);
}

// atan2(y, x) continued from its value at t0 by integrating its derivative.
inline Jet atan2(const Jet& y, const Jet& x) {
  if (std::min(x.order(), y.order()) == 0) return Jet(std::atan2(y.value(), x.value()), 0);
  const Jet r2 = x * x + y * y;
  const Jet d = (x * y.derivative() - y * x.derivative()) / r2.truncated(r2.order() - 1);
  return d.integral(std::atan2(y.value(), x.value())).truncated(std::min(x.order(), y.order()));
}

// Jet-valued matrix with Taylor coefficients c[k].
template <int R, int C>
struct MatJet {
  using Mat = Eigen::Matrix<double, R, C>;

  int order = 0;
  std::array<Mat, kMaxJetOrder + 1> c;

  MatJet() { clear(0); }
  explicit MatJet(int n) { clear(n); }

  static MatJet constant(const Mat& m, int n) {
    MatJet r(n);
    r.c[0] = m;
    return r;
  }

  void clear(int n) {
    order = n;
    for (auto& m : c) m.setZero();
  }

  const Mat& value() const { return c[0]; }

  Jet entry(int i, int j) const {
    Jet r(0.0, order);
    for (int k = 0; k <= order; ++k) r[k] = c[k](i, j);
    return r;
  }

  void set_entry(int i, int j, const Jet& x) {
    for (int k = 0; k <= order; ++k) c[k](i, j) = k <= x.order() ? x[k] : 0.0;
  }

  template <int BR, int BC>
  MatJet<BR, BC> block(int i, int j) const {
    MatJet<BR, BC> r(order);
    for (int k = 0; k <= order; ++k) r.c[k] = c[k].template block<BR, BC>(i, j);
    return r;
  }

  template <int BR, int BC>
  void set_block(int i, int j, const MatJet<BR, BC>& b) {
    for (int k = 0; k <= order; ++k) {
      if (k <= b.order)
        c[k].template block<BR, BC>(i, j) = b.c[k];
      else
        c[k].template block<BR, BC>(i, j).setZero();
    }
  }

  MatJet<C, R> transpose() const {
    MatJet<C, R> r(order);
    for (int k = 0; k <= order; ++k) r.c[k] = c[k].transpose();
    return r;
  }

  MatJet derivative() const {
    MatJet r(std::max(order - 1, 0));
    for (int k = 0; k < order; ++k) r.c[k] = (k + 1) * c[k + 1];
    return r;
  }

  MatJet truncated(int n) const {
    MatJet r = *this;
    for (int k = n + 1; k <= kMaxJetOrder; ++k) r.c[k].setZero();
    r.order = std::min(n, order);
    return r;
  }

  MatJet& operator+=(const MatJet& o) {
    order = std::min(order, o.order);
    for (int k = 0; k <= order; ++k) c[k] += o.c[k];
    for (int k = order + 1; k <= kMaxJetOrder; ++k) c[k].setZero();
    return *this;
  }
  MatJet& operator-=(const MatJet& o) {
    order = std::min(order, o.order);
    for (int k = 0; k <= order; ++k) c[k] -= o.c[k];
    for (int k = order + 1; k <= kMaxJetOrder; ++k) c[k].setZero();
    return *this;
  }
};

template <int R, int C>
MatJet<R, C> operator+(MatJet<R, C> a, const MatJet<R, C>& b) {
  return a += b;
}
template <int R, int C>
MatJet<R, C> operator-(MatJet<R, C> a, const MatJet<R, C>& b) {
  return a -= b;
}

template <int R, int K, int C>
MatJet<R, C> operator*(const MatJet<R, K>& a, const MatJet<K, C>& b) {
  MatJet<R, C> r(std::min(a.order, b.order));
  for (int k = 0; k <= r.order; ++k)
    for (int i = 0; i <= k; ++i) r.c[k].noalias() += a.c[i] * b.c[k - i];
  return r;
}

template <int R, int K, int C>
MatJet<R, C> operator*(const Eigen::Matrix<double, R, K>& a, const MatJet<K, C>& b) {
  MatJet<R, C> r(b.order);
  for (int k = 0; k <= b.order; ++k) r.c[k].noalias() = a * b.c[k];
  return r;
}

template <int R, int K, int C>
MatJet<R, C> operator*(const MatJet<R, K>& a, const Eigen::Matrix<double, K, C>& b) {
  MatJet<R, C> r(a.order);
  for (int k = 0; k <= a.order; ++k) r.c[k].noalias() = a.c[k] * b;
  return r;
}

template <int R, int C>
MatJet<R, C> operator*(const Jet& s, const MatJet<R, C>& a) {
  MatJet<R, C> r(std::min(s.order(), a.order));
  for (int k = 0; k <= r.order; ++k)
    for (int i = 0; i <= k; ++i) r.c[k] += s[i] * a.c[k - i];
  return r;
}

template <int R, int C>
MatJet<R, C> operator*(double s, MatJet<R, C> a) {
  for (int k = 0; k <= a.order; ++k) a.c[k] *= s;
  return a;
}

using Mat2Jet = MatJet<2, 2>;
using Mat6Jet = MatJet<6, 6>;
using Vec4Jet = MatJet<4, 1>;
using Vec6Jet = MatJet<6, 1>;

inline Jet dot(const Vec4Jet& a, const Vec4Jet& b) { return (a.transpose() * b).entry(0, 0); }

inline Jet det2(const Mat2Jet& m) {
  return m.entry(0, 0) * m.entry(1, 1) - m.entry(0, 1) * m.entry(1, 0);
}

inline Mat2Jet inverse2(const Mat2Jet& m) {
  const Jet id = inv(det2(m));
  Mat2Jet adj(m.order);
  adj.set_entry(0, 0, m.entry(1, 1));
  adj.set_entry(0, 1, -m.entry(0, 1));
  adj.set_entry(1, 0, -m.entry(1, 0));
  adj.set_entry(1, 1, m.entry(0, 0));
  return id * adj;
}

}  // namespace liesphere
