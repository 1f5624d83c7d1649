#pragma once
// Double-precision Hamiltonians with gradient and Hessian.

#include "bgnf/polyalg/polynomial.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace bgnf::numeric {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Value, gradient and Hessian in the ordering (y1, y2, x1, x2).
struct Evaluable {
  std::function<double(const Vec4&)> value;
  std::function<Vec4(const Vec4&)> gradient;
  std::function<Mat4(const Vec4&)> hessian;
};

/// Second-order jet in four variables, enough to differentiate closed
/// forms twice.
struct Jet {
  double v = 0;
  Vec4 g = Vec4::Zero();
  Mat4 h = Mat4::Zero();

  Jet() = default;
  Jet(double c) : v(c) {}
  static Jet variable(int i, double x) {
    Jet j(x);
    j.g(i) = 1;
    return j;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v + b.v;
    r.g = a.g + b.g;
    r.h = a.h + b.h;
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v - b.v;
    r.g = a.g - b.g;
    r.h = a.h - b.h;
    return r;
  }
  friend Jet operator-(const Jet& a) { return Jet(0) - a; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v = a.v * b.v;
    r.g = a.v * b.g + b.v * a.g;
    r.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
    return r;
  }
  /// f(a) for a scalar function with derivatives f0, f1, f2 at a.v.
  static Jet chain(const Jet& a, double f0, double f1, double f2) {
    Jet r;
    r.v = f0;
    r.g = f1 * a.g;
    r.h = f1 * a.h + f2 * a.g * a.g.transpose();
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    const double x = b.v;
    return a * chain(b, 1 / x, -1 / (x * x), 2 / (x * x * x));
  }
};

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return Jet::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

/// Wraps a closed form f(y1, y2, x1, x2) written generically over the
/// number type.
template <class F>
Evaluable from_closed_form(F f) {
  Evaluable e;
  e.value = [f](const Vec4& v) { return f(v(0), v(1), v(2), v(3)); };
  auto jet = [f](const Vec4& v) {
    return f(Jet::variable(0, v(0)), Jet::variable(1, v(1)), Jet::variable(2, v(2)), Jet::variable(3, v(3)));
  };
  e.gradient = [jet](const Vec4& v) { return Vec4(jet(v).g); };
  e.hessian = [jet](const Vec4& v) { return Mat4(jet(v).h); };
  return e;
}

/// Real-chart polynomial evaluated in doubles.
inline Evaluable from_polynomial(const Polynomial& p) {
  struct Mono {
    double c;
    std::array<int, 4> e;
  };
  auto terms = std::make_shared<std::vector<Mono>>();
  int maxdeg = 0;
  for (const auto& t : p.terms()) {
    terms->push_back({t.c.re.to_double(), {t.e[0], t.e[1], t.e[2], t.e[3]}});
    maxdeg = std::max(maxdeg, degree(t.e));
  }
  auto powers = [maxdeg](const Vec4& v) {
    std::vector<std::array<double, 4>> pw(std::size_t(maxdeg + 1));
    pw[0] = {1, 1, 1, 1};
    for (int k = 1; k <= maxdeg; ++k)
      for (int i = 0; i < 4; ++i) pw[std::size_t(k)][std::size_t(i)] = pw[std::size_t(k - 1)][std::size_t(i)] * v(i);
    return pw;
  };
  // value of monomial with exponent e, where e[i] -= di[i] and a factor
  // falling-power is applied
  auto term = [](const std::vector<std::array<double, 4>>& pw, const std::array<int, 4>& e,
                 const std::array<int, 4>& di) {
    double m = 1;
    for (int i = 0; i < 4; ++i) {
      int k = e[std::size_t(i)];
      for (int j = 0; j < di[std::size_t(i)]; ++j) m *= double(k - j);
      int rem = k - di[std::size_t(i)];
      if (rem < 0) return 0.0;
      m *= pw[std::size_t(rem)][std::size_t(i)];
    }
    return m;
  };
  Evaluable ev;
  ev.value = [terms, powers, term](const Vec4& v) {
    auto pw = powers(v);
    double s = 0;
    for (const auto& m : *terms) s += m.c * term(pw, m.e, {0, 0, 0, 0});
    return s;
  };
  ev.gradient = [terms, powers, term](const Vec4& v) {
    auto pw = powers(v);
    Vec4 g = Vec4::Zero();
    for (const auto& m : *terms) {
      for (int i = 0; i < 4; ++i) {
        if (m.e[std::size_t(i)] == 0) continue;
        std::array<int, 4> di{};
        di[std::size_t(i)] = 1;
        g(i) += m.c * term(pw, m.e, di);
      }
    }
    return g;
  };
  ev.hessian = [terms, powers, term](const Vec4& v) {
    auto pw = powers(v);
    Mat4 h = Mat4::Zero();
    for (const auto& m : *terms) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          std::array<int, 4> di{};
          di[std::size_t(i)] += 1;
          di[std::size_t(j)] += 1;
          double val = m.c * term(pw, m.e, di);
          h(i, j) += val;
          if (i != j) h(j, i) += val;
        }
      }
    }
    return h;
  };
  return ev;
}

}  // namespace bgnf::numeric
