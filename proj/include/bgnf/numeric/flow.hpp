#pragma once
// Hamiltonian flow y' = -H_x, x' = H_y and its linearization, integrated
// with an adaptive Runge-Kutta-Fehlberg 7(8) pair.

#include "bgnf/numeric/evaluable.hpp"

#include <boost/numeric/odeint/integrate/integrate_adaptive.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgnf::numeric {

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  double initial_step = 1e-2;
  std::size_t max_steps = 20'000'000;
};

/// J grad H with J = [[0, -I], [I, 0]] in the ordering (y, x).
inline Vec4 hamiltonian_field(const Vec4& grad) { return Vec4(-grad(2), -grad(3), grad(0), grad(1)); }

inline Mat4 symplectic_J() {
  Mat4 j = Mat4::Zero();
  j(0, 2) = -1;
  j(1, 3) = -1;
  j(2, 0) = 1;
  j(3, 1) = 1;
  return j;
}

namespace detail {

/// Runs the controlled RKF78 stepper on a fixed-size state from t0 to t1,
/// calling obs(t, state) after every accepted step.
template <std::size_t N, class Sys, class Obs>
void run_adaptive(Sys&& sys, std::array<double, N>& s, double t0, double t1, const IntegrationOptions& opt, Obs&& obs) {
  namespace ode = boost::numeric::odeint;
  using state = std::array<double, N>;
  if (t0 == t1) return;
  auto stepper = ode::make_controlled(opt.abs_tol, opt.rel_tol, ode::runge_kutta_fehlberg78<state>());
  std::size_t steps = 0;
  const double dt = t1 > t0 ? opt.initial_step : -opt.initial_step;
  try {
    ode::integrate_adaptive(stepper, sys, s, t0, t1, dt, [&](const state& x, double t) {
      for (double v : x) {
        if (!std::isfinite(v)) throw numeric_error("non-finite state at t = " + std::to_string(t));
      }
      if (++steps > opt.max_steps) throw numeric_error("step limit exceeded at t = " + std::to_string(t));
      obs(t, x);
    });
  } catch (const ode::step_adjustment_error& e) {
    throw numeric_error(std::string("step size underflow: ") + e.what());
  }
}

}  // namespace detail

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec4> x;
  /// max |H(x(t)) - H(x(0))| over the recorded steps.
  double energy_drift = 0;
};

/// Integrates the flow from x0 over [t0, t1] (t1 < t0 runs backwards).
inline Trajectory integrate(const Evaluable& h, const Vec4& x0, double t0, double t1, const IntegrationOptions& opt = {},
                            bool record = true) {
  std::array<double, 4> s{x0(0), x0(1), x0(2), x0(3)};
  const double e0 = h.value(x0);
  Trajectory tr;
  auto sys = [&](const std::array<double, 4>& x, std::array<double, 4>& dx, double) {
    Vec4 f = hamiltonian_field(h.gradient(Vec4(x[0], x[1], x[2], x[3])));
    for (int i = 0; i < 4; ++i) dx[std::size_t(i)] = f(i);
  };
  detail::run_adaptive(sys, s, t0, t1, opt, [&](double t, const std::array<double, 4>& x) {
    Vec4 v(x[0], x[1], x[2], x[3]);
    tr.energy_drift = std::max(tr.energy_drift, std::abs(h.value(v) - e0));
    if (record) {
      tr.t.push_back(t);
      tr.x.push_back(v);
    }
  });
  if (!record) {
    tr.t.push_back(t1);
    tr.x.push_back(Vec4(s[0], s[1], s[2], s[3]));
  }
  return tr;
}

/// Time-T map.
inline Vec4 flow(const Evaluable& h, const Vec4& x0, double T, const IntegrationOptions& opt = {}) {
  return integrate(h, x0, 0, T, opt, false).x.back();
}

struct FlowWithMonodromy {
  Vec4 x;
  /// D(flow_T)(x0), the solution of W' = J L(t) W with W(0) = I.
  Mat4 m;
};

inline FlowWithMonodromy flow_with_monodromy(const Evaluable& h, const Vec4& x0, double T,
                                             const IntegrationOptions& opt = {}) {
  std::array<double, 20> s{};
  for (int i = 0; i < 4; ++i) {
    s[std::size_t(i)] = x0(i);
    s[std::size_t(4 + 5 * i)] = 1;
  }
  const Mat4 J = symplectic_J();
  auto sys = [&](const std::array<double, 20>& z, std::array<double, 20>& dz, double) {
    Vec4 x(z[0], z[1], z[2], z[3]);
    Vec4 f = hamiltonian_field(h.gradient(x));
    Mat4 jl = J * h.hessian(x);
    Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> w(z.data() + 4);
    Eigen::Map<Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> dw(dz.data() + 4);
    dw = jl * w;
    for (int i = 0; i < 4; ++i) dz[std::size_t(i)] = f(i);
  };
  detail::run_adaptive(sys, s, 0, T, opt, [](double, const std::array<double, 20>&) {});
  FlowWithMonodromy out;
  out.x = Vec4(s[0], s[1], s[2], s[3]);
  out.m = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(s.data() + 4);
  return out;
}

}  // namespace bgnf::numeric
