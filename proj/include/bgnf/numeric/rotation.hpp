#pragma once
// Rotation numbers of the linearized flow along a periodic orbit, measured
// in the quaternion frame, and the scalar winding-rate model
// theta' = a + b cos(theta).

#include "bgnf/numeric/frame.hpp"
#include "bgnf/numeric/orbits.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace bgnf::numeric {

/// lim theta(t)/t for theta' = a + b cos(theta).
inline double winding_rate(double a, double b) {
  if (std::abs(a) <= std::abs(b)) return 0;
  return (a > 0 ? 1 : -1) * std::sqrt(a * a - b * b);
}

/// Integrates theta' = a + b cos(theta) from theta = 0. When theta completes
/// a full turn at time tau the rate is +-2 pi / tau (the equation is
/// autonomous, so every turn takes the same time); otherwise theta(t)/t at
/// t = horizon.
inline double winding_rate_numeric(double a, double b, double horizon = 1e4, const IntegrationOptions& opt = {}) {
  constexpr double two_pi = 2 * std::numbers::pi;
  auto sys = [a, b](const std::array<double, 1>& th, std::array<double, 1>& d, double) { d[0] = a + b * std::cos(th[0]); };
  auto advance = [&](double th, double dt) {
    std::array<double, 1> s{th};
    detail::run_adaptive(sys, s, 0, dt, opt, [](double, const std::array<double, 1>&) {});
    return s[0];
  };
  const double chunk = 1.0;
  double t = 0, th = 0;
  while (t < horizon) {
    const double next = advance(th, chunk);
    if (std::abs(next) >= two_pi) {
      // bisect the crossing time inside this chunk
      double lo = 0, hi = chunk;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(advance(th, mid)) >= two_pi ? hi : lo) = mid;
      }
      const double tau = t + 0.5 * (lo + hi);
      return (next > 0 ? 1 : -1) * two_pi / tau;
    }
    th = next;
    t += chunk;
  }
  return th / t;
}

struct RotationOptions {
  /// Horizons 2^k periods for k = min_log2 .. max_log2.
  int min_log2 = 4;
  int max_log2 = 6;
  double theta0 = 0;
  IntegrationOptions integration;
};

struct RotationEstimate {
  /// Final estimate: the monodromy value when the reduced monodromy is
  /// well-conditioned elliptic or hyperbolic, else the averaged value.
  double rho = 0;
  double err_bar = 0;
  /// T <theta'> / 2 pi from the weighted average at the longest horizon.
  double rho_average = 0;
  double rho_average_increment = 0;
  std::optional<double> rho_monodromy;
  std::string method;
  /// theta at the end of each period of the longest horizon.
  std::vector<double> theta_history;
  /// Reduced 2x2 monodromy in the (V1, V2) frame at x0.
  Eigen::Matrix2d reduced_monodromy;
  double det_defect = 0;
  /// Distances of the two eigenvalues closest to 1.
  double unit_eigen_defect = 0;
};

namespace detail {

/// exp(-1/(s(1-s))) on (0, 1).
inline double bump(double s) { return (s <= 0 || s >= 1) ? 0.0 : std::exp(-1.0 / (s * (1 - s))); }

struct AverageRun {
  double average = 0;
  std::vector<double> theta;
};

/// Weighted time average of theta' over n periods; x is reset to x0 at the
/// start of each period so that the orbit cannot drift away.
inline AverageRun weighted_average(const Evaluable& h, const OrbitRecord& orb, int n, double theta0,
                                   const IntegrationOptions& opt) {
  const double T = orb.period, total = n * T;
  std::array<double, 7> s{};
  s[4] = theta0;
  AverageRun run;
  run.theta.reserve(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < 4; ++i) s[std::size_t(i)] = orb.x0(i);
    const double t0 = k * T;
    auto sys = [&](const std::array<double, 7>& z, std::array<double, 7>& dz, double t) {
      const Vec4 x(z[0], z[1], z[2], z[3]);
      const Vec4 f = hamiltonian_field(h.gradient(x));
      for (int i = 0; i < 4; ++i) dz[std::size_t(i)] = f(i);
      const double td = theta_dot(h, x, z[4]);
      const double w = bump((t0 + t) / total);
      dz[4] = td;
      dz[5] = w * td;
      dz[6] = w;
    };
    run_adaptive(sys, s, 0, T, opt, [](double, const std::array<double, 7>&) {});
    run.theta.push_back(s[4]);
  }
  run.average = s[5] / s[6];
  return run;
}

/// Counter-clockwise rotation angle in [0, 2 pi) of an elliptic 2x2 map.
inline double elliptic_angle(const Eigen::Matrix2d& m) {
  const double c = std::clamp(0.5 * m.trace(), -1.0, 1.0);
  const double phi = std::acos(c);
  return m(1, 0) >= 0 ? phi : 2 * std::numbers::pi - phi;
}

}  // namespace detail

inline RotationEstimate rotation_number_numeric(const Evaluable& h, const OrbitRecord& orb,
                                                const RotationOptions& opt = {}) {
  constexpr double two_pi = 2 * std::numbers::pi;
  RotationEstimate est;
  const double T = orb.period;

  double prev = 0;
  for (int k = opt.min_log2; k <= opt.max_log2; ++k) {
    detail::AverageRun run = detail::weighted_average(h, orb, 1 << k, opt.theta0, opt.integration);
    const double rho = T * run.average / two_pi;
    if (k > opt.min_log2) est.rho_average_increment = std::abs(rho - prev);
    prev = rho;
    est.rho_average = rho;
    est.theta_history = std::move(run.theta);
  }
  if (opt.max_log2 <= opt.min_log2) est.rho_average_increment = std::numeric_limits<double>::quiet_NaN();

  // monodromy in the frame at x0, at the working tolerance and a looser one
  auto reduced = [&](const IntegrationOptions& io, Mat4* full) {
    FlowWithMonodromy fm = flow_with_monodromy(h, orb.x0, T, io);
    if (full) *full = fm.m;
    const FrameBasis fr = quaternion_frame(h.gradient(orb.x0));
    Eigen::Matrix2d m2;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m2(i, j) = fr.v[std::size_t(i + 1)].dot(fm.m * fr.v[std::size_t(j + 1)]);
    return m2;
  };
  Mat4 M;
  est.reduced_monodromy = reduced(opt.integration, &M);
  est.det_defect = std::abs(M.determinant() - 1);
  {
    Eigen::EigenSolver<Mat4> es(M);
    std::vector<double> d;
    for (int i = 0; i < 4; ++i) d.push_back(std::abs(es.eigenvalues()(i) - std::complex<double>(1, 0)));
    std::sort(d.begin(), d.end());
    est.unit_eigen_defect = d[1];
  }
  IntegrationOptions loose = opt.integration;
  loose.abs_tol *= 100;
  loose.rel_tol *= 100;
  const Eigen::Matrix2d m2_loose = reduced(loose, nullptr);

  auto from_monodromy = [&](const Eigen::Matrix2d& m2) -> std::optional<double> {
    const double half_tr = 0.5 * m2.trace();
    if (std::abs(half_tr) < 1 - 1e-6) {
      const double frac = detail::elliptic_angle(m2) / two_pi;
      return std::round(est.rho_average - frac) + frac;
    }
    if (std::abs(half_tr) > 1 + 1e-6) {
      // hyperbolic: integer for positive trace, half-integer for negative
      return half_tr > 0 ? std::round(est.rho_average) : std::floor(est.rho_average) + 0.5;
    }
    return std::nullopt;
  };
  est.rho_monodromy = from_monodromy(est.reduced_monodromy);
  const std::optional<double> loose_rho = from_monodromy(m2_loose);
  if (est.rho_monodromy && loose_rho && std::abs(*est.rho_monodromy - est.rho_average) < 0.25) {
    est.rho = *est.rho_monodromy;
    est.err_bar = std::max(std::abs(*est.rho_monodromy - *loose_rho), 1e-14);
    est.method = "monodromy";
  } else {
    est.rho = est.rho_average;
    est.err_bar = est.rho_average_increment;
    est.method = "weighted-average";
  }
  return est;
}

}  // namespace bgnf::numeric
