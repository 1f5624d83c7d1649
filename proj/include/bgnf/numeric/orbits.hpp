#pragma once
// Periodic orbits on a fixed energy level by Newton shooting, seeded from
// the circular solutions of a normal form.

#include "bgnf/hopf/analysis.hpp"
#include "bgnf/numeric/flow.hpp"

#include <Eigen/QR>

#include <functional>
#include <optional>
#include <string>

namespace bgnf::numeric {

struct PhasePoint {
  Vec4 x = Vec4::Zero();
  double energy = 0;
};

struct OrbitRecord {
  Vec4 x0 = Vec4::Zero();
  double period = 0;
  double energy = 0;
  /// |flow_T(x0) - x0| at convergence.
  double residual = 0;
  std::string tag;
  int iterations = 0;
};

struct OrbitSeed {
  Vec4 x = Vec4::Zero();
  double period = 0;
  std::string tag;
};

struct ShootingOptions {
  double tol = 1e-10;
  double energy_tol = 1e-12;
  int max_iter = 40;
  IntegrationOptions integration;
};

/// Newton shooting on the hyperplane through the seed orthogonal to the
/// seed velocity. Unknowns: three section coordinates and the period.
/// Equations: flow_T(x) - x = 0 and H(x) = E, solved in the least-squares
/// sense (the system is 5 x 4 and consistent).
inline OrbitRecord find_periodic_orbit(const Evaluable& h, double E, const OrbitSeed& seed,
                                       const ShootingOptions& opt = {}) {
  const Vec4 v = hamiltonian_field(h.gradient(seed.x));
  if (v.norm() < 1e-300) throw numeric_error("shooting: seed is an equilibrium");
  // orthonormal basis of the section tangent space v-perp
  Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix<double, 4, 1>>(v).householderQ() * Mat4::Identity();
  Eigen::Matrix<double, 4, 3> B = q.rightCols<3>();

  Eigen::Vector3d s = Eigen::Vector3d::Zero();
  double T = seed.period;
  auto residual = [&](const Eigen::Vector3d& sv, double t, FlowWithMonodromy* fm) {
    Vec4 x = seed.x + B * sv;
    FlowWithMonodromy f = flow_with_monodromy(h, x, t, opt.integration);
    Eigen::Matrix<double, 5, 1> r;
    r.head<4>() = f.x - x;
    r(4) = h.value(x) - E;
    if (fm) *fm = f;
    return r;
  };
  OrbitRecord rec;
  rec.tag = seed.tag;
  rec.energy = E;
  FlowWithMonodromy fm;
  Eigen::Matrix<double, 5, 1> r = residual(s, T, &fm);
  for (int it = 0; it < opt.max_iter; ++it) {
    const Vec4 x = seed.x + B * s;
    if (r.head<4>().norm() <= opt.tol && std::abs(r(4)) <= opt.energy_tol) {
      rec.x0 = x;
      rec.period = T;
      rec.residual = r.head<4>().norm();
      rec.iterations = it;
      return rec;
    }
    Eigen::Matrix<double, 5, 4> jac;
    jac.block<4, 3>(0, 0) = (fm.m - Mat4::Identity()) * B;
    jac.block<4, 1>(0, 3) = hamiltonian_field(h.gradient(fm.x));
    jac.block<1, 3>(4, 0) = h.gradient(x).transpose() * B;
    jac(4, 3) = 0;
    Eigen::Vector4d du = jac.colPivHouseholderQr().solve(-r);
    double lambda = 1;
    bool improved = false;
    for (int k = 0; k < 8; ++k) {
      Eigen::Vector3d s_new = s + lambda * du.head<3>();
      double T_new = T + lambda * du(3);
      if (T_new <= 0) {
        lambda /= 2;
        continue;
      }
      FlowWithMonodromy fm_new;
      Eigen::Matrix<double, 5, 1> r_new = residual(s_new, T_new, &fm_new);
      if (r_new.norm() < r.norm() || k == 7) {
        s = s_new;
        T = T_new;
        r = r_new;
        fm = fm_new;
        improved = true;
        break;
      }
      lambda /= 2;
    }
    if (!improved) break;
  }
  throw numeric_error("shooting did not converge (residual " + std::to_string(r.norm()) + ")");
}

/// Harmonic approximation of the axis-j orbit: z_j = sqrt(2E/alpha_j).
inline OrbitSeed harmonic_seed(const Frequencies& alpha, int axis, double E) {
  const double a = (axis == 1 ? alpha.a1 : alpha.a2).to_double();
  OrbitSeed s;
  s.x(axis == 1 ? 2 : 3) = std::sqrt(2 * E / a);
  s.period = 2 * 3.14159265358979323846 / a;
  s.tag = axis == 1 ? "axis-1" : "axis-2";
  return s;
}

/// The circular solution z_j = c_j(E) of H_N mapped through phi, with the
/// period 2 pi / omega_j(E).
inline OrbitSeed normal_form_seed(const NormalFormResult& nf, int axis, double E) {
  const SeriesE c2 = amplitude_series(nf, axis);
  const FrequencySeries fs = frequency_series(nf);
  const SeriesE& om = axis == 1 ? *fs.omega1 : *fs.omega2;
  const double c = std::sqrt(std::max(c2.evaluate(E), 0.0));
  std::array<double, 4> w{0, 0, 0, 0};
  w[axis == 1 ? 2 : 3] = c;
  auto x = nf.phi.evaluate(w);
  OrbitSeed s;
  s.x = Vec4(x[0], x[1], x[2], x[3]);
  s.period = 2 * 3.14159265358979323846 / om.evaluate(E);
  s.tag = axis == 1 ? "axis-1" : "axis-2";
  return s;
}

/// Direct shooting from seed(E); on failure, continuation along a geometric
/// energy grid starting at min(1e-4, E/2), each orbit seeding the next.
inline OrbitRecord continue_orbit(const Evaluable& h, double E, const std::function<OrbitSeed(double)>& seed,
                                  const ShootingOptions& opt = {}) {
  try {
    return find_periodic_orbit(h, E, seed(E), opt);
  } catch (const numeric_error&) {
  }
  double e = std::min(1e-4, E / 2);
  OrbitRecord rec = find_periodic_orbit(h, e, seed(e), opt);
  while (e < E) {
    double next = std::min(E, e * 1.5);
    OrbitSeed s{rec.x0 * std::sqrt(next / e), rec.period, rec.tag};
    rec = find_periodic_orbit(h, next, s, opt);
    e = next;
  }
  return rec;
}

/// Signed number of turns of the (x1, x2) projection around the origin
/// over one period (positive: counter-clockwise).
inline double projected_winding(const Evaluable& h, const OrbitRecord& orb, const IntegrationOptions& opt = {}) {
  Trajectory tr = integrate(h, orb.x0, 0, orb.period, opt, true);
  double total = 0;
  double prev = std::atan2(orb.x0(3), orb.x0(2));
  for (const auto& x : tr.x) {
    double a = std::atan2(x(3), x(2));
    double d = a - prev;
    while (d > 3.14159265358979323846) d -= 2 * 3.14159265358979323846;
    while (d < -3.14159265358979323846) d += 2 * 3.14159265358979323846;
    total += d;
    prev = a;
  }
  return total / (2 * 3.14159265358979323846);
}

}  // namespace bgnf::numeric
