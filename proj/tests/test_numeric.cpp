// Numerical layer: flow accuracy, the quaternion frame, periodic orbits,
// numerical rotation numbers and the series-versus-numeric report.

#include <bgnf/models.hpp>
#include <bgnf/numeric/report.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace bgnf;
using namespace bgnf::numeric;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct ModelCase {
  ModelBundle m;
  NormalFormResult nf;
};

ModelCase hill_case() {
  ModelBundle m = hill_regularized(6);
  NormalFormResult nf = normal_form_for(m, 6);
  return {std::move(m), std::move(nf)};
}

ModelCase hh_case() {
  ModelBundle m = henon_heiles(4);
  NormalFormResult nf = normal_form_for(m, 4);
  return {std::move(m), std::move(nf)};
}

OrbitRecord axis_orbit(const ModelCase& c, int axis, double E) {
  return continue_orbit(c.m.closed_form, E, [&](double e) { return normal_form_seed(c.nf, axis, e); });
}

}  // namespace

TEST_CASE("flow of the harmonic oscillator", "[numeric][flow]") {
  const ModelBundle q = quadratic_model(Scalar(1), Scalar(2));
  const Vec4 x0(0.01, -0.02, 0.03, 0.005);
  for (double t : {0.7, 5.0, 40.0}) {
    CAPTURE(t);
    const Vec4 x = flow(q.closed_form, x0, t);
    // z_j(t) = exp(-i alpha_j t) z_j(0) with z = x + i y
    for (int j = 0; j < 2; ++j) {
      const double a = j == 0 ? 1.0 : 2.0;
      const std::complex<double> z0(x0(2 + j), x0(j)), zt = std::exp(std::complex<double>(0, -a * t)) * z0;
      CHECK(std::abs(x(2 + j) - zt.real()) < 1e-10);
      CHECK(std::abs(x(j) - zt.imag()) < 1e-10);
    }
  }
}

TEST_CASE("energy conservation and reversibility on Hill", "[numeric][flow]") {
  const ModelBundle m = hill_regularized(6);
  const Vec4 x0(0.02, -0.01, 0.03, 0.015);
  Trajectory tr = integrate(m.closed_form, x0, 0, 100);
  CHECK(tr.energy_drift < 1e-10);
  const Vec4 back = flow(m.closed_form, tr.x.back(), -100);
  CHECK((back - x0).norm() < 1e-9);
}

TEST_CASE("quaternion frame", "[numeric][frame]") {
  SECTION("at grad H = (0, 0, 1, 0)") {
    FrameBasis f = quaternion_frame(Vec4(0, 0, 1, 0));
    CHECK(f.v[0] == Vec4(0, 0, 1, 0));
    CHECK(f.v[1] == Vec4(0, -1, 0, 0));
    CHECK(f.v[2] == Vec4(0, 0, 0, -1));
    CHECK(f.v[3] == Vec4(-1, 0, 0, 0));
  }
  SECTION("orthonormal, symplectic pair (V1, V2), V3 along X_H") {
    std::mt19937 rng(99);
    std::normal_distribution<double> g;
    for (int n = 0; n < 100; ++n) {
      const Vec4 grad(g(rng), g(rng), g(rng), g(rng));
      FrameBasis f = quaternion_frame(grad);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(f.v[std::size_t(i)].dot(f.v[std::size_t(j)]) - (i == j)) < 1e-14);
      CHECK(std::abs(omega0(f.v[1], f.v[2]) - 1) < 1e-14);
      CHECK(std::abs(omega0(f.v[0], f.v[1])) < 1e-14);
      CHECK(std::abs(omega0(f.v[0], f.v[2])) < 1e-14);
      CHECK((f.v[3] - hamiltonian_field(grad) / grad.norm()).norm() < 1e-14);
    }
  }
  SECTION("zero gradient is rejected") { CHECK_THROWS_AS(quaternion_frame(Vec4::Zero()), numeric_error); }
}

TEST_CASE("winding rate of theta' = a + b cos theta", "[numeric][winding]") {
  CHECK(winding_rate(2, 1) == Catch::Approx(std::sqrt(3.0)));
  CHECK(winding_rate(1, 2) == 0);
  CHECK(winding_rate(-2, 1) == Catch::Approx(-std::sqrt(3.0)));
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double a = -2 + 0.2 * i, b = -2 + 0.2 * j;
      if (std::abs(std::abs(a) - std::abs(b)) < 0.1) continue;
      CAPTURE(a, b);
      CHECK(std::abs(winding_rate_numeric(a, b) - winding_rate(a, b)) < 1e-3);
    }
  }
}

TEST_CASE("quadratic model: exact period and rotation number", "[numeric][rotation]") {
  const ModelBundle q = quadratic_model(Scalar(1), Scalar(2));
  const OrbitRecord orb = find_periodic_orbit(q.closed_form, 1e-3, harmonic_seed(q.alpha, 1, 1e-3));
  CHECK(std::abs(orb.period - kTwoPi) < 1e-9);
  RotationEstimate r = rotation_number_numeric(q.closed_form, orb);
  CHECK(std::abs(r.rho - 3) < 1e-9);
}

TEST_CASE("Hill axis orbits", "[numeric][hill]") {
  const ModelCase c = hill_case();
  const double E = 2e-3;
  const FrequencySeries fs = frequency_series(c.nf);
  for (int axis : {1, 2}) {
    CAPTURE(axis);
    const OrbitRecord orb = axis_orbit(c, axis, E);
    CHECK(std::abs(c.m.closed_form.value(orb.x0) - E) < 1e-12);
    CHECK(orb.residual < 1e-9);
    const SeriesE& om = axis == 1 ? *fs.omega1 : *fs.omega2;
    CHECK(std::abs(orb.period - kTwoPi / om.evaluate(E)) < 2e-4);

    RotationEstimate r = rotation_number_numeric(c.m.closed_form, orb);
    const RotationSeries rs = rotation_series(c.nf);
    const SeriesE& rho = axis == 1 ? rs.axis1.rho : rs.axis2.rho;
    CHECK(std::abs(r.rho - rho.evaluate(E)) < 5e-4);
    CHECK(r.det_defect < 1e-8);
    CHECK(r.unit_eigen_defect < 1e-6);

    // rotating the initial (V1, V2) pair moves theta(0) but not the estimate
    RotationOptions shifted;
    shifted.theta0 = 1.3;
    RotationEstimate r2 = rotation_number_numeric(c.m.closed_form, orb, shifted);
    CHECK(std::abs(r2.rho - r.rho) <= std::max(r.err_bar, r2.err_bar));
  }
}

TEST_CASE("Henon-Heiles axis orbits", "[numeric][hh]") {
  const ModelCase c = hh_case();
  const double E = 1e-3;
  const RotationSeries rs = rotation_series(c.nf);
  const OrbitRecord o1 = axis_orbit(c, 1, E), o2 = axis_orbit(c, 2, E);
  CHECK(std::abs(rotation_number_numeric(c.m.closed_form, o1).rho - rs.axis1.rho.evaluate(E)) < 5e-4);
  CHECK(std::abs(rotation_number_numeric(c.m.closed_form, o2).rho - rs.axis2.rho.evaluate(E)) < 5e-4);
  // the two orbits of the link turn in opposite directions in the (x1, x2) plane
  const double w1 = projected_winding(c.m.closed_form, o1), w2 = projected_winding(c.m.closed_form, o2);
  CHECK(std::abs(std::abs(w1) - 1) < 1e-6);
  CHECK(std::abs(w1 + w2) < 1e-6);
}

TEST_CASE("series versus numeric report", "[numeric][report]") {
  const std::vector<double> energies{1e-3, 2e-3, 4e-3};
  SECTION("Hill: rho differences shrink like E^3") {
    const ModelCase c = hill_case();
    SeriesNumericReport rep = series_vs_numeric_report(c.m.closed_form, c.nf, energies);
    REQUIRE(rep.rows.size() == 3);
    REQUIRE(rep.fit_rho1.valid);
    CHECK(rep.fit_rho1.q >= 2.5);
    CHECK(rep.fit_rho2.q >= 2.5);
    CHECK(rep.fit_product.q >= 2.5);
    CHECK(rep.tsv().find(SeriesNumericReport::columns) != std::string::npos);
  }
  SECTION("Henon-Heiles: product differences shrink like E^2") {
    const ModelCase c = hh_case();
    SeriesNumericReport rep = series_vs_numeric_report(c.m.closed_form, c.nf, energies);
    REQUIRE(rep.fit_product.valid);
    CHECK(rep.fit_product.q >= 1.5);
  }
  SECTION("quadratic: differences are round-off and excluded from fits") {
    const ModelBundle q = quadratic_model(Scalar(1), Scalar(2));
    SeriesNumericReport rep = series_vs_numeric_report(q.closed_form, normal_form_for(q, 4), energies);
    for (const ReportRow& row : rep.rows) CHECK(std::abs(row.rho1_num - 3) < 1e-9);
    CHECK_FALSE(rep.fit_rho1.valid);
  }
  SECTION("power fit") {
    PowerFit f = fit_power({1e-3, 2e-3, 4e-3}, {2e-9, 1.6e-8, 1.28e-7});
    CHECK(f.valid);
    CHECK(f.q == Catch::Approx(3.0));
    CHECK_FALSE(fit_power({1e-3, 2e-3}, {1e-16, 1e-16}).valid);
  }
}
