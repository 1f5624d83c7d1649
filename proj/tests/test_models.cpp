// Model bundles: Taylor polynomials against the closed forms, symmetries,
// frequencies, energy maps and the float path of the isosceles model.

#include "oracle.hpp"

#include <bgnf/models.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace bgnf;

namespace {

/// max over random points with |x|_inf <= r of |poly - closed| / |x|^(N+1).
double taylor_remainder_ratio(const ModelBundle& m, double r, int points, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-r, r);
  const numeric::Evaluable poly = numeric::from_polynomial(m.h);
  double worst = 0;
  for (int k = 0; k < points; ++k) {
    const numeric::Vec4 x(u(rng), u(rng), u(rng), u(rng));
    const double diff = std::abs(poly.value(x) - m.closed_form.value(x));
    worst = std::max(worst, diff / std::pow(x.norm(), m.order + 1));
  }
  return worst;
}

oracle::Poly var(int slot) {
  oracle::Mono e{0, 0, 0, 0};
  e[std::size_t(slot)] = 1;
  return {{e, oracle::real(1)}};
}

oracle::Poly scaled(const oracle::Poly& p, mpq_class c) {
  return oracle::times(p, oracle::Poly{{oracle::Mono{0, 0, 0, 0}, oracle::real(std::move(c))}}, 12);
}

}  // namespace

TEST_CASE("Henon-Heiles bundle", "[models][hh]") {
  const ModelBundle m = henon_heiles(4);
  CHECK(m.alpha.a1 == Scalar(1));
  CHECK(m.res == ResonanceVector::pair(-1, 1));
  CHECK(m.closed_form.value(numeric::Vec4::Zero()) == 0);
  CHECK(m.closed_form.gradient(numeric::Vec4::Zero()).norm() == 0);
  CHECK((m.closed_form.hessian(numeric::Vec4::Zero()) - numeric::Mat4::Identity()).norm() == 0);
  // the cubic potential is its own Taylor polynomial
  CHECK(taylor_remainder_ratio(m, 1e-2, 20, 1) < 1e-4);
  CHECK(symmetry_info(m).zp == 3);
}

TEST_CASE("Hill bundle", "[models][hill]") {
  const ModelBundle m = hill_regularized(6);
  SECTION("quartic and sextic parts by direct substitution") {
    const oracle::Poly y1 = var(0), y2 = var(1), x1 = var(2), x2 = var(3);
    const oracle::Poly r2 = oracle::plus(oracle::times(x1, x1, 6), oracle::times(x2, x2, 6));
    const oracle::Poly ang = oracle::plus(oracle::times(y1, x2, 6), oracle::times(y2, x1, 6), true);
    // 2 |x|^2 (y1 x2 - y2 x1)
    const oracle::Poly h4 = scaled(oracle::times(r2, ang, 6), 2);
    // -4 |x|^6 + 24 |x|^2 x1^2 x2^2
    const oracle::Poly r6 = oracle::times(oracle::times(r2, r2, 6), r2, 6);
    const oracle::Poly mix = oracle::times(oracle::times(r2, oracle::times(x1, x1, 6), 6), oracle::times(x2, x2, 6), 6);
    const oracle::Poly h6 = oracle::plus(scaled(r6, -4), scaled(mix, 24));
    const oracle::Poly lib = oracle::from_library(m.h);
    CHECK(oracle::homogeneous(lib, 3).empty());
    CHECK(oracle::homogeneous(lib, 4) == h4);
    CHECK(oracle::homogeneous(lib, 5).empty());
    CHECK(oracle::homogeneous(lib, 6) == h6);
  }
  SECTION("polynomial equals the closed form") { CHECK(taylor_remainder_ratio(m, 1e-2, 20, 2) < 1e-4); }
  SECTION("symmetries: Z_4, no Z_3") {
    CHECK(symmetry_info(m).zp == 4);
    CHECK_FALSE(check_zp_invariance(m.h, 3, m.zp_convention));
  }
  SECTION("Jacobi constant of the energy") {
    // Gamma = (3 / (2^(5/2) E))^(2/3): Gamma = 1 at E = 3 / 2^(5/2)
    CHECK(m.parameter_of_energy(3.0 / std::pow(2.0, 2.5)) == Catch::Approx(1.0));
    CHECK(m.parameter_of_energy(1e-3) > m.parameter_of_energy(2e-3));
  }
  SECTION("needs order 6") { CHECK_THROWS_AS(hill_regularized(4), precondition_error); }
}

TEST_CASE("isosceles bundle", "[models][isosceles]") {
  SECTION("alpha = 3: frequency ratio 2, resonance (-2, 1), exact field") {
    const ModelBundle m = isosceles(Scalar(3), Scalar(1));
    CHECK(m.alpha.a1 == Scalar(2));
    CHECK(m.alpha.a2 == Scalar(4));
    CHECK(m.res == ResonanceVector::pair(-2, 1));
    CHECK(m.h.field().first == FieldKind::rational);
    CHECK(symmetry_info(m).plane_y2x2);
  }
  SECTION("alpha = 1: lambda = sqrt(12/5), nonresonant, quadratic field") {
    const ModelBundle m = isosceles(Scalar(1), Scalar(1));
    CHECK(m.res.none);
    CHECK(m.alpha.a2 * m.alpha.a2 == Scalar(48, 5));
  }
  SECTION("Taylor polynomial matches the closed form to fifth order") {
    for (long a : {0L, 1L, 2L, 3L}) {
      CAPTURE(a);
      CHECK(taylor_remainder_ratio(isosceles(Scalar(a), Scalar(1), 4), 1e-2, 20, unsigned(10 + a)) < 50);
    }
    const ModelBundle m6 = isosceles(Scalar(3), Scalar(4), 6);
    CHECK(taylor_remainder_ratio(m6, 1e-2, 20, 20) < 50);
  }
  SECTION("energy and eccentricity") {
    const auto [e, E] = isosceles_eccentricity_energy(3.0, 0.5);
    const ModelBundle m = isosceles(Scalar(3), Scalar(1, 2));
    CHECK(m.parameter_of_energy(E) == Catch::Approx(e));
    // q = 1 + 4/alpha, e^2 = 1 - 2 varpi^2 / q^2
    CHECK(e * e == Catch::Approx(1 - 2 * 0.25 / std::pow(1 + 4 / 3.0, 2)));
  }
  SECTION("float path: alpha = 3 -+ 1e-6 brackets the exact coefficients") {
    const NormalFormResult exact = normal_form_for(isosceles(Scalar(3), Scalar(1)), 4);
    const double lo = 3 - 1e-6, hi = 3 + 1e-6;
    const NormalFormResult nlo = normal_form_for(isosceles(Scalar::from_double(lo), Scalar(1)), 4);
    const NormalFormResult nhi = normal_form_for(isosceles(Scalar::from_double(hi), Scalar(1)), 4);
    CHECK(nlo.hn.is_float());
    for (auto [k1, k2, l1, l2] : {std::array{2, 0, 2, 0}, std::array{1, 1, 1, 1}, std::array{0, 2, 0, 2}}) {
      CAPTURE(k1, k2, l1, l2);
      const double x = exact.a(k1, k2, l1, l2).re.to_double();
      const double a = nlo.a(k1, k2, l1, l2).re.to_double(), b = nhi.a(k1, k2, l1, l2).re.to_double();
      CHECK(std::abs(a - x) < 1e-5);
      CHECK(std::abs(b - x) < 1e-5);
      CHECK((a - x) * (b - x) <= 0);
    }
  }
  SECTION("preconditions") {
    CHECK_THROWS_AS(isosceles(Scalar(-1), Scalar(1)), precondition_error);
    CHECK_THROWS_AS(isosceles(Scalar(1), Scalar(0)), precondition_error);
  }
}

TEST_CASE("quadratic bundle", "[models][quadratic]") {
  const ModelBundle m = quadratic_model(Scalar(1), Scalar(2));
  CHECK(m.res == ResonanceVector::pair(-2, 1));
  CHECK(taylor_remainder_ratio(m, 1, 20, 3) < 1e-12);
  CHECK_THROWS_AS(quadratic_model(Scalar(1), Scalar::sqrt_of(Rational(2))), precondition_error);
  CHECK(quadratic_model(Scalar(1), Scalar::sqrt_of(Rational(2)), ResonanceVector::nonresonant()).res.none);
}

TEST_CASE("normal forms of the bundles", "[models][normalform]") {
  SECTION("gauges and routes") {
    const ModelBundle m = hill_regularized(6);
    CHECK(normal_form_for(m, 6).psi_applied);
    CHECK_FALSE(normal_form_for(m, 6, Route::none).psi_applied);
    CHECK(normal_form_for(m, 6, Route::rotate).psi_applied);
    CHECK(normal_form_for(m, 6, Route::none, "paper").gauge == "paper");
    CHECK_THROWS_AS(normal_form_for(m, 6, Route::psi, "other"), precondition_error);
    CHECK_THROWS_AS(normal_form_for(henon_heiles(4), 4, Route::psi, "paper"), precondition_error);
    CHECK_THROWS_AS(parse_route("sideways"), precondition_error);
  }
  SECTION("every route passes verification") {
    const ModelBundle m = hill_regularized(6);
    for (Route r : {Route::none, Route::psi, Route::rotate}) {
      NormalFormResult nf = normal_form_for(m, 6, r);
      CHECK(verify(nf, m.h.with_order(6)).ok());
    }
  }
  SECTION("float bundles cannot be lifted past their build order") {
    const ModelBundle m = isosceles(Scalar::from_double(2.5), Scalar(1), 4);
    CHECK_THROWS_AS(normal_form_for(m, 6), precondition_error);
  }
}
