// Acceptance run: one PASS/FAIL line per criterion with its runtime and
// budget. Exit status is the number of failed criteria.

#include "oracle.hpp"

#include <bgnf/models.hpp>
#include <bgnf/numeric/report.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace bgnf;

namespace {

/// Collects the first few mismatches of one criterion.
struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 5) notes.push_back(what);
  }
};

int run(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < budget_s, "runtime over budget");
  std::printf("%s [%d] %s (%.2f s, budget %.0f s)\n", out.ok ? "PASS" : "FAIL", id, title, secs, budget_s);
  for (const auto& n : out.notes) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
  return out.ok ? 0 : 1;
}

bool is(const Scalar& s, long n, long d = 1) { return (s - s.lift(Rational(n, d))).is_zero(); }

std::string show(const Scalar& s) { return s.str(); }

// ---- criterion 1 and 2 ----

void henon_heiles_exact(Outcome& o) {
  const ModelBundle m = henon_heiles(4);
  const NormalFormResult nf = normal_form_for(m, 4, Route::none);
  o.require(nf.hn.homogeneous(3).empty(), "Gamma3 is not zero");
  o.require(is(nf.a(2, 0, 2, 0).re, -5, 48), "a2020 = " + show(nf.a(2, 0, 2, 0).re));
  o.require(is(nf.a(1, 1, 1, 1).re, 1, 12), "a1111 = " + show(nf.a(1, 1, 1, 1).re));
  o.require(is(nf.a(2, 0, 0, 2).re, -7, 48), "a2002 = " + show(nf.a(2, 0, 0, 2).re));
  o.require(is(nf.a(0, 2, 2, 0).re, -7, 48), "a0220 = " + show(nf.a(0, 2, 2, 0).re));
  o.require(verify(nf, m.h).ok(), "verification failed");
}

void henon_heiles_psi(Outcome& o) {
  const ModelBundle m = henon_heiles(4);
  const NormalFormResult nf = normal_form_for(m, 4, Route::psi);
  o.require(is(nf.a(2, 0, 2, 0).re, 1, 24) && is(nf.a(1, 1, 1, 1).re, -1, 2) && is(nf.a(0, 2, 0, 2).re, 1, 24),
            "radial coefficients differ from (1/24, -1/2, 1/24)");
  const OmegaCoeffs om = omega_coeffs(nf, 2);
  o.require(is(om.omega1, -7, 12) && is(om.omega2, -7, 12), "Omega_{2,j} != -7/12");
  o.require(is(om.omega, -7, 6), "Omega_2 = " + show(om.omega));
  const RotationSeries rs = rotation_series(nf);
  o.require(rs.axis1.rho.str() == "2 + -7/3*E + O(E^2)", "rho1 = " + rs.axis1.rho.str());
  o.require(rs.axis2.rho.str() == "2 + -7/3*E + O(E^2)", "rho2 = " + rs.axis2.rho.str());
  const SeriesE p = twist_product(rs, 1);
  o.require(p.str() == "1 + -14/3*E + O(E^2)", "product = " + p.str());
}

// ---- criterion 3 ----

void hill_route(Outcome& o, const std::string& gauge) {
  const ModelBundle m = hill_regularized(6);
  const NormalFormResult nf = normal_form_for(m, 6, Route::psi, gauge);
  const HopfAnalysis a = analyze(nf, symmetry_info(m));
  const std::string g = "[" + gauge + "] ";
  o.require(a.omega && is(a.omega->omega1, 1) && is(a.omega->omega2, -1), g + "Omega_{2,1}, Omega_{2,2} != 1, -1");
  o.require(a.amplitude1 && a.amplitude1->str() == "2*E + 4*E^2 + 22*E^3 + O(E^4)", g + "c1^2");
  o.require(a.frequencies.omega1 && a.frequencies.omega1->str() == "1 + -4*E + -17*E^2 + O(E^3)", g + "omega1");
  o.require(a.rotation.axis1.rho.str() == "2 + 4*E + 26*E^2 + O(E^3)", g + "rho1 = " + a.rotation.axis1.rho.str());
  o.require(a.twist && a.twist->str() == "1 + 36*E^2 + O(E^3)", g + "product");
  o.require(a.verdict.label() == "Theorem 1.3(ii)", g + "verdict " + a.verdict.label());
}

// ---- criterion 4 ----

void isosceles_formulas(Outcome& o) {
  for (long a : {1L, 2L, 3L}) {
    const ModelBundle m = isosceles(Scalar(a), Scalar(1));
    const NormalFormResult nf = normal_form_for(m, 4);
    const OmegaCoeffs om = omega_coeffs(nf, 2);
    const Scalar prod = nf.alpha.a1 * nf.alpha.a2;
    const long den = 12 + 31 * a;
    const std::string tag = "alpha=" + std::to_string(a) + ": ";
    o.require(is(om.omega1 / prod, 21 * a, 16 * den), tag + "Omega_{2,1}/(alpha1 alpha2)");
    o.require(is(om.omega2 / prod, 3 * a * (260 + 93 * a), 256 * den), tag + "Omega_{2,2}/(alpha1 alpha2)");
    o.require(is(om.omega, 279 * a * (4 + a), 256 * den), tag + "Omega_2 = " + show(om.omega));
    const CaseVerdict v = theorem_check(nf, symmetry_info(m));
    if (a == 3) {
      o.require(v.label() == "Theorem 1.2(v)", tag + v.label());
    } else {
      o.require(v.theorem == "1.1", tag + v.label());
    }
  }
  const OmegaCoeffs zero = omega_coeffs(normal_form_for(isosceles(Scalar(0), Scalar(1)), 4), 2);
  o.require(zero.omega1.is_zero() && zero.omega2.is_zero() && zero.omega.is_zero(), "alpha=0: Omega not all zero");
}

// ---- criterion 5 ----

void numeric_rotation(Outcome& o) {
  const std::vector<double> energies{1e-3, 2e-3, 4e-3};
  struct Item {
    ModelBundle m;
    int order;
    double q_min;
  };
  for (const Item& it : {Item{hill_regularized(6), 6, 2.5}, Item{henon_heiles(4), 4, 1.5}}) {
    const NormalFormResult nf = normal_form_for(it.m, it.order);
    const numeric::SeriesNumericReport rep = numeric::series_vs_numeric_report(it.m.closed_form, nf, energies);
    const numeric::ReportRow& r0 = rep.rows.front();
    const double d1 = std::abs(r0.rho1_num - r0.rho1_series), d2 = std::abs(r0.rho2_num - r0.rho2_series);
    std::ostringstream os;
    os << it.m.name << ": |drho| at 1e-3 = " << d1 << ", " << d2;
    o.require(d1 <= 5e-4 && d2 <= 5e-4, os.str());
    // Hill is fitted on rho itself, Henon-Heiles on the product
    const numeric::PowerFit& fit = it.m.name == "hill" ? rep.fit_rho1 : rep.fit_product;
    o.require(fit.valid && fit.q >= it.q_min, it.m.name + ": fitted order q = " + std::to_string(fit.q));
    if (it.m.name == "hill") {
      o.require(rep.fit_rho2.valid && rep.fit_rho2.q >= it.q_min, "hill: rho2 order q = " + std::to_string(rep.fit_rho2.q));
    }
  }
}

// ---- criterion 6 ----

Polynomial random_hamiltonian(std::mt19937& rng, const Frequencies& alpha, int order) {
  Polynomial h = quadratic_part(alpha, Chart::real, order);
  std::uniform_int_distribution<int> slot(0, 3), num(-6, 6), den(1, 5);
  for (int d = 3; d <= order; ++d) {
    for (int n = 0; n < 4; ++n) {
      std::array<int, 4> e{0, 0, 0, 0};
      for (int k = 0; k < d; ++k) ++e[std::size_t(slot(rng))];
      h.add_term(make_exponent(e[0], e[1], e[2], e[3]), Coeff(Scalar(num(rng), den(rng))));
    }
  }
  return h;
}

void structural_suite(Outcome& o) {
  struct Case {
    Frequencies alpha;
    ResonanceVector res;
    oracle::Q2 a1, a2;
  };
  const std::vector<Case> cases{
      {{Scalar(1), Scalar(1)}, ResonanceVector::pair(-1, 1), oracle::Q2(1), oracle::Q2(1)},
      {{Scalar(1), Scalar(2)}, ResonanceVector::pair(-2, 1), oracle::Q2(1), oracle::Q2(2)},
      {{Scalar(2), Scalar(3)}, ResonanceVector::pair(-3, 2), oracle::Q2(2), oracle::Q2(3)},
      {{Scalar(1), Scalar::sqrt_of(Rational(2))}, ResonanceVector::nonresonant(), oracle::Q2(1), oracle::Q2(0, 1)},
  };
  const int order = 6;
  std::mt19937 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const Case& c = cases[std::size_t(trial) % cases.size()];
    const Polynomial h = random_hamiltonian(rng, c.alpha, order);
    const NormalFormResult nf = normalize(h, order, c.res);
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    const oracle::Poly hn = oracle::from_library(nf.hn);
    o.require(oracle::apply_D(hn, c.a1, c.a2).empty(), tag + "D H_N != 0");
    std::array<oracle::Poly, 4> img;
    for (std::size_t i = 0; i < 4; ++i) img[i] = oracle::from_library(nf.phi.comp[i]);
    const oracle::Poly hphi = oracle::real_to_complex(oracle::compose(oracle::from_library(h), img, order), order);
    o.require(oracle::plus(hphi, hn, true).empty(), tag + "H o Phi - H_N has terms of degree <= N");
    o.require(symplectic_defect(nf.phi).is_zero(), tag + "symplectic defect");
    for (int d = 3; d <= order; ++d) {
      const oracle::Split s = oracle::split(oracle::homogeneous(oracle::from_library(to_complex(h)), d), c.a1, c.a2);
      const KerImSplit lib = split_ker_im(to_complex(h).homogeneous(d), c.res);
      o.require(oracle::from_library(lib.kernel) == s.kernel && oracle::from_library(lib.image) == s.image,
                tag + "split differs at degree " + std::to_string(d));
      o.require(oracle::from_library(solve_homological(lib.image, c.alpha, c.res)) == oracle::solve(s.image, c.a1, c.a2),
                tag + "solve differs at degree " + std::to_string(d));
    }
  }
}

// ---- criterion 7 ----

void winding_oracle(Outcome& o) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double a = -2 + 0.2 * i, b = -2 + 0.2 * j;
      if (std::abs(std::abs(a) - std::abs(b)) < 0.1) continue;
      const double exact = std::abs(a) <= std::abs(b) ? 0.0 : (a > 0 ? 1 : -1) * std::sqrt(a * a - b * b);
      const double num = numeric::winding_rate_numeric(a, b);
      std::ostringstream os;
      os << "(a, b) = (" << a << ", " << b << "): numeric " << num << " vs " << exact;
      o.require(std::abs(num - exact) < 1e-3, os.str());
      o.require(std::abs(numeric::winding_rate(a, b) - exact) < 1e-12, "closed form " + os.str());
    }
  }
  // the locked region
  o.require(numeric::winding_rate(0.5, 1.5) == 0.0 && std::abs(numeric::winding_rate_numeric(0.5, 1.5)) < 1e-3,
            "locked (0.5, 1.5) does not return 0");
}

// ---- criterion 8 ----

void frame_suite(Outcome& o) {
  std::mt19937 rng(8);
  std::normal_distribution<double> g;
  for (int n = 0; n < 200; ++n) {
    const numeric::Vec4 grad(g(rng), g(rng), g(rng), g(rng));
    const numeric::FrameBasis f = numeric::quaternion_frame(grad);
    double gram = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        gram = std::max(gram, std::abs(f.v[std::size_t(i)].dot(f.v[std::size_t(j)]) - (i == j ? 1.0 : 0.0)));
    o.require(gram < 1e-14, "frame not orthonormal");
    o.require(std::abs(numeric::omega0(f.v[1], f.v[2]) - 1) < 1e-14, "omega0(V1, V2) != 1");
  }
  struct Pair {
    long p1, q1, p2, q2;
  };
  for (const Pair& pr : {Pair{1, 1, 2, 1}, Pair{2, 1, 3, 1}, Pair{1, 1, 3, 1}, Pair{3, 2, 5, 2}}) {
    const Scalar a1(pr.p1, pr.q1), a2(pr.p2, pr.q2);
    const ModelBundle m = quadratic_model(a1, a2);
    const double d1 = a1.to_double(), d2 = a2.to_double();
    for (int axis : {1, 2}) {
      const double E = 1e-3;
      const numeric::OrbitRecord orb =
          numeric::find_periodic_orbit(m.closed_form, E, numeric::harmonic_seed(m.alpha, axis, E));
      const double rho = numeric::rotation_number_numeric(m.closed_form, orb).rho;
      const double expected = axis == 1 ? 1 + d2 / d1 : 1 + d1 / d2;
      std::ostringstream os;
      os << "alpha = (" << d1 << ", " << d2 << ") axis " << axis << ": rho = " << rho << ", expected " << expected;
      o.require(std::abs(rho - expected) < 1e-9, os.str());
    }
  }
}

}  // namespace

int main() {
  int failed = 0;
  failed += run(1, "Henon-Heiles normal form, exact Gamma4", 1, henon_heiles_exact);
  failed += run(2, "Henon-Heiles Psi route: radial terms, Omega, rho, product", 1, henon_heiles_psi);
  failed += run(3, "Hill order-6 pipeline in the printed and canonical gauges", 5, [](Outcome& o) {
    hill_route(o, "paper");
    hill_route(o, "imD");
  });
  failed += run(4, "isosceles Omega closed forms and theorem routing", 10, isosceles_formulas);
  failed += run(5, "numeric versus series rotation numbers (Hill, Henon-Heiles)", 120, numeric_rotation);
  failed += run(6, "structural suite on 50 random Hamiltonians", 60, structural_suite);
  failed += run(7, "winding rate of theta' = a + b cos theta", 30, winding_oracle);
  failed += run(8, "quaternion frame and quadratic-model rotation numbers", 10, frame_suite);
  std::printf("%d of 8 criteria failed\n", failed);
  return failed;
}
