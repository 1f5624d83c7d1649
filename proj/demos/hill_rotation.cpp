// Rotation numbers of the two axis orbits of the regularized Hill problem:
// the normal-form series next to direct numerical measurements, for a
// range of Jacobi constants.

#include <bgnf/models.hpp>
#include <bgnf/numeric/report.hpp>

#include <cstdio>

int main() {
  using namespace bgnf;
  const ModelBundle m = hill_regularized(6);
  const NormalFormResult nf = normal_form_for(m, 6);
  const HopfAnalysis a = analyze(nf, symmetry_info(m));
  std::printf("rho1 = %s\nrho2 = %s\nproduct = %s\nverdict: %s\n\n", a.rotation.axis1.rho.str().c_str(),
              a.rotation.axis2.rho.str().c_str(), a.twist->str().c_str(), a.verdict.label().c_str());

  const std::vector<double> energies{5e-4, 1e-3, 2e-3, 4e-3, 8e-3};
  const numeric::SeriesNumericReport rep = numeric::series_vs_numeric_report(m.closed_form, nf, energies);
  std::printf("%10s %10s %14s %14s %14s %14s\n", "E", "Gamma", "rho1 num", "rho1 series", "rho2 num", "rho2 series");
  for (const auto& r : rep.rows) {
    std::printf("%10.2e %10.4f %14.10f %14.10f %14.10f %14.10f\n", r.E, m.parameter_of_energy(r.E), r.rho1_num,
                r.rho1_series, r.rho2_num, r.rho2_series);
  }
  std::printf("\nfitted orders: rho1 %.3f, rho2 %.3f, product %.3f\n", rep.fit_rho1.q, rep.fit_rho2.q,
              rep.fit_product.q);
}
