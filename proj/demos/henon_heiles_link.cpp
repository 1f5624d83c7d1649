// The two short periodic orbits of the Henon-Heiles Hamiltonian near the
// origin: they form a Hopf link, turn in opposite senses in the (x1, x2)
// plane, and their rotation numbers follow 2 - 7E/3.

#include <bgnf/models.hpp>
#include <bgnf/numeric/rotation.hpp>

#include <cstdio>

int main() {
  using namespace bgnf;
  const ModelBundle m = henon_heiles(4);
  const NormalFormResult nf = normal_form_for(m, 4);
  const RotationSeries rs = rotation_series(nf);
  std::printf("series: rho1 = %s, rho2 = %s\n\n", rs.axis1.rho.str().c_str(), rs.axis2.rho.str().c_str());
  std::printf("%8s %6s %12s %10s %14s %14s\n", "E", "axis", "period", "winding", "rho numeric", "rho series");
  for (double E : {1e-3, 5e-3, 1e-2, 2e-2}) {
    for (int axis : {1, 2}) {
      const numeric::OrbitRecord orb =
          numeric::continue_orbit(m.closed_form, E, [&](double e) { return numeric::normal_form_seed(nf, axis, e); });
      const double w = numeric::projected_winding(m.closed_form, orb);
      const double rho = numeric::rotation_number_numeric(m.closed_form, orb).rho;
      const SeriesE& s = axis == 1 ? rs.axis1.rho : rs.axis2.rho;
      std::printf("%8.0e %6d %12.8f %10.4f %14.10f %14.10f\n", E, axis, orb.period, w, rho, s.evaluate(E));
    }
  }
}
