// Scan of the isosceles three-body problem in the mass parameter alpha:
// Omega_2, the first-order twist coefficient and the theorem that applies.
// Integer alpha up to 3 runs in exact arithmetic (rational or quadratic field),
// everything else in the float field.

#include <bgnf/models.hpp>

#include <cstdio>

int main() {
  using namespace bgnf;
  std::printf("%8s %8s %14s %14s %16s  %s\n", "alpha", "field", "Omega_2", "closed form", "twist coeff", "verdict");
  for (int k = 0; k <= 16; ++k) {
    const Rational alpha(k, 2);
    const bool exact = k % 2 == 0 && k <= 6;
    const ModelBundle m = isosceles(exact ? Scalar(alpha) : Scalar(alpha).to_float(), Scalar(1), 4);
    const NormalFormResult nf = normal_form_for(m, 4);
    const HopfAnalysis h = analyze(nf, symmetry_info(m));
    const double a = alpha.get_d();
    const double closed = 279 * a * (4 + a) / (256 * (12 + 31 * a));
    const double twist = h.twist ? (*h.twist)[1].to_double() : 0.0;
    std::printf("%8.2f %8s %14.10f %14.10f %16.10f  %s\n", a, m.h.is_float() ? "float" : "exact",
                h.omega ? h.omega->omega.to_double() : 0.0, closed, twist, h.verdict.label().c_str());
  }
}
