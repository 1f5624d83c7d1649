#pragma once
// Chart changes, Poisson bracket, the operator D and the homological
// equation.

#include "bgnf/polyalg/polynomial.hpp"

#include <optional>
#include <stdexcept>

namespace bgnf {

/// Frequencies (alpha1, alpha2) of H2 = sum alpha_j (y_j^2 + x_j^2) / 2.
struct Frequencies {
  Scalar a1;
  Scalar a2;
};

/// Resonance vector m = (m1, m2) with m1 < 0 < m2, or none.
struct ResonanceVector {
  bool none = true;
  int m1 = 0;
  int m2 = 0;

  static ResonanceVector nonresonant() { return {}; }
  static ResonanceVector pair(int m1, int m2) { return {false, m1, m2}; }
  friend bool operator==(const ResonanceVector&, const ResonanceVector&) = default;
};

/// Real chart -> complex chart with z_j = x_j + i y_j.
inline Polynomial to_complex(const Polynomial& p) {
  if (p.chart() == Chart::complex) return p;
  const int n = p.order();
  const Scalar h(1, 2);
  std::array<Polynomial, 4> img;
  // y_j = -i (z_j - conj z_j) / 2,  x_j = (z_j + conj z_j) / 2
  for (int j = 0; j < 2; ++j) {
    Polynomial y(Chart::complex, n), x(Chart::complex, n);
    y.add_term(make_exponent(j == 0, j == 1, 0, 0), Coeff(Scalar(), -h));
    y.add_term(make_exponent(0, 0, j == 0, j == 1), Coeff(Scalar(), h));
    x.add_term(make_exponent(j == 0, j == 1, 0, 0), Coeff(h));
    x.add_term(make_exponent(0, 0, j == 0, j == 1), Coeff(h));
    img[j] = y;
    img[2 + j] = x;
  }
  if (p.is_float())
    for (auto& q : img) q = q.to_float();
  Polynomial r = p.compose(img, n);
  r.set_truncated(p.truncated());
  return r;
}

/// Complex chart -> real chart. Requires a real-valued function.
inline Polynomial to_real(const Polynomial& p) {
  if (p.chart() == Chart::real) return p;
  const int n = p.order();
  std::array<Polynomial, 4> img;
  // z_j = x_j + i y_j, conj z_j = x_j - i y_j
  for (int j = 0; j < 2; ++j) {
    Polynomial z(Chart::real, n), zb(Chart::real, n);
    z.add_term(make_exponent(0, 0, j == 0, j == 1), Coeff(1));
    z.add_term(make_exponent(j == 0, j == 1, 0, 0), Coeff(Scalar(), Scalar(1)));
    zb.add_term(make_exponent(0, 0, j == 0, j == 1), Coeff(1));
    zb.add_term(make_exponent(j == 0, j == 1, 0, 0), Coeff(Scalar(), Scalar(-1)));
    img[j] = z;
    img[2 + j] = zb;
  }
  if (p.is_float())
    for (auto& q : img) q = q.to_float();
  Polynomial r = p.compose(img, n).chopped();
  for (const auto& t : r.terms()) {
    if (!t.c.is_real()) {
      throw std::invalid_argument("to_real: polynomial is not real-valued (monomial " + exponent_str(t.e) + ")");
    }
  }
  r.set_truncated(p.truncated());
  return r;
}

/// {F, G} = sum_j (F_{y_j} G_{x_j} - F_{x_j} G_{y_j}); in the complex chart
/// this is 2i sum_j (F_{z_j} G_{conj z_j} - F_{conj z_j} G_{z_j}).
inline Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
  if (f.chart() != g.chart()) throw std::invalid_argument("poisson_bracket: chart mismatch");
  const int n = std::min(f.order(), g.order());
  Polynomial r(f.chart(), n);
  for (int j = 0; j < 2; ++j) {
    Polynomial a = Polynomial::multiply(f.derivative(j), g.derivative(2 + j), n);
    Polynomial b = Polynomial::multiply(f.derivative(2 + j), g.derivative(j), n);
    r += a - b;
  }
  if (f.chart() == Chart::complex) {
    r = r.map_coeffs([](const Exponent&, const Coeff& c) { return c.times_i().times(2); });
  }
  return r;
}

/// H2 for given frequencies, in the requested chart.
inline Polynomial quadratic_part(const Frequencies& alpha, Chart chart, int order) {
  Polynomial h(chart, order);
  const Scalar h1 = alpha.a1 * alpha.a1.lift(Rational(1, 2));
  const Scalar h2 = alpha.a2 * alpha.a2.lift(Rational(1, 2));
  if (chart == Chart::real) {
    h.add_term(make_exponent(2, 0, 0, 0), Coeff(h1));
    h.add_term(make_exponent(0, 0, 2, 0), Coeff(h1));
    h.add_term(make_exponent(0, 2, 0, 0), Coeff(h2));
    h.add_term(make_exponent(0, 0, 0, 2), Coeff(h2));
  } else {
    h.add_term(make_exponent(1, 0, 1, 0), Coeff(h1));
    h.add_term(make_exponent(0, 1, 0, 1), Coeff(h2));
  }
  return h;
}

/// alpha . (k - l) for a complex-chart exponent.
inline Scalar eigenvalue(const Frequencies& alpha, const Exponent& e) {
  return alpha.a1 * alpha.a1.lift(int(e[0]) - int(e[2])) + alpha.a2 * alpha.a2.lift(int(e[1]) - int(e[3]));
}

/// D = {H2, .}: multiplies z^k conj(z)^l by -i alpha.(k - l).
inline Polynomial apply_D(const Polynomial& p, const Frequencies& alpha) {
  if (p.chart() != Chart::complex) throw std::invalid_argument("apply_D needs the complex chart");
  return p.map_coeffs([&](const Exponent& e, const Coeff& c) {
    Scalar lam = eigenvalue(alpha, e);
    return c.times_i() * (-lam);
  });
}

/// True when k - l is an integer multiple of the resonance vector.
inline bool in_kernel(const Exponent& e, const ResonanceVector& res) {
  const int d1 = int(e[0]) - int(e[2]), d2 = int(e[1]) - int(e[3]);
  if (res.none) return d1 == 0 && d2 == 0;
  // (d1, d2) = n (m1, m2)
  if (d1 * res.m2 != d2 * res.m1) return false;
  return d2 % res.m2 == 0 && d1 % res.m1 == 0;
}

struct KerImSplit {
  Polynomial kernel;
  Polynomial image;
};

/// Splits p (complex chart) into the kernel and image of D.
inline KerImSplit split_ker_im(const Polynomial& p, const ResonanceVector& res) {
  Polynomial pc = to_complex(p);
  KerImSplit s{Polynomial(Chart::complex, pc.order()), Polynomial(Chart::complex, pc.order())};
  for (const auto& t : pc.terms()) {
    (in_kernel(t.e, res) ? s.kernel : s.image).add_term(t.e, t.c);
  }
  return s;
}

/// The unique G in the image of D with -D G = rhs.
inline Polynomial solve_homological(const Polynomial& rhs, const Frequencies& alpha, const ResonanceVector& res) {
  if (rhs.chart() != Chart::complex) throw std::invalid_argument("solve_homological needs the complex chart");
  return rhs.map_coeffs([&](const Exponent& e, const Coeff& c) {
    Scalar lam = eigenvalue(alpha, e);
    if (in_kernel(e, res) || lam.is_zero()) {
      throw std::invalid_argument("solve_homological: right-hand side has kernel monomial " + exponent_str(e));
    }
    // i lam g = c  =>  g = -i c / lam
    return Coeff(c.im, -c.re) / lam;
  });
}

}  // namespace bgnf
