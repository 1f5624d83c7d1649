#pragma once
// Packaged Hamiltonians: Henon-Heiles, regularized Hill, isosceles
// three-body problem, and the pure quadratic oscillator.

#include "bgnf/hopf/analysis.hpp"
#include "bgnf/normalform.hpp"
#include "bgnf/numeric/evaluable.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace bgnf {

struct ModelBundle {
  std::string name;
  /// Real-chart Taylor polynomial up to `order`.
  Polynomial h;
  int order = 0;
  /// True when h is the whole Hamiltonian, so any normalization order may
  /// be used; otherwise orders above `order` need a rebuilt bundle.
  bool polynomial_exact = false;
  Frequencies alpha;
  ResonanceVector res;
  std::optional<Plane> invariant_plane;
  std::optional<int> zp;
  ZpConvention zp_convention = ZpConvention::rotation;
  /// Map realizing the gauge printed for this model, if one is known.
  std::optional<TruncatedMap> paper_gauge_map;
  numeric::Evaluable closed_form;
  /// Physical parameter as a function of the energy E of the normalized
  /// system, with its name (empty when E is the only parameter).
  std::string parameter_name;
  std::function<double(double)> parameter_of_energy;
};

namespace detail {

inline Polynomial real_poly(int order) { return Polynomial(Chart::real, order); }

inline void add(Polynomial& p, int a, int b, int c, int d, const Scalar& s) {
  p.add_term(make_exponent(a, b, c, d), Coeff(s));
}

/// Re-checks the declared symmetries of a freshly built bundle.
inline ModelBundle checked(ModelBundle m) {
  if (m.invariant_plane && !check_plane_invariance(m.h, *m.invariant_plane)) {
    throw std::logic_error(m.name + ": declared plane invariance does not hold");
  }
  if (m.zp && !check_zp_invariance(m.h, *m.zp, m.zp_convention)) {
    throw std::logic_error(m.name + ": declared Z_" + std::to_string(*m.zp) + " symmetry does not hold");
  }
  return m;
}

}  // namespace detail

/// H = (|y|^2 + |x|^2)/2 + x1^2 x2 - x2^3/3, with Z_3 symmetry.
inline ModelBundle henon_heiles(int order = 4) {
  ModelBundle m;
  m.name = "henon-heiles";
  m.order = order;
  m.polynomial_exact = true;
  m.h = detail::real_poly(order);
  for (int i = 0; i < 4; ++i) {
    Exponent e{};
    e[i] = 2;
    m.h.add_term(e, Coeff(Scalar(1, 2)));
  }
  detail::add(m.h, 0, 0, 2, 1, Scalar(1));
  detail::add(m.h, 0, 0, 0, 3, Scalar(-1, 3));
  m.alpha = {Scalar(1), Scalar(1)};
  m.res = ResonanceVector::pair(-1, 1);
  m.zp = 3;
  m.closed_form = numeric::from_closed_form([](auto y1, auto y2, auto x1, auto x2) {
    return 0.5 * (y1 * y1 + y2 * y2 + x1 * x1 + x2 * x2) + x1 * x1 * x2 - x2 * x2 * x2 / 3.0;
  });
  return detail::checked(std::move(m));
}

/// The order-4 generating function (y, xi) -> -(i y . xi)(y . xi) that puts
/// the regularized Hill Hamiltonian into its printed gauge.
inline Polynomial hill_paper_generating_function(int order = 6) {
  Polynomial y1 = Polynomial::variable(Chart::real, order, 0), y2 = Polynomial::variable(Chart::real, order, 1);
  Polynomial x1 = Polynomial::variable(Chart::real, order, 2), x2 = Polynomial::variable(Chart::real, order, 3);
  return (x2 * y1 - x1 * y2) * -(y1 * x1 + y2 * x2);
}

/// Regularized Hill lunar problem
/// H = (|y|^2 + |x|^2)/2 + 2|x|^2 (y1 x2 - y2 x1) - 4|x|^6 + 24|x|^2 x1^2 x2^2.
inline ModelBundle hill_regularized(int order = 6) {
  if (order < 6) throw precondition_error("Hill model needs order >= 6");
  ModelBundle m;
  m.name = "hill";
  m.order = order;
  m.polynomial_exact = true;
  Polynomial y1 = Polynomial::variable(Chart::real, order, 0), y2 = Polynomial::variable(Chart::real, order, 1);
  Polynomial x1 = Polynomial::variable(Chart::real, order, 2), x2 = Polynomial::variable(Chart::real, order, 3);
  Polynomial r2 = x1 * x1 + x2 * x2;
  Coeff half(Scalar(1, 2));
  m.h = (y1 * y1 + y2 * y2 + r2) * half + r2 * (y1 * x2 - y2 * x1) * Coeff(2) - r2 * r2 * r2 * Coeff(4) +
        r2 * x1 * x1 * x2 * x2 * Coeff(24);
  m.alpha = {Scalar(1), Scalar(1)};
  m.res = ResonanceVector::pair(-1, 1);
  m.zp = 4;
  m.paper_gauge_map = invert_generating(hill_paper_generating_function(order), order, GeneratingKind::y_xi);
  m.closed_form = numeric::from_closed_form([](auto y1, auto y2, auto x1, auto x2) {
    auto r2 = x1 * x1 + x2 * x2;
    return 0.5 * (y1 * y1 + y2 * y2 + r2) + 2.0 * r2 * (y1 * x2 - y2 * x1) - 4.0 * r2 * r2 * r2 +
           24.0 * r2 * x1 * x1 * x2 * x2;
  });
  m.parameter_name = "jacobi_constant";
  m.parameter_of_energy = [](double e) { return std::pow(3.0 / (std::pow(2.0, 2.5) * e), 2.0 / 3.0); };
  return detail::checked(std::move(m));
}

/// H = alpha1 (y1^2 + x1^2)/2 + alpha2 (y2^2 + x2^2)/2.
inline ModelBundle quadratic_model(const Scalar& a1, const Scalar& a2,
                                   const std::optional<ResonanceVector>& declared = std::nullopt) {
  ModelBundle m;
  m.name = "quadratic";
  m.order = 2;
  m.polynomial_exact = true;
  m.alpha = {a1, a2};
  m.h = quadratic_part(m.alpha, Chart::real, 2);
  m.res = resonance_pair(m.alpha, declared);
  const double d1 = a1.to_double(), d2 = a2.to_double();
  m.closed_form = numeric::from_closed_form([d1, d2](auto y1, auto y2, auto x1, auto x2) {
    return 0.5 * d1 * (y1 * y1 + x1 * x1) + 0.5 * d2 * (y2 * y2 + x2 * x2);
  });
  return detail::checked(std::move(m));
}

/// Eccentricity of the Keplerian binary on the level H = -1 and the energy
/// E = varpi e^2 of the rescaled isosceles Hamiltonian.
inline std::pair<double, double> isosceles_eccentricity_energy(double alpha, double varpi) {
  const double q = 1 + 4 / alpha;
  const double e2 = 1 - 2 * varpi * varpi / (q * q);
  return {std::sqrt(std::max(e2, 0.0)), varpi * e2};
}

/// Rescaled isosceles three-body Hamiltonian around the circular binary,
/// with y = (p_r, p_z), x = (r, z):
///   K = p_r^2 + lam p_z^2 + w + w^2/(r+s)^2 - 2 alpha w s/((4+alpha)(r+s))
///       - 8 w s/((4+alpha) sqrt((r+s)^2 + c z^2))
/// where w = varpi, s = sqrt(w), lam = sqrt((4+8 alpha)/(4+alpha)) and
/// c = sqrt((4+alpha)(1+2 alpha))/2. The Taylor polynomial is exact when
/// alpha and varpi are rational and sqrt(varpi) is rational; otherwise (or
/// with `force_float`) it is computed in the float field.
inline ModelBundle isosceles(const Scalar& alpha_in, const Scalar& varpi_in, int order = 4, bool force_float = false) {
  if (alpha_in.sign() < 0 || varpi_in.sign() <= 0) throw precondition_error("isosceles needs alpha >= 0, varpi > 0");
  bool fl = force_float || !alpha_in.is_rational() || !varpi_in.is_rational();
  if (!fl && !Scalar::sqrt_of(varpi_in.a()).is_rational()) fl = true;
  auto K = [&](const Rational& q) { return fl ? Scalar(q).to_float() : Scalar(q); };
  const Scalar alpha = fl ? alpha_in.to_float() : alpha_in;
  const Scalar w = fl ? varpi_in.to_float() : varpi_in;
  const Scalar s = fl ? w.sqrt() : Scalar::sqrt_of(w.a());
  const Scalar lam_sq = (K(4) + K(8) * alpha) / (K(4) + alpha);
  const Scalar c_sq = (K(4) + alpha) * (K(1) + K(2) * alpha);
  const Scalar lam = fl ? lam_sq.sqrt() : Scalar::sqrt_of(lam_sq.a());
  const Scalar c = (fl ? c_sq.sqrt() : Scalar::sqrt_of(c_sq.a())) / K(2);

  const int n = order;
  Polynomial one = Polynomial::constant(Chart::real, n, Coeff(K(1)));
  Polynomial u = Polynomial::variable(Chart::real, n, 2, Coeff(K(1) / s));
  Polynomial z2 = Polynomial::monomial(Chart::real, n, make_exponent(0, 0, 0, 2), Coeff(c / w));
  Polynomial wser = u * Coeff(K(2)) + u * u + z2;
  Polynomial inv1(Chart::real, n), inv2(Chart::real, n), isq(Chart::real, n);
  Polynomial upow = one, wpow = one;
  Rational binom = 1;  // binom(-1/2, k)
  for (int k = 0; k <= n; ++k) {
    const int sg = (k % 2 == 0) ? 1 : -1;
    inv1 += upow * Coeff(K(sg));
    inv2 += upow * Coeff(K(sg * (k + 1)));
    isq += wpow * Coeff(K(binom));
    upow = upow * u;
    wpow = wpow * wser;
    binom *= Rational(-(2 * k + 1), 2 * (k + 1));
  }
  Polynomial kin(Chart::real, n);
  kin.add_term(make_exponent(2, 0, 0, 0), Coeff(K(1)));
  kin.add_term(make_exponent(0, 2, 0, 0), Coeff(lam));
  const Scalar four_a = K(4) + alpha;
  Polynomial full = kin + one * Coeff(w) + inv2 * Coeff(w) - inv1 * Coeff(K(2) * alpha * w / four_a) -
                    isq * Coeff(K(8) * w / four_a);

  ModelBundle m;
  m.name = "isosceles";
  m.order = order;
  m.alpha = {K(2), K(2) * lam};
  // Exact cancellation of the constant and linear terms; in floats the
  // residue is removed and the quadratic part set to its exact form.
  Polynomial low = full.degree_range(0, 2) - quadratic_part(m.alpha, Chart::real, n);
  if (!low.empty()) {
    if (!fl || low.max_abs_coeff().to_double() > 1e-12) throw std::logic_error("isosceles: bad low-order terms");
  }
  m.h = quadratic_part(m.alpha, Chart::real, n) + full.degree_range(3, n);
  if (fl) {
    m.res = resonance_pair(m.alpha, ResonanceVector::nonresonant());
  } else if (lam.is_rational()) {
    m.res = resonance_pair(m.alpha);
  } else {
    m.res = resonance_pair(m.alpha, ResonanceVector::nonresonant());
  }
  m.invariant_plane = Plane::y2x2;
  const double da = alpha.to_double(), dw = w.to_double();
  const double dl = lam.to_double(), dc = c.to_double(), ds = std::sqrt(dw);
  m.closed_form = numeric::from_closed_form([da, dw, dl, dc, ds](auto y1, auto y2, auto x1, auto x2) {
    using std::sqrt;
    auto rs = x1 + ds;
    auto root = sqrt(rs * rs + dc * x2 * x2);
    return y1 * y1 + dl * y2 * y2 + dw + dw * dw / (rs * rs) - 2.0 * da * dw * ds / ((4.0 + da) * rs) -
           8.0 * dw * ds / ((4.0 + da) * root);
  });
  m.parameter_name = "eccentricity";
  m.parameter_of_energy = [dw](double e) { return std::sqrt(e / dw); };
  return detail::checked(std::move(m));
}

/// How a model with alpha1 = alpha2 reaches the frame used by the Z_p
/// theorem: normalize then compose with Psi, or conjugate by Psi first and
/// normalize H o Psi; `none` keeps the plain normal form. Models with
/// alpha1 != alpha2 ignore the route.
enum class Route { none, psi, rotate };

inline Route parse_route(const std::string& s) {
  if (s == "psi") return Route::psi;
  if (s == "rotate") return Route::rotate;
  if (s == "none") return Route::none;
  throw precondition_error("unknown route '" + s + "' (expected psi, rotate or none)");
}

/// Symmetry facts of a bundle, re-verified on its polynomial.
inline SymmetryInfo symmetry_info(const ModelBundle& m) {
  SymmetryInfo s;
  s.plane_y2x2 = m.invariant_plane == Plane::y2x2 && check_plane_invariance(m.h, Plane::y2x2);
  if (m.zp && check_zp_invariance(m.h, *m.zp, m.zp_convention)) s.zp = m.zp;
  return s;
}

/// Normal form of order N for a bundle. gauge "imD" is the canonical
/// choice; "paper" first applies the model's printed-gauge map.
inline NormalFormResult normal_form_for(const ModelBundle& m, int N, Route route = Route::psi,
                                        const std::string& gauge = "imD") {
  if (N > m.order && !m.polynomial_exact) {
    throw precondition_error(m.name + " bundle was built to order " + std::to_string(m.order) +
                             "; rebuild it for order " + std::to_string(N));
  }
  NormalFormOptions opts;
  opts.gauge = gauge;
  if (gauge == "paper") {
    if (!m.paper_gauge_map) throw precondition_error(m.name + " has no printed gauge");
    opts.pre_map = *m.paper_gauge_map;
  } else if (gauge != "imD") {
    throw precondition_error("unknown gauge '" + gauge + "' (expected imD or paper)");
  }
  const Polynomial h = m.h.with_order(N);
  const bool equal = m.alpha.a1 == m.alpha.a2;
  if (!equal || !m.zp) return normalize(h, N, m.res, opts);
  if (route != Route::rotate) {
    NormalFormResult nf = gauge == "imD" ? symmetric_normalize_zp(h, *m.zp, N, m.zp_convention)
                                         : normalize(h, N, m.res, opts);
    return route == Route::psi ? apply_psi(nf) : nf;
  }
  const TruncatedMap psi = psi_map(N);
  opts.pre_map = opts.pre_map ? opts.pre_map->after(psi) : psi;
  NormalFormResult nf = normalize(h, N, m.res, opts);
  nf.psi_applied = true;
  return nf;
}

}  // namespace bgnf
