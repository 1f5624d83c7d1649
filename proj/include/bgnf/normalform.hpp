#pragma once
// Birkhoff-Gustavson normalization by generating functions.

#include "bgnf/polyalg/maps.hpp"
#include "bgnf/resonance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bgnf {

/// Reads alpha off a Hamiltonian whose quadratic part must be
/// sum alpha_j (y_j^2 + x_j^2) / 2 with 0 < alpha1 <= alpha2.
inline Frequencies frequencies_of(const Polynomial& h_in) {
  Polynomial h = to_real(h_in);
  if (!h.empty() && h.min_degree() < 2) {
    throw precondition_error("Hamiltonian has terms of degree < 2 (equilibrium not at the origin)");
  }
  Polynomial q = h.homogeneous(2);
  auto c = [&](int a, int b, int e, int d) { return q.coeff(a, b, e, d).times(2).re; };
  Scalar a1 = c(2, 0, 0, 0), a2 = c(0, 2, 0, 0);
  if (c(0, 0, 2, 0) != a1 || c(0, 0, 0, 2) != a2 || q.size() != 4) {
    throw precondition_error("quadratic part is not in diagonal form sum alpha_j (y_j^2 + x_j^2)/2");
  }
  if (a1.sign() <= 0 || a2.sign() <= 0) throw precondition_error("quadratic part is not positive definite");
  if (a2 < a1) throw precondition_error("need alpha1 <= alpha2 (swap the degrees of freedom)");
  return {a1, a2};
}

struct NormalFormOptions {
  /// Map applied before the degree-by-degree normalization, e.g. the
  /// symplectic change generated by a prescribed generating function.
  std::optional<TruncatedMap> pre_map;
  std::string gauge = "imD";
};

/// Result of normalize: H o phi = H_N + O(order + 1).
struct NormalFormResult {
  int order = 0;
  Frequencies alpha;
  ResonanceVector res;
  std::string gauge = "imD";
  bool psi_applied = false;
  /// H_N in the complex chart; its terms are the coefficients a_{k,l}.
  Polynomial hn;
  /// G_s in the complex chart for s = 3..order (empty when nothing to remove).
  std::vector<Polynomial> generators;
  TruncatedMap phi;

  Coeff a(int k1, int k2, int l1, int l2) const {
    if (k1 + k2 + l1 + l2 > order) throw std::out_of_range("coefficient beyond normalization order");
    return hn.coeff(k1, k2, l1, l2);
  }
  Polynomial hn_real() const { return to_real(hn); }
};

/// Normal form H_N = H2 + Gamma_3 + ... + Gamma_N with Gamma_s in ker D and
/// every G_s in im D.
inline NormalFormResult normalize(const Polynomial& h_in, int order, const ResonanceVector& res,
                                  const NormalFormOptions& opts = {}) {
  if (order < 3) throw precondition_error("normalization order must be at least 3");
  Polynomial h = to_real(h_in).with_order(order);
  const Frequencies alpha = frequencies_of(h);
  NormalFormResult out;
  out.order = order;
  out.alpha = alpha;
  out.res = res;
  out.gauge = opts.gauge;
  out.generators.assign(std::size_t(order + 1), Polynomial(Chart::complex, order));

  Polynomial hc = h;
  out.phi = TruncatedMap::identity(order);
  if (h.is_float())
    for (auto& c : out.phi.comp) c = c.to_float();
  if (opts.pre_map) {
    out.phi = *opts.pre_map;
    out.phi.order = order;
    for (auto& c : out.phi.comp) c = c.with_order(order);
    hc = out.phi.pullback(h, order);
  }
  for (int s = 3; s <= order; ++s) {
    KerImSplit split = split_ker_im(hc.homogeneous(s), res);
    if (split.image.empty()) continue;
    Polynomial g = solve_homological(split.image, alpha, res);
    out.generators[std::size_t(s)] = g;
    TruncatedMap step = invert_generating(to_real(g), order, GeneratingKind::eta_x);
    hc = step.pullback(hc, order).chopped();
    out.phi = out.phi.after(step);
    if (!(to_complex(hc.homogeneous(s)) - split.kernel).chopped().empty()) {
      throw std::logic_error("normalize: degree " + std::to_string(s) + " not normalized");
    }
  }
  out.hn = to_complex(hc);
  return out;
}

struct VerifyReport {
  bool in_kernel = false;
  bool conjugacy = false;
  bool symplectic = false;
  Polynomial residual;
  Scalar symplectic_defect;
  /// First failing check and the coefficient it failed on; empty on success.
  std::string failure;
  bool ok() const { return in_kernel && conjugacy && symplectic; }
};

/// Checks H_N in ker D, H o phi - H_N = O(order + 1) and that phi is
/// symplectic through the truncation order.
inline VerifyReport verify(const NormalFormResult& nf, const Polynomial& h) {
  VerifyReport r;
  const Polynomial hn = nf.hn.chopped();
  r.in_kernel = true;
  const Polynomial hc = to_complex(hn).chopped();
  for (const auto& t : hc.terms()) {
    if (!in_kernel(t.e, nf.res)) {
      r.in_kernel = false;
      r.failure = "monomial " + exponent_str(t.e) + " of H_N is not in ker D";
      break;
    }
  }
  r.residual = (nf.phi.pullback(to_real(h).with_order(nf.order), nf.order) - to_real(hn)).chopped();
  r.conjugacy = r.residual.empty();
  if (!r.conjugacy && r.failure.empty()) {
    const Polynomial rc = to_complex(r.residual).chopped();
    const Polynomial::Term t = rc.empty() ? r.residual.terms().front() : rc.terms().front();
    r.failure = "H o phi - H_N has coefficient " + t.c.str() + " at " + exponent_str(t.e);
  }
  r.symplectic_defect = symplectic_defect(nf.phi);
  const double tol = std::pow(10.0, 6.0 - double(float_digits()));
  r.symplectic = r.symplectic_defect.is_exact() ? r.symplectic_defect.is_zero()
                                                : std::abs(r.symplectic_defect.to_double()) <= tol;
  if (!r.symplectic && r.failure.empty()) r.failure = "symplectic defect " + r.symplectic_defect.str();
  return r;
}

/// Which invariant plane: `y2x2` is {y2 = x2 = 0}, `y1x1` is {y1 = x1 = 0}.
enum class Plane { y2x2, y1x1 };

/// The plane is invariant iff no monomial has degree exactly one in the
/// vanishing pair of variables.
inline bool check_plane_invariance(const Polynomial& h, Plane plane) {
  const int a = plane == Plane::y2x2 ? 1 : 0;
  const int b = a + 2;
  for (const auto& t : h.terms()) {
    if (t.e[a] + t.e[b] == 1) return false;
  }
  return true;
}

/// R rotates the (y1, y2) and (x1, x2) planes together by 2 pi / p;
/// diagonal multiplies z1 by exp(-2 pi i / p) and z2 by exp(2 pi i / p).
enum class ZpConvention { rotation, diagonal };

namespace detail {

inline std::optional<std::pair<Scalar, Scalar>> exact_cos_sin(int p) {
  const Scalar half(1, 2);
  const Scalar r3 = Scalar::quadratic(0, Rational(1, 2), 3);
  switch (p) {
    case 1:
      return std::pair{Scalar(1), Scalar(0)};
    case 2:
      return std::pair{Scalar(-1), Scalar(0)};
    case 3:
      return std::pair{-half, r3};
    case 4:
      return std::pair{Scalar(0), Scalar(1)};
    case 6:
      return std::pair{half, r3};
    default:
      return std::nullopt;
  }
}

inline std::array<Polynomial, 4> rotation_images(const Scalar& c, const Scalar& s, int order) {
  std::array<Polynomial, 4> img;
  for (int base : {0, 2}) {
    img[base] = Polynomial(Chart::real, order);
    img[base].add_term(make_exponent(base == 0, 0, base == 2, 0), Coeff(c));
    img[base].add_term(make_exponent(0, base == 0, 0, base == 2), Coeff(-s));
    img[base + 1] = Polynomial(Chart::real, order);
    img[base + 1].add_term(make_exponent(base == 0, 0, base == 2, 0), Coeff(s));
    img[base + 1].add_term(make_exponent(0, base == 0, 0, base == 2), Coeff(c));
  }
  return img;
}

}  // namespace detail

/// H o R (rotation convention) in the real chart.
inline Polynomial apply_zp_rotation(const Polynomial& h, int p) {
  auto cs = detail::exact_cos_sin(p);
  if (!cs) throw std::invalid_argument("exact rotation only for p in {1,2,3,4,6}");
  Polynomial hr = to_real(h);
  return hr.compose(detail::rotation_images(cs->first, cs->second, hr.order()), hr.order());
}

/// Invariance of H under the order-p symmetry. Exact for the diagonal
/// convention and for p in {1, 2, 3, 4, 6}; other p use a float comparison
/// with relative tolerance 1e-12.
inline bool check_zp_invariance(const Polynomial& h, int p, ZpConvention conv = ZpConvention::rotation) {
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (conv == ZpConvention::diagonal) {
    Polynomial hc = to_complex(h);
    for (const auto& t : hc.terms()) {
      int w = -int(t.e[0]) + int(t.e[1]) + int(t.e[2]) - int(t.e[3]);
      if (((w % p) + p) % p != 0) return false;
    }
    return true;
  }
  Polynomial hr = to_real(h);
  if (detail::exact_cos_sin(p)) {
    try {
      return apply_zp_rotation(hr, p) == hr;
    } catch (const field_error&) {
      // coefficients live in another quadratic field: compare in floats
    }
  }
  const double th = 2 * 3.14159265358979323846 / p;
  Polynomial hf = hr.to_float();
  Polynomial rot = hf.compose(detail::rotation_images(Scalar::from_double(std::cos(th)),
                                                      Scalar::from_double(std::sin(th)), hf.order()),
                              hf.order());
  double scale = std::max(1.0, hf.max_abs_coeff().to_double());
  return (rot - hf).max_abs_coeff().to_double() <= 1e-12 * scale;
}

/// The unitary symplectic map Psi(y1, y2, x1, x2) =
/// 2^{-1/2} (y1 + y2, x1 - x2, x1 + x2, y2 - y1).
inline TruncatedMap psi_map(int order) {
  const Scalar r = Scalar::quadratic(0, Rational(1, 2), 2);
  const Scalar z;
  std::array<std::array<Scalar, 4>, 4> m{{{r, r, z, z}, {z, z, r, -r}, {z, z, r, r}, {-r, r, z, z}}};
  return TruncatedMap::linear(m, order);
}

/// H o Psi (same chart as the input).
inline Polynomial psi_conjugate(const Polynomial& h) {
  Polynomial hr = to_real(h);
  Polynomial out = psi_map(hr.order()).pullback(hr, hr.order());
  return h.chart() == Chart::complex ? to_complex(out) : out;
}

/// Replaces H_N by H_N o Psi and phi by phi o Psi. Requires alpha1 = alpha2.
inline NormalFormResult apply_psi(const NormalFormResult& nf) {
  if (nf.alpha.a1 != nf.alpha.a2) throw precondition_error("Psi route needs alpha1 = alpha2");
  NormalFormResult r = nf;
  r.hn = psi_conjugate(nf.hn);
  r.phi = nf.phi.after(psi_map(nf.order));
  r.psi_applied = true;
  return r;
}

/// Normalization of a Z_p-symmetric Hamiltonian with alpha1 = alpha2,
/// checking that each Gamma_s and G_s inherits the symmetry.
inline NormalFormResult symmetric_normalize_zp(const Polynomial& h, int p, int order,
                                               ZpConvention conv = ZpConvention::rotation) {
  if (p < 3) throw precondition_error("Z_p symmetry needs p >= 3");
  if (!check_zp_invariance(h, p, conv)) throw precondition_error("Hamiltonian is not Z_p invariant");
  Frequencies alpha = frequencies_of(h);
  if (alpha.a1 != alpha.a2) throw precondition_error("Z_p route needs alpha1 = alpha2");
  NormalFormResult nf = normalize(h, order, ResonanceVector::pair(-1, 1));
  if (!check_zp_invariance(nf.hn, p, conv)) throw std::logic_error("normal form lost the Z_p symmetry");
  for (const auto& g : nf.generators) {
    if (!g.empty() && !check_zp_invariance(g, p, conv)) throw std::logic_error("generator lost the Z_p symmetry");
  }
  return nf;
}

/// eps^{-2} H_N(eps .) plus the remainder (degrees > N) weighted by
/// delta^{N-1} eps^{-(N+1)}: a degree-d coefficient picks up eps^{d-2}
/// (d <= N) or delta^{N-1} eps^{d-N-1} (d > N).
inline Polynomial rescale(const Polynomial& h, const Scalar& eps, const Scalar& delta, int n) {
  if (eps.sign() <= 0) throw precondition_error("rescale needs eps > 0");
  return h.map_coeffs([&](const Exponent& e, const Coeff& c) {
    const int d = degree(e);
    Scalar f = d <= n ? eps.pow(d - 2) : delta.pow(n - 1) * eps.pow(d - n - 1);
    return c * f;
  });
}

}  // namespace bgnf
