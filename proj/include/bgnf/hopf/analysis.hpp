#pragma once
// From a normal form to a Hopf-link verdict: the nu index, Omega and beta
// coefficients, existence of the axis orbits, amplitude and frequency
// series, the C/Delta case data, rotation numbers and the twist product.

#include "bgnf/hopf/series.hpp"
#include "bgnf/normalform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bgnf {

namespace detail {

inline std::optional<Coeff> coeff_at(const NormalFormResult& nf, int k1, int k2, int l1, int l2) {
  if (k1 < 0 || k2 < 0 || l1 < 0 || l2 < 0 || k1 + k2 + l1 + l2 > nf.order) return std::nullopt;
  return nf.hn.coeff(k1, k2, l1, l2);
}

inline Scalar real_at(const NormalFormResult& nf, int k1, int k2, int l1, int l2) {
  auto c = coeff_at(nf, k1, k2, l1, l2);
  return c ? c->re : Scalar();
}

inline bool coeff_zero(const Coeff& c) { return negligible(c.re) && negligible(c.im); }

inline Scalar unit_of(const NormalFormResult& nf) { return nf.alpha.a1.lift(1); }

inline Scalar lifted(const NormalFormResult& nf, const Rational& q) { return nf.alpha.a1.lift(q); }

inline SeriesE series_to_float(const SeriesE& s) {
  std::vector<Scalar> c;
  for (const auto& x : s.coeffs()) c.push_back(x.to_float());
  return SeriesE(c, s.error_order());
}

/// sqrt(f) for a series with a positive constant term.
inline SeriesE series_sqrt(const SeriesE& f) {
  const Scalar c0 = f[0];
  if (f.size() == 0 || c0.sign() <= 0) throw std::domain_error("series_sqrt: constant term must be positive");
  const Scalar s0 = c0.sqrt();
  SeriesE u = f * c0.inverse() - SeriesE::constant(c0.lift(1), f.error_order());
  return SeriesE::sqrt_one_plus(u) * s0;
}

}  // namespace detail

/// Smallest 2 <= nu <= floor(N/2) such that one of a_{nu,0,nu,0},
/// a_{0,nu,0,nu}, a_{nu-1,1,nu-1,1}, a_{1,nu-1,1,nu-1} is non-zero.
inline std::optional<int> nu_index(const NormalFormResult& nf) {
  for (int nu = 2; nu <= nf.order / 2; ++nu) {
    for (auto c : {nf.a(nu, 0, nu, 0), nf.a(0, nu, 0, nu), nf.a(nu - 1, 1, nu - 1, 1), nf.a(1, nu - 1, 1, nu - 1)}) {
      if (!detail::coeff_zero(c)) return nu;
    }
  }
  return std::nullopt;
}

struct OmegaCoeffs {
  int nu = 0;
  Scalar omega1, omega2, omega;
};

inline OmegaCoeffs omega_coeffs(const NormalFormResult& nf, int nu) {
  if (nu < 2 || 2 * nu > nf.order) throw precondition_error("nu must satisfy 2 <= nu <= N/2");
  const Scalar& a1 = nf.alpha.a1;
  const Scalar& a2 = nf.alpha.a2;
  const Scalar n = detail::lifted(nf, nu);
  OmegaCoeffs o;
  o.nu = nu;
  o.omega1 = nf.a(nu - 1, 1, nu - 1, 1).re - n * nf.a(nu, 0, nu, 0).re * a2 / a1;
  o.omega2 = nf.a(1, nu - 1, 1, nu - 1).re - n * nf.a(0, nu, 0, nu).re * a1 / a2;
  o.omega = o.omega1 / (a2 * a1.pow(nu - 1)) + o.omega2 / (a1 * a2.pow(nu - 1));
  return o;
}

/// beta1 = 6 (2 a2020 - a1111) a2020 + alpha1 (a2121 - 3 a3030) and the
/// mirrored beta2. Defined for alpha1 = alpha2 and N >= 6.
inline std::pair<Scalar, Scalar> beta_coeffs(const NormalFormResult& nf) {
  if (nf.alpha.a1 != nf.alpha.a2) throw precondition_error("beta coefficients need alpha1 = alpha2");
  if (nf.order < 6) throw precondition_error("beta coefficients need normalization order >= 6");
  auto a = [&](int k1, int k2, int l1, int l2) { return nf.a(k1, k2, l1, l2).re; };
  const Scalar six = detail::lifted(nf, 6), two = detail::lifted(nf, 2), three = detail::lifted(nf, 3);
  const Scalar& al = nf.alpha.a1;
  Scalar b1 = six * (two * a(2, 0, 2, 0) - a(1, 1, 1, 1)) * a(2, 0, 2, 0) + al * (a(2, 1, 2, 1) - three * a(3, 0, 3, 0));
  Scalar b2 = six * (two * a(0, 2, 0, 2) - a(1, 1, 1, 1)) * a(0, 2, 0, 2) + al * (a(1, 2, 1, 2) - three * a(0, 3, 0, 3));
  return {b1, b2};
}

struct OrbitExistence {
  bool gamma1 = true;
  bool gamma2 = true;
  /// Coefficients that obstruct an orbit, as exponent strings.
  std::vector<std::string> obstructions;
};

/// gamma1 in {z2 = 0} exists when m2 > 1, and for m2 = 1 when every stored
/// a_{k,1,k+|m1|,0} vanishes; gamma2 in {z1 = 0} exists when |m1| > 1, and
/// for |m1| = 1 when every stored a_{0,k+1,1,k} vanishes.
inline OrbitExistence orbit_existence(const NormalFormResult& nf) {
  OrbitExistence out;
  if (nf.res.none) return out;
  const int am1 = -nf.res.m1;
  if (nf.res.m2 == 1) {
    for (int k = 0; 2 * k + 1 + am1 <= nf.order; ++k) {
      if (!detail::coeff_zero(nf.a(k, 1, k + am1, 0))) {
        out.gamma1 = false;
        out.obstructions.push_back("gamma1: a" + exponent_str(make_exponent(k, 1, k + am1, 0)));
      }
    }
  }
  if (am1 == 1) {
    for (int k = 0; 2 * k + 2 <= nf.order; ++k) {
      if (!detail::coeff_zero(nf.a(0, k + 1, 1, k))) {
        out.gamma2 = false;
        out.obstructions.push_back("gamma2: a" + exponent_str(make_exponent(0, k + 1, 1, k)));
      }
    }
  }
  return out;
}

namespace detail {

/// Radial data of axis j: E = (alpha_j/2) x + sum_k a_k x^k with x = |z_j|^2.
inline SeriesE energy_of_amplitude(const NormalFormResult& nf, int axis) {
  const int kmax = nf.order / 2;
  const Scalar& al = axis == 1 ? nf.alpha.a1 : nf.alpha.a2;
  std::vector<Scalar> c(static_cast<std::size_t>(kmax + 1), Scalar());
  c[0] = lifted(nf, 0);
  c[1] = al * lifted(nf, Rational(1, 2));
  for (int k = 2; k <= kmax; ++k) c[std::size_t(k)] = axis == 1 ? real_at(nf, k, 0, k, 0) : real_at(nf, 0, k, 0, k);
  return SeriesE(c, kmax + 1);
}

/// omega_j = alpha_j + 2 sum k a_k x^{k-1} as a series in x.
inline SeriesE own_frequency_in_x(const NormalFormResult& nf, int axis) {
  const int kmax = nf.order / 2;
  std::vector<Scalar> c;
  c.push_back(axis == 1 ? nf.alpha.a1 : nf.alpha.a2);
  for (int k = 2; k <= kmax; ++k) {
    Scalar a = axis == 1 ? real_at(nf, k, 0, k, 0) : real_at(nf, 0, k, 0, k);
    c.push_back(a * lifted(nf, 2 * k));
  }
  return SeriesE(c, kmax);
}

/// Transverse frequency alpha_other + 2 sum a_{k-1,1,k-1,1} x^{k-1}.
inline SeriesE transverse_frequency_in_x(const NormalFormResult& nf, int axis) {
  const int kmax = nf.order / 2;
  std::vector<Scalar> c;
  c.push_back(axis == 1 ? nf.alpha.a2 : nf.alpha.a1);
  for (int k = 2; k <= kmax; ++k) {
    Scalar a = axis == 1 ? real_at(nf, k - 1, 1, k - 1, 1) : real_at(nf, 1, k - 1, 1, k - 1);
    c.push_back(a * lifted(nf, 2));
  }
  return SeriesE(c, kmax);
}

inline int default_order(const NormalFormResult& nf) { return nf.order / 2 - 1; }

}  // namespace detail

/// |z_j|^2 along the axis orbit as a series in E: the inverse of
/// E = (alpha_j/2) c^2 + (radial terms). K < 0 keeps every justified term.
inline SeriesE amplitude_series(const NormalFormResult& nf, int axis, int K = -1) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
  auto ex = orbit_existence(nf);
  if (!(axis == 1 ? ex.gamma1 : ex.gamma2)) throw precondition_error("axis orbit does not exist for this normal form");
  SeriesE x = detail::energy_of_amplitude(nf, axis).revert();
  return K < 0 ? x : x.truncated(K + 1);
}

struct FrequencySeries {
  /// omega_j: frequency of gamma_j; omega_hat: transverse frequency along
  /// gamma_1 (omega_hat2) or gamma_2 (omega_hat1).
  std::optional<SeriesE> omega1, omega2, omega_hat1, omega_hat2;
};

inline FrequencySeries frequency_series(const NormalFormResult& nf, int K = -1) {
  if (K < 0) K = detail::default_order(nf);
  FrequencySeries f;
  auto ex = orbit_existence(nf);
  if (ex.gamma1) {
    SeriesE x = amplitude_series(nf, 1);
    f.omega1 = detail::own_frequency_in_x(nf, 1).compose(x).truncated(K + 1);
    f.omega_hat2 = detail::transverse_frequency_in_x(nf, 1).compose(x).truncated(K + 1);
  }
  if (ex.gamma2) {
    SeriesE x = amplitude_series(nf, 2);
    f.omega2 = detail::own_frequency_in_x(nf, 2).compose(x).truncated(K + 1);
    f.omega_hat1 = detail::transverse_frequency_in_x(nf, 2).compose(x).truncated(K + 1);
  }
  return f;
}

/// Leading term of a series: coefficient * E^exponent, or O(E^exponent)
/// when no known coefficient is non-zero.
struct Leading {
  bool known = false;
  int exponent = 0;
  Scalar coefficient;
  int sign() const { return known ? coefficient.sign() : 0; }
  std::string str() const {
    if (!known) return "O(E^" + std::to_string(exponent) + ")";
    return coefficient.str() + "*E^" + std::to_string(exponent);
  }
};

inline Leading leading_of(const SeriesE& s) {
  Leading l;
  l.exponent = s.valuation();
  l.known = s.known_nonzero();
  if (l.known) l.coefficient = s.leading();
  return l;
}

/// free: no off-diagonal coupling, rho = 1 + omega_hat/omega;
/// unlocked: C > 0; locked: C < 0; indeterminate: sign of C unknown at
/// the available order.
enum class Branch { free, unlocked, locked, indeterminate };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::free:
      return "free";
    case Branch::unlocked:
      return "unlocked";
    case Branch::locked:
      return "locked";
    case Branch::indeterminate:
      return "indeterminate";
  }
  return "?";
}

/// Rotation data of one axis orbit.
struct AxisRotation {
  int axis = 1;
  bool exists = false;
  bool coupled = false;
  /// C has an odd leading exponent, so rho - 1 - p ~ E^{k/2}.
  bool half_power = false;
  Branch branch = Branch::free;
  /// |m1|/m2 on axis 1, m2/|m1| on axis 2 (coupled axes only).
  Scalar p;
  /// omega_hat_other / omega_self.
  SeriesE ratio;
  /// d = ratio - p, q = (2 c~ / omega)^2, C = d^2 - q and Delta = |d| - sqrt(C).
  SeriesE d, q, C, delta;
  Leading c_lead, delta_lead;
  SeriesE rho;
};

namespace detail {

inline AxisRotation axis_rotation(const NormalFormResult& nf, int axis, int K, bool exists) {
  AxisRotation r;
  r.axis = axis;
  r.exists = exists;
  if (!exists) return r;
  const Scalar one = unit_of(nf);
  const int N = nf.order;
  SeriesE x = amplitude_series(nf, axis);
  SeriesE omega = own_frequency_in_x(nf, axis).compose(x);
  SeriesE omega_hat = transverse_frequency_in_x(nf, axis).compose(x);
  r.ratio = omega_hat / omega;

  // The off-diagonal block d^2 H / d conj(z_other)^2 along the orbit is
  // non-zero only when m2 in {1, 2} (axis 1) or m2 = 1, |m1| in {1, 2} (axis 2).
  const bool res = !nf.res.none;
  const int am1 = res ? -nf.res.m1 : 0, m2 = res ? nf.res.m2 : 0;
  if (axis == 1) r.coupled = res && (m2 == 1 || m2 == 2);
  if (axis == 2) r.coupled = res && m2 == 1 && (am1 == 1 || am1 == 2);
  if (!r.coupled) {
    r.branch = Branch::free;
    r.rho = (SeriesE::constant(one, r.ratio.error_order()) + r.ratio).truncated(K + 1);
    return r;
  }
  const int j0 = axis == 1 ? 2 * am1 / m2 : 2 / am1;
  r.p = axis == 1 ? lifted(nf, Rational(am1, m2)) : lifted(nf, Rational(1, am1));
  r.d = r.ratio - SeriesE::constant(r.p, r.ratio.error_order());

  // S(x) = sum_k a_{k,2,k+j0,0} x^k (axis 1) or a_{0,k+j0,2,k} x^k (axis 2).
  std::vector<Coeff> s;
  for (int k = 0; 2 * k + 2 + j0 <= N; ++k) s.push_back(axis == 1 ? nf.a(k, 2, k + j0, 0) : nf.a(0, k + j0, 2, k));
  const int ks = int(s.size());
  int vs = ks;
  for (int k = 0; k < ks; ++k) {
    if (!coeff_zero(s[std::size_t(k)])) {
      vs = k;
      break;
    }
  }
  const int err_s2 = ks + vs;
  std::vector<Scalar> s2(static_cast<std::size_t>(err_s2), Scalar());
  for (int i = 0; i < ks; ++i) {
    for (int j = 0; j < ks && i + j < err_s2; ++j) {
      const Coeff& a = s[std::size_t(i)];
      const Coeff& b = s[std::size_t(j)];
      s2[std::size_t(i + j)] += a.re * b.re + a.im * b.im;
    }
  }
  for (auto& c : s2)
    if (c.is_exact_zero()) c = one.lift(0);
  SeriesE q_x = SeriesE(s2, err_s2).shift_up(j0) * lifted(nf, 16);
  r.q = q_x.compose(x) / (omega * omega);
  r.C = r.d * r.d - r.q;
  r.c_lead = leading_of(r.C);

  const SeriesE base = SeriesE::constant(one + r.p, K + 1);
  if (!r.C.known_nonzero()) {
    r.branch = Branch::indeterminate;
    r.rho = base + SeriesE::unknown(r.C.error_order() / 2);
    r.rho = r.rho.truncated(K + 1);
    r.delta = SeriesE::unknown(r.C.error_order() / 2);
    r.delta_lead = leading_of(r.delta);
    return r;
  }
  if (r.c_lead.sign() < 0) {
    r.branch = Branch::locked;
    r.rho = base;
    r.delta = SeriesE::unknown(0);
    r.delta_lead = leading_of(r.delta);
    return r;
  }
  r.branch = Branch::unlocked;
  // C > 0 forces d^2 to dominate, so d has a known leading term.
  const int sd = r.d.leading().sign();
  const SeriesE abs_d = sd < 0 ? -r.d : r.d;
  const int vc = r.c_lead.exponent;
  if (vc % 2 != 0) {
    // sqrt(C) ~ E^{vc/2} is not a power series in E; keep only what is certain.
    r.half_power = true;
    r.rho = (base + SeriesE::unknown(vc / 2)).truncated(K + 1);
    r.delta = abs_d.truncated(vc / 2);
    r.delta_lead = leading_of(r.delta);
    return r;
  }
  auto root_of = [&](const SeriesE& c) { return detail::series_sqrt(c.shift_down(vc)).shift_up(vc / 2); };
  SeriesE root;
  SeriesE b = base, ad = abs_d;
  try {
    root = root_of(r.C);
  } catch (const field_error&) {
    root = root_of(series_to_float(r.C));
    b = series_to_float(base);
    ad = series_to_float(abs_d);
  }
  r.delta = ad - root;
  r.delta_lead = leading_of(r.delta);
  r.rho = (sd < 0 ? b - root : b + root).truncated(K + 1);
  return r;
}

}  // namespace detail

struct RotationSeries {
  AxisRotation axis1, axis2;
};

/// rho_1 and rho_2 with the branch chosen from the sign of C; K < 0 uses
/// floor(N/2) - 1.
inline RotationSeries rotation_series(const NormalFormResult& nf, int K = -1) {
  if (K < 0) K = detail::default_order(nf);
  auto ex = orbit_existence(nf);
  return {detail::axis_rotation(nf, 1, K, ex.gamma1), detail::axis_rotation(nf, 2, K, ex.gamma2)};
}

/// Leading behaviour of C and Delta on each axis. An uncoupled axis is the
/// C > 0 branch with p = 0 and no off-diagonal term, so C = ratio^2 and
/// Delta vanishes identically.
struct CaseQuantities {
  struct Axis {
    bool exists = false;
    bool coupled = false;
    Branch branch = Branch::free;
    Leading C, Delta;
    bool delta_vanishes = false;
  };
  Axis axis1, axis2;
};

inline CaseQuantities case_quantities(const NormalFormResult& nf, int K = -1) {
  const RotationSeries rs = rotation_series(nf, K);
  auto one = [](const AxisRotation& r) {
    CaseQuantities::Axis a;
    a.exists = r.exists;
    if (!r.exists) return a;
    a.coupled = r.coupled;
    a.branch = r.branch;
    if (r.coupled) {
      a.C = r.c_lead;
      a.Delta = r.delta_lead;
    } else {
      a.C = leading_of(r.ratio * r.ratio);
      a.delta_vanishes = true;
    }
    return a;
  };
  return {one(rs.axis1), one(rs.axis2)};
}

/// (rho1 - 1)(rho2 - 1); equals 1 exactly when both orbits are locked.
inline SeriesE twist_product(const RotationSeries& rs, int K) {
  if (!rs.axis1.exists || !rs.axis2.exists) throw precondition_error("twist product needs both axis orbits");
  const Scalar one = rs.axis1.rho[0].lift(1);
  if (rs.axis1.branch == Branch::locked && rs.axis2.branch == Branch::locked) {
    return SeriesE::constant((rs.axis1.rho[0] - one) * (rs.axis2.rho[0] - one), K + 1);
  }
  SeriesE a = rs.axis1.rho - SeriesE::constant(one, rs.axis1.rho.error_order());
  SeriesE b = rs.axis2.rho - SeriesE::constant(rs.axis2.rho[0].lift(1), rs.axis2.rho.error_order());
  if (a.size() && b.size() && a[0].is_exact() != b[0].is_exact()) {
    a = detail::series_to_float(a);
    b = detail::series_to_float(b);
  }
  return (a * b).truncated(K + 1);
}

inline SeriesE twist_product(const NormalFormResult& nf, int K = -1) {
  if (K < 0) K = detail::default_order(nf);
  return twist_product(rotation_series(nf, K), K);
}

/// Symmetry facts established for the Hamiltonian before normalization.
struct SymmetryInfo {
  /// {y2 = x2 = 0} is invariant (needed by the nontrivial-multiple theorem).
  bool plane_y2x2 = false;
  /// Order p >= 3 of a verified Z_p symmetry (needed when alpha1 = alpha2).
  std::optional<int> zp;
};

struct CaseVerdict {
  /// "1.1", "1.2", "1.3" or empty when inconclusive.
  std::string theorem;
  /// "i", "ii", ... or empty.
  std::string clause;
  bool inconclusive = true;
  /// One line per clause examined, naming the first unmet hypothesis.
  std::vector<std::string> trace;
  /// Predicted twist product 1 + coefficient * E^power.
  int power = 0;
  Scalar coefficient;

  std::string label() const {
    return inconclusive ? std::string("Inconclusive") : "Theorem " + theorem + "(" + clause + ")";
  }
};

namespace detail {

struct ClauseCheck {
  std::vector<std::string>& trace;
  std::string name;
  std::string failure;
  bool require(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
    return cond;
  }
  bool done() {
    trace.push_back(name + ": " + (failure.empty() ? std::string("satisfied") : "fails (" + failure + ")"));
    return failure.empty();
  }
};

inline std::string aname(int k1, int k2, int l1, int l2) {
  return "a_{" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(l1) + "," + std::to_string(l2) +
         "}";
}

}  // namespace detail

/// Walks the clause lists of the three theorems in order and returns the
/// first satisfied clause with its predicted leading twist term.
inline CaseVerdict theorem_check(const NormalFormResult& nf, const SymmetryInfo& sym) {
  CaseVerdict v;
  auto nu = nu_index(nf);
  const ResonanceClass cls = classify(nf.res);
  const Scalar& a1 = nf.alpha.a1;
  const Scalar& a2 = nf.alpha.a2;
  auto nz = [](const Scalar& s) { return !negligible(s); };
  auto czero = [&](int k1, int k2, int l1, int l2) {
    auto c = detail::coeff_at(nf, k1, k2, l1, l2);
    return c && detail::coeff_zero(*c);
  };
  auto cnonzero = [&](int k1, int k2, int l1, int l2) {
    auto c = detail::coeff_at(nf, k1, k2, l1, l2);
    return c && !detail::coeff_zero(*c);
  };
  auto accept = [&](const char* th, const char* cl, int power, const Scalar& coef) {
    v.theorem = th;
    v.clause = cl;
    v.inconclusive = false;
    v.power = power;
    v.coefficient = coef;
    return v;
  };
  if (!nu) {
    v.trace.push_back("nu is absent up to order " + std::to_string(nf.order) + ": the Hopf link of H_N is resonant");
    return v;
  }
  const OmegaCoeffs om = omega_coeffs(nf, *nu);
  const int n = *nu;
  const Scalar two_pow = detail::lifted(nf, 2).pow(n);
  const Scalar generic = two_pow * om.omega;
  const int am1 = nf.res.none ? 0 : -nf.res.m1;
  const int m2 = nf.res.none ? 0 : nf.res.m2;
  const std::string sig = nf.res.none ? "" : detail::aname(0, 2, am1, 0);

  if (cls == ResonanceClass::nonresonant || cls == ResonanceClass::weakly_nonresonant) {
    {
      detail::ClauseCheck c{v.trace, "1.1(i)", ""};
      c.require(nf.res.none || m2 > 2, "m2 > 2");
      c.require(nz(om.omega), "Omega_nu != 0");
      if (c.done()) return accept("1.1", "i", n - 1, generic);
    }
    {
      detail::ClauseCheck c{v.trace, "1.1(ii)", ""};
      c.require(m2 == 2, "m2 = 2");
      c.require(am1 > 2 * (n - 1), "|m1| > 2(nu-1)");
      c.require(nz(om.omega1), "Omega_{nu,1} != 0");
      c.require(nz(om.omega), "Omega_nu != 0");
      if (c.done()) return accept("1.1", "ii", n - 1, generic);
    }
    {
      detail::ClauseCheck c{v.trace, "1.1(iii)", ""};
      c.require(m2 == 2, "m2 = 2");
      c.require(am1 == 2 * (n - 1), "|m1| = 2(nu-1)");
      c.require(nz(om.omega1), "Omega_{nu,1} != 0");
      c.require(nz(om.omega), "Omega_nu != 0");
      c.require(m2 == 2 && czero(0, 2, am1, 0), sig + " = 0");
      if (c.done()) return accept("1.1", "iii", n - 1, generic);
    }
    {
      detail::ClauseCheck c{v.trace, "1.1(iv)", ""};
      c.require(m2 == 2, "m2 = 2");
      c.require(am1 < 2 * (n - 1), "|m1| < 2(nu-1)");
      c.require(nz(om.omega2), "Omega_{nu,2} != 0");
      c.require(m2 == 2 && cnonzero(0, 2, am1, 0), sig + " != 0");
      if (c.done()) {
        Scalar coef = detail::lifted(nf, Rational(am1, 2)) * (detail::lifted(nf, 2) / a2).pow(n) * om.omega2;
        return accept("1.1", "iv", n - 1, coef);
      }
    }
    return v;
  }

  if (cls == ResonanceClass::nontrivial_multiple) {
    if (!sym.plane_y2x2) {
      v.trace.push_back("1.2: the plane {y2 = x2 = 0} is not known to be invariant");
      return v;
    }
    const std::string sig2 = detail::aname(0, 2, 2 * am1, 0);
    {
      detail::ClauseCheck c{v.trace, "1.2(i)", ""};
      c.require(am1 > 2, "|m1| > 2");
      c.require(am1 > n - 1, "|m1| > nu-1");
      c.require(nz(om.omega1), "Omega_{nu,1} != 0");
      c.require(nz(om.omega), "Omega_nu != 0");
      if (c.done()) return accept("1.2", "i", n - 1, generic);
    }
    {
      detail::ClauseCheck c{v.trace, "1.2(ii)", ""};
      c.require(am1 > 2, "|m1| > 2");
      c.require(am1 == n - 1, "|m1| = nu-1");
      c.require(nz(om.omega1), "Omega_{nu,1} != 0");
      c.require(nz(om.omega), "Omega_nu != 0");
      c.require(czero(0, 2, 2 * am1, 0), sig2 + " = 0");
      if (c.done()) return accept("1.2", "ii", n - 1, generic);
    }
    {
      detail::ClauseCheck c{v.trace, "1.2(iii)", ""};
      c.require(am1 > 2, "|m1| > 2");
      c.require(am1 < n - 1, "|m1| < nu-1");
      c.require(nz(om.omega2), "Omega_{nu,2} != 0");
      c.require(cnonzero(0, 2, 2 * am1, 0), sig2 + " != 0");
      if (c.done()) {
        Scalar coef = detail::lifted(nf, am1) * (detail::lifted(nf, 2) / a2).pow(n) * om.omega2;
        return accept("1.2", "iii", n - 1, coef);
      }
    }
    {
      detail::ClauseCheck c{v.trace, "1.2(iv)", ""};
      c.require(am1 == 2, "|m1| = 2");
      c.require(n == 2, "nu = 2");
      c.require(nz(om.omega1), "Omega_{2,1} != 0");
      c.require(cnonzero(0, 1, 2, 0), "a_{0,1,2,0} != 0");
      if (c.done()) return accept("1.2", "iv", 1, detail::lifted(nf, 2) / (a1 * a1) * om.omega1);
    }
    {
      detail::ClauseCheck c{v.trace, "1.2(v)", ""};
      c.require(am1 == 2, "|m1| = 2");
      c.require(n == 2, "nu = 2");
      c.require(nz(om.omega1), "Omega_{2,1} != 0");
      c.require(nz(om.omega), "Omega_2 != 0");
      if (c.done()) {
        // The E coefficient depends on whether gamma2 is locked.
        auto rs = rotation_series(nf);
        if (rs.axis2.branch == Branch::locked) {
          return accept("1.2", "v", 1, detail::lifted(nf, 2) / (a1 * a1) * om.omega1);
        }
        return accept("1.2", "v", 1, detail::lifted(nf, 4) * om.omega);
      }
    }
    {
      detail::ClauseCheck c{v.trace, "1.2(vi)", ""};
      c.require(am1 == 2, "|m1| = 2");
      c.require(n == 3, "nu = 3");
      c.require(nz(om.omega1), "Omega_{3,1} != 0");
      c.require(cnonzero(0, 1, 2, 0), "a_{0,1,2,0} != 0");
      c.require(czero(0, 2, 4, 0), "a_{0,2,4,0} = 0");
      if (c.done()) return accept("1.2", "vi", 2, detail::lifted(nf, 4) / a1.pow(3) * om.omega1);
    }
    return v;
  }

  // alpha1 = alpha2
  if (!sym.zp || *sym.zp < 3) {
    v.trace.push_back("1.3: no Z_p symmetry with p >= 3 is known");
    return v;
  }
  {
    detail::ClauseCheck c{v.trace, "1.3(i)", ""};
    c.require(n == 2, "nu = 2");
    c.require(nz(om.omega), "Omega_2 != 0");
    c.require(czero(0, 2, 2, 0), "a_{0,2,2,0} = 0");
    if (c.done()) return accept("1.3", "i", 1, detail::lifted(nf, 4) * om.omega);
  }
  {
    detail::ClauseCheck c{v.trace, "1.3(ii)", ""};
    c.require(n == 2, "nu = 2");
    c.require(nz(om.omega1) && negligible(om.omega1 + om.omega2), "Omega_{2,1} = -Omega_{2,2} != 0");
    c.require(czero(0, 2, 2, 0), "a_{0,2,2,0} = 0");
    c.require(nf.order >= 6, "N >= 6");
    Scalar b;
    if (nf.order >= 6) {
      auto [b1, b2] = beta_coeffs(nf);
      b = b1 + b2 + detail::lifted(nf, 2) * om.omega1 * om.omega2;
      c.require(nz(b), "beta1 + beta2 + 2 Omega_{2,1} Omega_{2,2} != 0");
    }
    if (c.done()) return accept("1.3", "ii", 2, detail::lifted(nf, 8) / a1.pow(4) * b);
  }
  if (!nf.psi_applied) v.trace.push_back("1.3: the normal form was not composed with Psi");
  return v;
}

/// Everything the hopf module reports for one normal form.
struct HopfAnalysis {
  int order = 0;
  int K = 0;
  std::string gauge;
  bool psi_applied = false;
  std::optional<int> nu;
  std::optional<OmegaCoeffs> omega;
  std::optional<std::pair<Scalar, Scalar>> beta;
  OrbitExistence existence;
  FrequencySeries frequencies;
  std::optional<SeriesE> amplitude1, amplitude2;
  RotationSeries rotation;
  std::optional<SeriesE> twist;
  CaseVerdict verdict;
};

inline HopfAnalysis analyze(const NormalFormResult& nf, const SymmetryInfo& sym = {}, int K = -1) {
  if (K < 0) K = detail::default_order(nf);
  HopfAnalysis h;
  h.order = nf.order;
  h.K = K;
  h.gauge = nf.gauge;
  h.psi_applied = nf.psi_applied;
  h.nu = nu_index(nf);
  if (h.nu) h.omega = omega_coeffs(nf, *h.nu);
  if (nf.alpha.a1 == nf.alpha.a2 && nf.order >= 6) h.beta = beta_coeffs(nf);
  h.existence = orbit_existence(nf);
  h.frequencies = frequency_series(nf, K);
  if (h.existence.gamma1) h.amplitude1 = amplitude_series(nf, 1, K + 1);
  if (h.existence.gamma2) h.amplitude2 = amplitude_series(nf, 2, K + 1);
  h.rotation = rotation_series(nf, K);
  if (h.existence.gamma1 && h.existence.gamma2) h.twist = twist_product(h.rotation, K);
  h.verdict = theorem_check(nf, sym);
  return h;
}

}  // namespace bgnf
