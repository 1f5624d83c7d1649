#pragma once
// Near-identity maps given as four truncated polynomials, and the maps
// induced by generating functions.

#include "bgnf/polyalg/operations.hpp"

#include <array>
#include <stdexcept>

namespace bgnf {

/// (eta, xi) -> (y, x): component i is the image of real slot i, written
/// as a polynomial in the real-chart slots (eta1, eta2, xi1, xi2).
struct TruncatedMap {
  std::array<Polynomial, 4> comp;
  int order = 0;

  static TruncatedMap identity(int order) {
    TruncatedMap m;
    m.order = order;
    for (int i = 0; i < 4; ++i) m.comp[i] = Polynomial::variable(Chart::real, order, i);
    return m;
  }

  /// Linear map with rows mat[i] (image of slot i = sum_j mat[i][j] slot_j).
  static TruncatedMap linear(const std::array<std::array<Scalar, 4>, 4>& mat, int order) {
    TruncatedMap m;
    m.order = order;
    for (int i = 0; i < 4; ++i) {
      m.comp[i] = Polynomial(Chart::real, order);
      for (int j = 0; j < 4; ++j) {
        Exponent e{};
        e[j] = 1;
        m.comp[i].add_term(e, Coeff(mat[i][j]));
      }
    }
    return m;
  }

  /// p o this, truncated at `n` (default: this map's order).
  Polynomial pullback(const Polynomial& p, int n = -1) const {
    if (p.chart() != Chart::real) return to_complex(pullback(to_real(p), n));
    return p.compose(comp, n < 0 ? order : n);
  }

  /// this o inner: first apply `inner`, then this map.
  TruncatedMap after(const TruncatedMap& inner) const {
    TruncatedMap r;
    r.order = std::min(order, inner.order);
    for (int i = 0; i < 4; ++i) r.comp[i] = comp[i].compose(inner.comp, r.order);
    return r;
  }

  std::array<double, 4> evaluate(const std::array<double, 4>& v) const;
};

/// Jacobian (d comp_i / d slot_j) as polynomials.
inline std::array<std::array<Polynomial, 4>, 4> jacobian(const TruncatedMap& m) {
  std::array<std::array<Polynomial, 4>, 4> jac;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) jac[i][j] = m.comp[i].derivative(j);
  return jac;
}

/// Largest coefficient of (DPhi)^T J (DPhi) - J through degree order-1, with
/// J the matrix of the form dy ^ dx in the ordering (y1, y2, x1, x2).
inline Scalar symplectic_defect(const TruncatedMap& m) {
  const int n = m.order - 1;
  auto jac = jacobian(m);
  const bool as_float = std::any_of(m.comp.begin(), m.comp.end(), [](const Polynomial& p) { return p.is_float(); });
  // omega(u, v) = sum_j u_{y_j} v_{x_j} - u_{x_j} v_{y_j}
  Scalar worst;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Polynomial s(Chart::real, n);
      for (int j = 0; j < 2; ++j) {
        s += Polynomial::multiply(jac[j][a], jac[2 + j][b], n);
        s -= Polynomial::multiply(jac[2 + j][a], jac[j][b], n);
      }
      // Constant symplectic form: +1 for (y_j, x_j), -1 for (x_j, y_j).
      int ref = 0;
      if (a < 2 && b == a + 2) ref = 1;
      if (a >= 2 && b == a - 2) ref = -1;
      if (ref != 0) s.add_term(Exponent{}, as_float ? Coeff(Scalar(-ref).to_float()) : Coeff(-ref));
      Scalar w = s.max_abs_coeff();
      if (worst < w) worst = w;
    }
  }
  return worst;
}

enum class GeneratingKind {
  /// G(eta, x): xi = x + dG/deta, y = eta + dG/dx.
  eta_x,
  /// G(y, xi): x = xi + dG/dy, eta = y + dG/dxi.
  y_xi,
};

namespace detail {

inline int fixed_point_iterations(int order, int degree) {
  const int s = std::max(degree, 3);
  return (order - 1 + (s - 3)) / (s - 2) + 1;
}

inline std::array<Polynomial, 4> gradient(const Polynomial& g) {
  return {g.derivative(0), g.derivative(1), g.derivative(2), g.derivative(3)};
}

}  // namespace detail

/// Solves the implicit relations of a generating function for the explicit
/// map (eta, xi) -> (y, x) up to degree `order`. G is a real-chart
/// polynomial whose slots are read according to `kind`; its lowest degree
/// fixes the number of fixed-point sweeps.
inline TruncatedMap invert_generating(const Polynomial& g_in, int order,
                                      GeneratingKind kind = GeneratingKind::eta_x) {
  const Polynomial g = to_real(g_in).with_order(order + 1);
  TruncatedMap phi = TruncatedMap::identity(order);
  if (g.empty()) return phi;
  if (g.min_degree() < 3) throw std::invalid_argument("invert_generating: G must start at degree >= 3");
  const auto grad = detail::gradient(g);
  const int sweeps = detail::fixed_point_iterations(order, g.min_degree());
  std::array<Polynomial, 4> id;
  for (int i = 0; i < 4; ++i) id[i] = Polynomial::variable(Chart::real, order, i).in_field_of(g.is_float());
  if (g.is_float())
    for (auto& c : phi.comp) c = c.to_float();

  if (kind == GeneratingKind::eta_x) {
    // unknown x(eta, xi): x = xi - dG/deta (eta, x)
    std::array<Polynomial, 4> args = id;
    for (int it = 0; it < sweeps; ++it) {
      std::array<Polynomial, 4> next = args;
      for (int j = 0; j < 2; ++j) next[2 + j] = id[2 + j] - grad[j].compose(args, order);
      args = next;
    }
    phi.comp[2] = args[2];
    phi.comp[3] = args[3];
    for (int j = 0; j < 2; ++j) phi.comp[j] = id[j] + grad[2 + j].compose(args, order);
    // residual check: xi - x - dG/deta(eta, x) = O(order + 1)
    for (int j = 0; j < 2; ++j) {
      Polynomial res = id[2 + j] - args[2 + j] - grad[j].compose(args, order);
      if (!res.chopped().empty()) throw std::runtime_error("invert_generating: fixed point did not converge");
    }
  } else {
    // unknown y(eta, xi): y = eta - dG/dxi (y, xi)
    std::array<Polynomial, 4> args = id;
    for (int it = 0; it < sweeps; ++it) {
      std::array<Polynomial, 4> next = args;
      for (int j = 0; j < 2; ++j) next[j] = id[j] - grad[2 + j].compose(args, order);
      args = next;
    }
    phi.comp[0] = args[0];
    phi.comp[1] = args[1];
    for (int j = 0; j < 2; ++j) phi.comp[2 + j] = id[2 + j] + grad[j].compose(args, order);
    for (int j = 0; j < 2; ++j) {
      Polynomial res = id[j] - args[j] - grad[2 + j].compose(args, order);
      if (!res.chopped().empty()) throw std::runtime_error("invert_generating: fixed point did not converge");
    }
  }
  return phi;
}

inline std::array<double, 4> TruncatedMap::evaluate(const std::array<double, 4>& v) const {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    double s = 0;
    for (const auto& t : comp[i].terms()) {
      double m = t.c.re.to_double();
      for (int k = 0; k < 4; ++k)
        for (int p = 0; p < t.e[k]; ++p) m *= v[k];
      s += m;
    }
    out[i] = s;
  }
  return out;
}

}  // namespace bgnf
