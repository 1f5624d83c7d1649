#pragma once
// Truncated polynomials in four phase-space variables.

#include "bgnf/polyalg/scalar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bgnf {

/// Real chart slots are (y1, y2, x1, x2); complex chart slots are
/// (z1, z2, conj z1, conj z2), i.e. exponents (k1, k2, l1, l2).
enum class Chart { real, complex };

inline const char* chart_name(Chart c) { return c == Chart::real ? "real" : "complex"; }

using Exponent = std::array<std::uint8_t, 4>;

inline int degree(const Exponent& e) { return e[0] + e[1] + e[2] + e[3]; }

inline Exponent make_exponent(int a, int b, int c, int d) {
  return Exponent{std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)};
}

inline std::string exponent_str(const Exponent& e) {
  return std::to_string(e[0]) + " " + std::to_string(e[1]) + " " + std::to_string(e[2]) + " " +
         std::to_string(e[3]);
}

/// Number of monomials of degree < d in four variables.
inline std::size_t monomials_below(int d) {
  if (d <= 0) return 0;
  std::size_t n = std::size_t(d);
  return n * (n + 1) * (n + 2) * (n + 3) / 24;
}

/// Position of e in the graded ordering: by degree, then lexicographically
/// descending in (e0, e1, e2).
inline std::size_t monomial_index(const Exponent& e) {
  const int d = degree(e);
  auto tri = [](int n) -> std::size_t { return n < 0 ? 0 : std::size_t(n + 1) * std::size_t(n + 2) / 2; };
  std::size_t rank = 0;
  for (int j = e[0] + 1; j <= d; ++j) rank += tri(d - j);
  const int r0 = d - e[0];
  for (int j = e[1] + 1; j <= r0; ++j) rank += std::size_t(r0 - j + 1);
  rank += std::size_t(r0 - e[1] - e[2]);
  return monomials_below(d) + rank;
}

inline bool graded_less(const Exponent& a, const Exponent& b) {
  const int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a > b;
}

class Polynomial;

namespace detail {

// Dense scratch space indexed by monomial position.
class Accumulator {
 public:
  explicit Accumulator(int order) : order_(order), pos_(monomials_below(order + 1), -1) {}

  void add(const Exponent& e, const Coeff& c) {
    int& p = pos_[monomial_index(e)];
    if (p < 0) {
      p = int(entries_.size());
      entries_.push_back(Polynomial_Term{e, c});
    } else {
      entries_[p].c += c;
    }
  }
  int order() const { return order_; }

  template <class Fn>
  void drain(Fn&& fn) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Polynomial_Term& a, const Polynomial_Term& b) { return graded_less(a.e, b.e); });
    for (auto& t : entries_)
      if (!t.c.is_zero()) fn(t.e, t.c);
  }

 private:
  struct Polynomial_Term {
    Exponent e;
    Coeff c;
  };
  int order_;
  std::vector<int> pos_;
  std::vector<Polynomial_Term> entries_;
};

}  // namespace detail

/// Finite sum of monomials with non-zero coefficients, kept in graded order.
///
/// `order()` is the truncation degree: products and substitutions never keep
/// a monomial above it. `truncated()` records that a monomial was actually
/// dropped somewhere along the way.
class Polynomial {
 public:
  struct Term {
    Exponent e;
    Coeff c;
  };

  Polynomial() = default;
  Polynomial(Chart chart, int order) : chart_(chart), order_(order) {}

  static Polynomial constant(Chart chart, int order, const Coeff& c) {
    Polynomial p(chart, order);
    p.add_term(Exponent{}, c);
    return p;
  }
  static Polynomial variable(Chart chart, int order, int slot, const Coeff& c = Coeff(1)) {
    Exponent e{};
    e[slot] = 1;
    Polynomial p(chart, order);
    p.add_term(e, c);
    return p;
  }
  static Polynomial monomial(Chart chart, int order, const Exponent& e, const Coeff& c) {
    Polynomial p(chart, order);
    p.add_term(e, c);
    return p;
  }

  Chart chart() const { return chart_; }
  int order() const { return order_; }
  bool truncated() const { return truncated_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c to the coefficient of e (no-op above the truncation order).
  void add_term(const Exponent& e, const Coeff& c) {
    if (c.is_zero()) return;
    if (degree(e) > order_) {
      truncated_ = true;
      return;
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& k) { return graded_less(t.e, k); });
    if (it != terms_.end() && it->e == e) {
      it->c += c;
      if (it->c.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, Term{e, c});
    }
  }

  Coeff coeff(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& k) { return graded_less(t.e, k); });
    if (it != terms_.end() && it->e == e) return it->c;
    return Coeff();
  }
  Coeff coeff(int a, int b, int c, int d) const { return coeff(make_exponent(a, b, c, d)); }

  int max_degree() const { return terms_.empty() ? -1 : degree(terms_.back().e); }
  int min_degree() const { return terms_.empty() ? -1 : degree(terms_.front().e); }

  Polynomial homogeneous(int d) const {
    Polynomial r(chart_, order_);
    for (const auto& t : terms_)
      if (degree(t.e) == d) r.terms_.push_back(t);
    return r;
  }
  /// Monomials of degree in [lo, hi].
  Polynomial degree_range(int lo, int hi) const {
    Polynomial r(chart_, order_);
    for (const auto& t : terms_)
      if (degree(t.e) >= lo && degree(t.e) <= hi) r.terms_.push_back(t);
    return r;
  }
  Polynomial with_order(int n) const {
    Polynomial r(chart_, n);
    r.truncated_ = truncated_;
    for (const auto& t : terms_) {
      if (degree(t.e) <= n) {
        r.terms_.push_back(t);
      } else {
        r.truncated_ = true;
      }
    }
    return r;
  }

  template <class Fn>
  Polynomial map_coeffs(Fn&& fn) const {
    Polynomial r(chart_, order_);
    r.truncated_ = truncated_;
    for (const auto& t : terms_) {
      Coeff c = fn(t.e, t.c);
      if (!c.is_zero()) r.terms_.push_back(Term{t.e, c});
    }
    return r;
  }

  Polynomial operator-() const {
    return map_coeffs([](const Exponent&, const Coeff& c) { return -c; });
  }
  friend Polynomial operator*(const Polynomial& p, const Coeff& c) {
    return p.map_coeffs([&](const Exponent&, const Coeff& x) { return x * c; });
  }
  friend Polynomial operator*(const Coeff& c, const Polynomial& p) { return p * c; }
  friend Polynomial operator*(const Polynomial& p, const Scalar& s) { return p * Coeff(s); }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) { return combine(p, q, false); }
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return combine(p, q, true); }
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }

  /// Product truncated at `order` (defaults to the smaller operand order).
  static Polynomial multiply(const Polynomial& p, const Polynomial& q, int order) {
    check_chart(p, q);
    Polynomial r(p.chart_, order);
    r.truncated_ = p.truncated_ || q.truncated_;
    if (p.empty() || q.empty()) return r;
    detail::Accumulator acc(order);
    for (const auto& a : p.terms_) {
      const int da = degree(a.e);
      if (da + q.min_degree() > order) {
        r.truncated_ = true;
        break;
      }
      for (const auto& b : q.terms_) {
        if (da + degree(b.e) > order) {
          r.truncated_ = true;
          break;
        }
        Exponent e{};
        for (int i = 0; i < 4; ++i) e[i] = std::uint8_t(a.e[i] + b.e[i]);
        acc.add(e, a.c * b.c);
      }
    }
    acc.drain([&](const Exponent& e, const Coeff& c) { r.terms_.push_back(Term{e, c}); });
    return r;
  }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    return multiply(p, q, std::min(p.order_, q.order_));
  }

  Polynomial pow(int n, int order) const {
    Polynomial r = constant(chart_, order, Coeff(one_like()));
    Polynomial base = with_order(order);
    while (n > 0) {
      if (n & 1) r = multiply(r, base, order);
      n >>= 1;
      if (n > 0) base = multiply(base, base, order);
    }
    return r;
  }

  /// Formal partial derivative with respect to a slot.
  Polynomial derivative(int slot) const {
    Polynomial r(chart_, order_);
    for (const auto& t : terms_) {
      if (t.e[slot] == 0) continue;
      Exponent e = t.e;
      int k = e[slot]--;
      r.terms_.push_back(Term{e, t.c.times(k)});
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) { return graded_less(a.e, b.e); });
    return r;
  }

  /// Complex conjugate of the function: swaps (k, l) in the complex chart.
  Polynomial conj() const {
    Polynomial r(chart_, order_);
    r.truncated_ = truncated_;
    for (const auto& t : terms_) {
      Exponent e = t.e;
      if (chart_ == Chart::complex) e = make_exponent(t.e[2], t.e[3], t.e[0], t.e[1]);
      r.add_term(e, t.c.conj());
    }
    return r;
  }

  /// Real-valued as a function: real coefficients (real chart) or the
  /// conjugation symmetry a_{kl} = conj a_{lk} (complex chart).
  bool is_real_valued() const {
    if (chart_ == Chart::real) {
      return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.c.is_real(); });
    }
    return *this == conj();
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    if (p.chart_ != q.chart_ || p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i) {
      if (p.terms_[i].e != q.terms_[i].e || p.terms_[i].c != q.terms_[i].c) return false;
    }
    return true;
  }
  friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

  /// Largest max(|re|, |im|) over all coefficients (zero for the empty sum).
  Scalar max_abs_coeff() const {
    Scalar m;
    for (const auto& t : terms_) {
      Scalar a = t.c.max_abs();
      if (m < a) m = a;
    }
    return m;
  }

  /// Field the coefficients live in: float if any coefficient is a float,
  /// Q(sqrt d) if any is quadratic, otherwise Q.
  std::pair<FieldKind, long> field() const {
    FieldKind k = FieldKind::rational;
    long d = 0;
    for (const auto& t : terms_) {
      for (const Scalar* s : {&t.c.re, &t.c.im}) {
        if (s->kind() == FieldKind::floating) return {FieldKind::floating, 0};
        if (s->kind() == FieldKind::quadratic) {
          k = FieldKind::quadratic;
          d = s->radicand();
        }
      }
    }
    return {k, d};
  }

  bool is_float() const { return field().first == FieldKind::floating; }

  /// Moves every coefficient into the float field when `as_float` is set.
  Polynomial in_field_of(bool as_float) const { return as_float ? to_float() : *this; }

  /// Float parts below 10^(6 - digits) times max(1, largest magnitude) are
  /// set to zero; exact polynomials are returned unchanged.
  Polynomial chopped() const {
    if (!is_float()) return *this;
    const double scale = std::max(1.0, max_abs_coeff().to_double());
    const double tol = std::pow(10.0, 6.0 - double(float_digits())) * scale;
    auto chop = [tol](const Scalar& x) { return std::abs(x.to_double()) <= tol ? Scalar() : x; };
    return map_coeffs([&](const Exponent&, const Coeff& c) { return Coeff(chop(c.re), chop(c.im)); });
  }

  Polynomial to_float() const {
    return map_coeffs([](const Exponent&, const Coeff& c) { return Coeff(c.re.to_float(), c.im.to_float()); });
  }

  /// Substitutes images[i] for slot i and truncates at `order`.
  Polynomial compose(const std::array<Polynomial, 4>& images, int order) const;

  void set_truncated(bool t) { truncated_ = t; }

 private:
  Scalar one_like() const {
    for (const auto& t : terms_) {
      if (t.c.re.kind() == FieldKind::floating) return t.c.re.lift(1);
      if (t.c.im.kind() == FieldKind::floating) return t.c.im.lift(1);
    }
    return Scalar(1);
  }

  static void check_chart(const Polynomial& p, const Polynomial& q) {
    if (p.chart_ != q.chart_) throw std::invalid_argument("polynomials live in different charts");
  }

  static Polynomial combine(const Polynomial& p, const Polynomial& q, bool subtract) {
    check_chart(p, q);
    Polynomial r(p.chart_, std::min(p.order_, q.order_));
    r.truncated_ = p.truncated_ || q.truncated_;
    auto i = p.terms_.begin(), j = q.terms_.begin();
    auto push = [&](const Exponent& e, const Coeff& c) {
      if (c.is_zero()) return;
      if (degree(e) > r.order_) {
        r.truncated_ = true;
        return;
      }
      r.terms_.push_back(Term{e, c});
    };
    while (i != p.terms_.end() || j != q.terms_.end()) {
      if (j == q.terms_.end() || (i != p.terms_.end() && graded_less(i->e, j->e))) {
        push(i->e, i->c);
        ++i;
      } else if (i == p.terms_.end() || graded_less(j->e, i->e)) {
        push(j->e, subtract ? -j->c : j->c);
        ++j;
      } else {
        push(i->e, subtract ? i->c - j->c : i->c + j->c);
        ++i;
        ++j;
      }
    }
    return r;
  }

  Chart chart_ = Chart::real;
  int order_ = 0;
  bool truncated_ = false;
  std::vector<Term> terms_;
};

namespace detail {

// Horner evaluation in slot `slot` of the sub-polynomial with the given
// prefix, recursing into the later slots.
inline Polynomial compose_rec(const std::vector<Polynomial::Term>& terms, int slot,
                              const std::array<Polynomial, 4>& images, const std::array<int, 4>& min_deg,
                              int order, Chart target) {
  Polynomial result(target, order);
  if (terms.empty() || order < 0) return result;
  if (slot == 4) {
    Coeff c;
    for (const auto& t : terms) c += t.c;
    result.add_term(Exponent{}, c);
    return result;
  }
  std::map<int, std::vector<Polynomial::Term>, std::greater<>> groups;
  for (const auto& t : terms) {
    auto s = t.e;
    int a = s[slot];
    s[slot] = 0;
    groups[a].push_back(Polynomial::Term{s, t.c});
  }
  const int top = groups.begin()->first;
  // Horner: result = (...(g_top * phi + g_{top-1}) * phi + ...) + g_0
  for (int a = top; a >= 0; --a) {
    if (a != top) result = Polynomial::multiply(result, images[slot], order - a * min_deg[slot]);
    auto it = groups.find(a);
    if (it != groups.end()) {
      int sub_order = order - a * min_deg[slot];
      result = result.with_order(std::max(sub_order, 0)) +
               compose_rec(it->second, slot + 1, images, min_deg, sub_order, target).with_order(std::max(sub_order, 0));
    }
    if (a == 0) break;
  }
  // Orders were lowered along the Horner chain; restore the target order.
  Polynomial out(target, order);
  for (const auto& t : result.terms()) out.add_term(t.e, t.c);
  out.set_truncated(result.truncated());
  return out;
}

}  // namespace detail

inline Polynomial Polynomial::compose(const std::array<Polynomial, 4>& images, int order) const {
  const Chart target = images[0].chart();
  std::array<int, 4> min_deg{};
  for (int i = 0; i < 4; ++i) {
    min_deg[i] = images[i].empty() ? 0 : std::max(images[i].min_degree(), 0);
  }
  Polynomial r = detail::compose_rec(terms_, 0, images, min_deg, order, target);
  if (truncated_) r.set_truncated(true);
  return r;
}

}  // namespace bgnf
