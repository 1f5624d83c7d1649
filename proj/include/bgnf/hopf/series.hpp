#pragma once
// Truncated power series in the energy E with an explicit error order.

#include "bgnf/polyalg/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgnf {

/// Zero test that tolerates round-off in the float field.
inline bool negligible(const Scalar& s) {
  if (s.is_exact()) return s.is_zero();
  const double tol = std::pow(10.0, -double(float_digits()) + 6);
  return std::abs(s.to_double()) < tol;
}

/// sum_{k < err} c_k E^k + O(E^err).
class SeriesE {
 public:
  SeriesE() = default;
  SeriesE(std::vector<Scalar> coeffs, int err) : c_(std::move(coeffs)), err_(err) { normalize(); }

  static SeriesE constant(const Scalar& v, int err) { return SeriesE({v}, err); }
  /// E itself.
  static SeriesE energy(int err, const Scalar& one = Scalar(1)) { return SeriesE({Scalar(), one}, err); }
  /// O(E^err) with no known terms.
  static SeriesE unknown(int err) { return SeriesE({}, err); }

  int error_order() const { return err_; }
  int size() const { return int(c_.size()); }
  Scalar operator[](int k) const { return k < int(c_.size()) ? c_[std::size_t(k)] : Scalar(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  /// Index of the first non-negligible coefficient, or the error order.
  int valuation() const {
    for (int k = 0; k < int(c_.size()); ++k)
      if (!negligible(c_[std::size_t(k)])) return k;
    return err_;
  }
  bool known_nonzero() const { return valuation() < err_; }
  Scalar leading() const { return (*this)[valuation()]; }

  SeriesE truncated(int err) const {
    SeriesE r = *this;
    r.err_ = std::min(err_, err);
    r.normalize();
    return r;
  }

  friend SeriesE operator+(const SeriesE& a, const SeriesE& b) {
    const int err = std::min(a.err_, b.err_);
    std::vector<Scalar> c(static_cast<std::size_t>(std::max(err, 0)));
    for (int k = 0; k < err; ++k) c[std::size_t(k)] = a[k] + b[k];
    return SeriesE(std::move(c), err);
  }
  SeriesE operator-() const {
    SeriesE r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend SeriesE operator-(const SeriesE& a, const SeriesE& b) { return a + (-b); }

  friend SeriesE operator*(const SeriesE& a, const SeriesE& b) {
    const int va = a.valuation(), vb = b.valuation();
    const int err = std::min(a.err_ + vb, b.err_ + va);
    std::vector<Scalar> c(static_cast<std::size_t>(std::max(err, 0)));
    for (int i = 0; i < a.size(); ++i) {
      for (int j = 0; j < b.size() && i + j < err; ++j) c[std::size_t(i + j)] += a.c_[std::size_t(i)] * b.c_[std::size_t(j)];
    }
    return SeriesE(std::move(c), err);
  }
  friend SeriesE operator*(const SeriesE& a, const Scalar& s) {
    SeriesE r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  friend SeriesE operator*(const Scalar& s, const SeriesE& a) { return a * s; }

  /// Multiplies by E^k.
  SeriesE shift_up(int k) const {
    std::vector<Scalar> c(static_cast<std::size_t>(k));
    c.insert(c.end(), c_.begin(), c_.end());
    return SeriesE(std::move(c), err_ + k);
  }
  /// Divides by E^k; the first k known coefficients must vanish.
  SeriesE shift_down(int k) const {
    for (int i = 0; i < std::min(k, size()); ++i) {
      if (!negligible(c_[std::size_t(i)])) throw std::domain_error("shift_down: non-zero low coefficient");
    }
    std::vector<Scalar> c;
    for (int i = k; i < size(); ++i) c.push_back(c_[std::size_t(i)]);
    return SeriesE(std::move(c), err_ - k);
  }

  /// 1 / this; needs a non-zero constant term.
  SeriesE inverse() const {
    if (c_.empty() || negligible(c_[0])) throw std::domain_error("SeriesE::inverse: zero constant term");
    std::vector<Scalar> r(static_cast<std::size_t>(err_));
    const Scalar inv0 = c_[0].inverse();
    r[0] = inv0;
    for (int n = 1; n < err_; ++n) {
      Scalar s;
      for (int k = 1; k <= n && k < size(); ++k) s += c_[std::size_t(k)] * r[std::size_t(n - k)];
      r[std::size_t(n)] = -s * inv0;
    }
    return SeriesE(std::move(r), err_);
  }
  friend SeriesE operator/(const SeriesE& a, const SeriesE& b) {
    const int vb = b.valuation();
    if (vb >= b.err_) throw std::domain_error("SeriesE division by O(E^k)");
    if (vb == 0) return a * b.inverse();
    return a.shift_down(vb) * b.shift_down(vb).inverse();
  }

  /// this(g) where this is read as a series in a variable x and g(E) has no
  /// constant term.
  SeriesE compose(const SeriesE& g) const {
    const int vg = g.valuation();
    if (vg == 0) throw std::domain_error("compose: inner series has a constant term");
    const int cap = err_ >= (1 << 20) / std::max(vg, 1) ? (1 << 20) : err_ * vg;
    SeriesE acc({}, cap);
    const Scalar one = !unit_like(g).is_exact() ? unit_like(g) : unit_like(*this);
    SeriesE power = SeriesE::constant(one, std::max(cap, 1));
    for (int k = 0; k < size(); ++k) {
      if (!c_[std::size_t(k)].is_zero()) acc = acc + power * c_[std::size_t(k)];
      power = power * g;
    }
    return acc;
  }

  /// Inverse function: x(E) with this(x(E)) = E, given this(0) = 0 and a
  /// non-zero linear coefficient.
  SeriesE revert() const {
    if (size() < 2 || !negligible((*this)[0]) || negligible((*this)[1])) {
      throw std::domain_error("revert: need f(0) = 0, f'(0) != 0");
    }
    const int err = err_;
    const Scalar inv1 = c_[1].inverse();
    // x = (E - sum_{k>=2} f_k x^k) / f1, iterated err times
    std::vector<Scalar> hc(c_.begin(), c_.end());
    hc[1] = Scalar();
    hc[0] = Scalar();
    SeriesE higher(hc, err);
    SeriesE x = SeriesE({Scalar(), inv1}, err);
    for (int it = 0; it < err; ++it) {
      SeriesE hx = higher.compose(x).truncated(err);
      SeriesE next = (SeriesE::energy(err, inv1.lift(1)) - hx) * inv1;
      x = SeriesE(next.c_, err);
    }
    return x;
  }

  /// sqrt(1 + u) for u with zero constant term.
  static SeriesE sqrt_one_plus(const SeriesE& u) {
    const int err = std::max(u.err_, 1);
    std::vector<Scalar> b;
    Rational binom = 1;  // binom(1/2, k)
    Scalar one = unit_like(u);
    for (int k = 0; k < err; ++k) {
      b.push_back(one.lift(binom));
      binom *= Rational(1 - 2 * k, 2 * (k + 1));
    }
    return SeriesE(b, err).compose(u);
  }

  std::string str() const {
    std::string s;
    for (int k = 0; k < size(); ++k) {
      if (c_[std::size_t(k)].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += c_[std::size_t(k)].str();
      if (k == 1) s += "*E";
      if (k > 1) s += "*E^" + std::to_string(k);
    }
    if (s.empty()) s = "0";
    return s + " + O(E^" + std::to_string(err_) + ")";
  }

  /// Float evaluation of the known part.
  double evaluate(double e) const {
    double s = 0;
    for (int k = size() - 1; k >= 0; --k) s = s * e + c_[std::size_t(k)].to_double();
    return s;
  }

 private:
  static Scalar unit_like(const SeriesE& s) {
    for (const auto& x : s.c_)
      if (!x.is_exact()) return x.lift(1);
    return Scalar(1);
  }

  void normalize() {
    if (err_ < 0) err_ = 0;
    if (int(c_.size()) > err_) c_.resize(std::size_t(err_));
  }

  std::vector<Scalar> c_;
  int err_ = 0;
};

}  // namespace bgnf
