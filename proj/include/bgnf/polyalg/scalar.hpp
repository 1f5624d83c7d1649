#pragma once
// Exact and floating coefficient fields: Q, Q(sqrt d) and a
// multiprecision float fallback.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bgnf {

using Rational = mpq_class;
using BigFloat = boost::multiprecision::mpfr_float;

enum class FieldKind { rational, quadratic, floating };

struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Decimal digits used by the float field. Read once from BGNF_PRECISION.
inline unsigned float_digits() {
  static const unsigned digits = [] {
    unsigned d = 20;
    if (const char* env = std::getenv("BGNF_PRECISION")) {
      long v = std::strtol(env, nullptr, 10);
      if (v >= 10 && v <= 1000) d = static_cast<unsigned>(v);
    }
    BigFloat::default_precision(d);
    return d;
  }();
  return digits;
}

namespace detail {

inline bool is_perfect_square(const mpz_class& n, mpz_class& root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

// n = s^2 * d with d square-free (trial division bounded; a leftover cofactor
// is kept in d, which keeps arithmetic correct if not canonical).
inline void square_free_split(mpz_class n, mpz_class& s, mpz_class& d) {
  s = 1;
  d = 1;
  if (n < 0) throw field_error("square_free_split: negative radicand");
  for (unsigned long p = 2; p < 100000; ++p) {
    mpz_class pp = mpz_class(p) * p;
    if (pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p * p) != 0) {
      n /= pp;
      s *= p;
    }
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      n /= p;
      d *= p;
    }
  }
  mpz_class root;
  if (is_perfect_square(n, root)) {
    s *= root;
  } else {
    d *= n;
  }
}

}  // namespace detail

/// A number a + b*sqrt(d) with rational a, b and square-free d > 1, a plain
/// rational (b = 0), or a multiprecision float.
///
/// Values with b == 0 are always stored as rationals, so two quadratic values
/// only clash when both carry an irrational part in different fields. The
/// rational zero is treated as the additive identity of every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : a_(v) {}
  Scalar(long v) : a_(v) {}
  Scalar(const Rational& q) : a_(q) {}
  Scalar(long num, long den) : a_(num, den) { a_.canonicalize(); }

  static Scalar quadratic(const Rational& a, const Rational& b, long d) {
    Scalar s;
    s.a_ = a;
    if (b == 0 || d == 1) {
      if (d == 1) s.a_ += b;
      return s;
    }
    if (d <= 0) throw field_error("quadratic field needs d > 1");
    mpz_class sq, sf;
    detail::square_free_split(mpz_class(d), sq, sf);
    if (sf == 1) {
      s.a_ += b * Rational(sq);
      return s;
    }
    s.kind_ = FieldKind::quadratic;
    s.b_ = b * Rational(sq);
    s.d_ = sf.get_si();
    return s;
  }

  /// Exact square root of a non-negative rational, in Q or Q(sqrt d).
  static Scalar sqrt_of(const Rational& q) {
    if (q < 0) throw field_error("sqrt of negative rational");
    if (q == 0) return Scalar();
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn, rd;
    if (detail::is_perfect_square(num, rn) && detail::is_perfect_square(den, rd)) {
      return Scalar(Rational(rn, rd));
    }
    // sqrt(n/m) = sqrt(n*m)/m
    mpz_class sq, sf;
    detail::square_free_split(num * den, sq, sf);
    if (!sf.fits_slong_p()) throw field_error("radicand too large");
    Rational coef(sq, den);
    coef.canonicalize();
    return quadratic(0, coef, sf.get_si());
  }

  static Scalar from_float(const BigFloat& f) {
    float_digits();
    Scalar s;
    s.kind_ = FieldKind::floating;
    s.f_ = std::make_shared<BigFloat>(f);
    return s;
  }
  static Scalar from_double(double v) { return from_float(BigFloat(v)); }

  FieldKind kind() const { return kind_; }
  long radicand() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_exact() const { return kind_ != FieldKind::floating; }
  bool is_rational() const { return kind_ == FieldKind::rational; }

  BigFloat big() const {
    float_digits();
    switch (kind_) {
      case FieldKind::rational:
        return BigFloat(a_.get_num().get_str()) / BigFloat(a_.get_den().get_str());
      case FieldKind::quadratic: {
        BigFloat a = BigFloat(a_.get_num().get_str()) / BigFloat(a_.get_den().get_str());
        BigFloat b = BigFloat(b_.get_num().get_str()) / BigFloat(b_.get_den().get_str());
        return a + b * boost::multiprecision::sqrt(BigFloat(d_));
      }
      case FieldKind::floating:
        return *f_;
    }
    return BigFloat(0);
  }
  double to_double() const {
    if (kind_ == FieldKind::rational) return a_.get_d();
    if (kind_ == FieldKind::quadratic) return a_.get_d() + b_.get_d() * std::sqrt(double(d_));
    return static_cast<double>(*f_);
  }
  /// Explicit promotion into the float field.
  Scalar to_float() const { return kind_ == FieldKind::floating ? *this : from_float(big()); }

  bool is_zero() const {
    if (kind_ == FieldKind::floating) return *f_ == 0;
    return a_ == 0 && b_ == 0;
  }
  bool is_exact_zero() const { return kind_ == FieldKind::rational && a_ == 0; }

  int sign() const {
    switch (kind_) {
      case FieldKind::rational:
        return sgn(a_);
      case FieldKind::floating:
        return *f_ > 0 ? 1 : (*f_ < 0 ? -1 : 0);
      case FieldKind::quadratic: {
        int sa = sgn(a_), sb = sgn(b_);
        if (sa == 0) return sb;
        if (sb == 0 || sa == sb) return sa;
        Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
      }
    }
    return 0;
  }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  /// The same rational constant, expressed in this value's field.
  Scalar lift(const Rational& q) const {
    if (kind_ == FieldKind::floating) return Scalar(q).to_float();
    return Scalar(q);
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (kind_ == FieldKind::floating) {
      r.f_ = std::make_shared<BigFloat>(-*f_);
    } else {
      r.a_ = -a_;
      r.b_ = -b_;
    }
    return r;
  }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    switch (common(x, y)) {
      case FieldKind::rational:
        return Scalar(Rational(x.a_ + y.a_));
      case FieldKind::quadratic:
        return quadratic_raw(x.a_ + y.a_, x.b_ + y.b_, x.d_ ? x.d_ : y.d_);
      case FieldKind::floating:
        return from_float(*x.f_ + *y.f_);
    }
    return {};
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.is_exact_zero() || y.is_exact_zero()) {
      const Scalar& other = x.is_exact_zero() ? y : x;
      return other.kind_ == FieldKind::floating ? from_float(BigFloat(0)) : Scalar();
    }
    switch (common(x, y)) {
      case FieldKind::rational:
        return Scalar(Rational(x.a_ * y.a_));
      case FieldKind::quadratic: {
        long d = x.d_ ? x.d_ : y.d_;
        return quadratic_raw(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
      }
      case FieldKind::floating:
        return from_float(*x.f_ * *y.f_);
    }
    return {};
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    switch (kind_) {
      case FieldKind::rational:
        return Scalar(Rational(1 / a_));
      case FieldKind::quadratic: {
        Rational n = a_ * a_ - b_ * b_ * d_;
        return quadratic_raw(a_ / n, -b_ / n, d_);
      }
      case FieldKind::floating:
        return from_float(1 / *f_);
    }
    return {};
  }
  friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return (x - y).is_zero(); }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
  friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
  friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

  /// Integer power (negative exponents allowed for non-zero values).
  Scalar pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar r = lift(1), base = *this;
    while (n > 0) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  /// Exact square root when it exists in Q or in a quadratic extension of
  /// Q; otherwise a float root, or an error if `allow_float` is false.
  Scalar sqrt(bool allow_float = true) const {
    if (sign() < 0) throw std::domain_error("sqrt of negative scalar");
    if (kind_ == FieldKind::rational) return sqrt_of(a_);
    if (kind_ == FieldKind::quadratic) {
      // sqrt(a + b sqrt d) = x + y sqrt d with x^2 + d y^2 = a, 2xy = b.
      Rational disc = a_ * a_ - b_ * b_ * d_;
      Scalar sd = sqrt_of(disc);
      if (sd.is_rational()) {
        for (int sgn_choice : {1, -1}) {
          Rational x2 = (a_ + sgn_choice * sd.a()) / 2;
          if (x2 <= 0) continue;
          Scalar x = sqrt_of(x2);
          if (!x.is_rational()) continue;
          Rational y = b_ / (2 * x.a());
          Scalar cand = quadratic(x.a(), y, d_);
          if (cand.sign() >= 0 && cand * cand == *this) return cand;
        }
      }
      if (!allow_float) throw field_error("no exact square root in Q(sqrt d)");
      return from_float(boost::multiprecision::sqrt(big()));
    }
    return from_float(boost::multiprecision::sqrt(*f_));
  }

  std::string str() const {
    switch (kind_) {
      case FieldKind::rational:
        return a_.get_str();
      case FieldKind::quadratic: {
        std::string bs = b_.get_str();
        std::string sep = (bs[0] == '-') ? "" : "+";
        return "(" + a_.get_str() + sep + bs + "*s)";
      }
      case FieldKind::floating: {
        std::ostringstream os;
        os.precision(float_digits() + 2);
        os << std::scientific << *f_;
        return os.str();
      }
    }
    return {};
  }
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  static Scalar quadratic_raw(Rational a, Rational b, long d) {
    Scalar s;
    s.a_ = std::move(a);
    if (b != 0) {
      s.kind_ = FieldKind::quadratic;
      s.b_ = std::move(b);
      s.d_ = d;
    }
    return s;
  }

  static FieldKind common(const Scalar& x, const Scalar& y) {
    if (x.kind_ == FieldKind::floating || y.kind_ == FieldKind::floating) {
      if (x.kind_ != y.kind_) {
        throw field_error("mixed exact/float arithmetic needs explicit promotion");
      }
      return FieldKind::floating;
    }
    if (x.kind_ == FieldKind::quadratic && y.kind_ == FieldKind::quadratic && x.d_ != y.d_) {
      throw field_error("incompatible quadratic fields sqrt(" + std::to_string(x.d_) +
                        ") and sqrt(" + std::to_string(y.d_) + ")");
    }
    if (x.kind_ == FieldKind::quadratic || y.kind_ == FieldKind::quadratic) {
      return FieldKind::quadratic;
    }
    return FieldKind::rational;
  }

  FieldKind kind_ = FieldKind::rational;
  Rational a_;
  Rational b_;
  long d_ = 0;
  std::shared_ptr<const BigFloat> f_;
};

/// Complex coefficient re + i*im over a common field.
struct Coeff {
  Scalar re;
  Scalar im;

  Coeff() = default;
  Coeff(Scalar r) : re(std::move(r)) {}
  Coeff(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}
  Coeff(int v) : re(v) {}

  static Coeff i() { return Coeff(Scalar(), Scalar(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  Coeff conj() const { return Coeff(re, -im); }
  Coeff times_i() const { return Coeff(-im, re); }
  /// Multiplies by an integer, kept inside each component's field.
  Coeff times(long k) const { return Coeff(re * re.lift(k), im * im.lift(k)); }
  Coeff times(const Rational& q) const { return Coeff(re * re.lift(q), im * im.lift(q)); }
  /// |c|^2
  Scalar norm2() const { return re * re + im * im; }
  /// max(|re|, |im|)
  Scalar max_abs() const {
    Scalar r = re.abs(), m = im.abs();
    return r < m ? m : r;
  }

  Coeff operator-() const { return Coeff(-re, -im); }
  friend Coeff operator+(const Coeff& x, const Coeff& y) { return Coeff(x.re + y.re, x.im + y.im); }
  friend Coeff operator-(const Coeff& x, const Coeff& y) { return Coeff(x.re - y.re, x.im - y.im); }
  friend Coeff operator*(const Coeff& x, const Coeff& y) {
    if (x.im.is_exact_zero() && y.im.is_exact_zero()) return Coeff(x.re * y.re);
    return Coeff(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  friend Coeff operator*(const Coeff& x, const Scalar& s) { return Coeff(x.re * s, x.im * s); }
  friend Coeff operator/(const Coeff& x, const Scalar& s) {
    Scalar inv = s.inverse();
    return Coeff(x.re * inv, x.im * inv);
  }
  friend Coeff operator/(const Coeff& x, const Coeff& y) {
    Scalar n = y.norm2();
    return (x * y.conj()) / n;
  }
  Coeff& operator+=(const Coeff& o) {
    re += o.re;
    if (!o.im.is_exact_zero()) im += o.im;
    return *this;
  }
  Coeff& operator-=(const Coeff& o) {
    re -= o.re;
    if (!o.im.is_exact_zero()) im -= o.im;
    return *this;
  }
  friend bool operator==(const Coeff& x, const Coeff& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator!=(const Coeff& x, const Coeff& y) { return !(x == y); }

  std::string str() const {
    if (im.is_zero()) return re.str();
    std::string is = im.str();
    if (re.is_zero()) return is + "i";
    return re.str() + (is[0] == '-' ? "" : "+") + is + "i";
  }
};

}  // namespace bgnf
