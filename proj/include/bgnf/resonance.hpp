#pragma once
// Resonance detection, classification and the A_n decomposition of a
// normal form.

#include "bgnf/polyalg/operations.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace bgnf {

struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ResonanceClass { nonresonant, weakly_nonresonant, equal_frequencies, nontrivial_multiple };

inline const char* resonance_class_name(ResonanceClass c) {
  switch (c) {
    case ResonanceClass::nonresonant:
      return "NonResonant";
    case ResonanceClass::weakly_nonresonant:
      return "WeaklyNonResonant";
    case ResonanceClass::equal_frequencies:
      return "EqualFrequencies";
    case ResonanceClass::nontrivial_multiple:
      return "NontrivialMultiple";
  }
  return "?";
}

/// Resonance vector of alpha (0 < alpha1 <= alpha2).
///
/// Rational frequencies are resolved exactly. Frequencies with an
/// irrational or float entry need `declared`; it is validated exactly in
/// Q(sqrt d) and up to a relative 1e-12 for floats.
inline ResonanceVector resonance_pair(const Frequencies& alpha,
                                      const std::optional<ResonanceVector>& declared = std::nullopt) {
  if (alpha.a1.sign() <= 0 || alpha.a2.sign() <= 0) throw precondition_error("frequencies must be positive");
  if (alpha.a2 < alpha.a1) throw precondition_error("need alpha1 <= alpha2");
  const bool rational = alpha.a1.is_rational() && alpha.a2.is_rational();
  if (rational) {
    Rational r = alpha.a2.a() / alpha.a1.a();
    ResonanceVector m = ResonanceVector::pair(-int(r.get_num().get_si()), int(r.get_den().get_si()));
    if (declared && !(*declared == m)) {
      throw precondition_error("declared resonance does not match alpha (expected m = (" + std::to_string(m.m1) +
                               ", " + std::to_string(m.m2) + "))");
    }
    return m;
  }
  if (!declared) throw precondition_error("irrational or float frequencies need a declared resonance");
  const ResonanceVector& m = *declared;
  if (alpha.a1.is_exact() && alpha.a2.is_exact()) {
    Scalar ratio = alpha.a2 / alpha.a1;
    if (m.none) {
      if (ratio.is_rational()) throw precondition_error("declared non-resonant but alpha2/alpha1 is rational");
      return m;
    }
    if (m.m1 >= 0 || m.m2 <= 0 || std::gcd(m.m1, m.m2) != 1) throw precondition_error("bad resonance vector");
    if (!(alpha.a1 * Scalar(m.m1) + alpha.a2 * Scalar(m.m2)).is_zero()) {
      throw precondition_error("declared resonance violates alpha . m = 0");
    }
    return m;
  }
  if (m.none) return m;
  if (m.m1 >= 0 || m.m2 <= 0 || std::gcd(m.m1, m.m2) != 1) throw precondition_error("bad resonance vector");
  double a1 = alpha.a1.to_double(), a2 = alpha.a2.to_double();
  if (std::abs(a1 * m.m1 + a2 * m.m2) > 1e-12 * std::max(a1, a2) * std::abs(m.m1)) {
    throw precondition_error("declared resonance violates alpha . m = 0");
  }
  return m;
}

inline ResonanceClass classify(const ResonanceVector& m) {
  if (m.none) return ResonanceClass::nonresonant;
  if (m.m2 >= 2) return ResonanceClass::weakly_nonresonant;
  if (m.m1 == -1) return ResonanceClass::equal_frequencies;
  return ResonanceClass::nontrivial_multiple;
}

/// sigma = z2^{m2} conj(z1)^{|m1|}.
inline Polynomial sigma_monomial(const ResonanceVector& m, int order) {
  if (m.none) throw std::invalid_argument("sigma needs a resonance vector");
  return Polynomial::monomial(Chart::complex, order, make_exponent(0, m.m2, -m.m1, 0), Coeff(1));
}

/// H_N = A_0 + sum_{n>=1} (sigma^n A_n + conj), each A_n a polynomial in
/// (|z1|^2, |z2|^2) stored as (i, j) -> coefficient of |z1|^{2i} |z2|^{2j}.
struct AnDecomposition {
  ResonanceVector res;
  int order = 0;
  std::map<int, std::map<std::pair<int, int>, Coeff>> blocks;

  const std::map<std::pair<int, int>, Coeff>& block(int n) const {
    static const std::map<std::pair<int, int>, Coeff> empty;
    auto it = blocks.find(n);
    return it == blocks.end() ? empty : it->second;
  }

  Polynomial reassemble() const {
    Polynomial p(Chart::complex, order);
    const int a = res.none ? 0 : -res.m1, b = res.none ? 0 : res.m2;
    for (const auto& [n, blk] : blocks) {
      for (const auto& [ij, c] : blk) {
        auto [i, j] = ij;
        // sigma^n |z1|^{2i} |z2|^{2j} = z1^i z2^{j+n b} conj(z1)^{i+n a} conj(z2)^j
        p.add_term(make_exponent(i, j + n * b, i + n * a, j), c);
        if (n > 0) p.add_term(make_exponent(i + n * a, j, i, j + n * b), c.conj());
      }
    }
    return p;
  }
};

/// Splits a normal form into its A_n blocks. Fails if a monomial lies
/// outside ker D.
inline AnDecomposition an_decompose(const Polynomial& hn, const ResonanceVector& res) {
  Polynomial p = to_complex(hn);
  AnDecomposition out;
  out.res = res;
  out.order = p.order();
  for (const auto& t : p.terms()) {
    if (!in_kernel(t.e, res)) throw std::invalid_argument("an_decompose: monomial " + exponent_str(t.e) + " is not in ker D");
    const int k1 = t.e[0], k2 = t.e[1], l1 = t.e[2], l2 = t.e[3];
    if (res.none || (k1 == l1 && k2 == l2)) {
      out.blocks[0][{k1, k2}] = t.c;
      continue;
    }
    const int n = (k2 - l2) / res.m2;
    if (n > 0) {
      out.blocks[n][{k1, l2}] = t.c;
    }
    // n < 0: conjugate partner of a block already recorded.
  }
  return out;
}

}  // namespace bgnf
