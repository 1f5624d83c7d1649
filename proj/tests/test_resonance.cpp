// Resonance module, its classification, the sigma monomial and the A_n
// decomposition of kernel forms.

#include <bgnf/models.hpp>

#include <catch_amalgamated.hpp>

using namespace bgnf;

namespace {

Frequencies freq(long a, long b) { return {Scalar(a), Scalar(b)}; }

Polynomial cmono(int order, int k1, int k2, int l1, int l2, const Coeff& c = Coeff(1)) {
  return Polynomial::monomial(Chart::complex, order, make_exponent(k1, k2, l1, l2), c);
}

}  // namespace

TEST_CASE("resonance pairs", "[resonance]") {
  CHECK(resonance_pair(freq(1, 1)) == ResonanceVector::pair(-1, 1));
  CHECK(resonance_pair(freq(2, 4)) == ResonanceVector::pair(-2, 1));
  CHECK(resonance_pair(freq(2, 3)) == ResonanceVector::pair(-3, 2));
  CHECK(resonance_pair(Frequencies{Scalar(3, 2), Scalar(9, 4)}) == ResonanceVector::pair(-3, 2));
  SECTION("irrational frequencies need a declaration, which is checked exactly") {
    const Frequencies a{Scalar(1), Scalar::sqrt_of(Rational(2))};
    CHECK_THROWS_AS(resonance_pair(a), precondition_error);
    CHECK(resonance_pair(a, ResonanceVector::nonresonant()).none);
    CHECK_THROWS_AS(resonance_pair(a, ResonanceVector::pair(-1, 1)), precondition_error);
    const Frequencies b{Scalar::sqrt_of(Rational(2)), Scalar::sqrt_of(Rational(8))};
    CHECK(resonance_pair(b, ResonanceVector::pair(-2, 1)) == ResonanceVector::pair(-2, 1));
    CHECK_THROWS_AS(resonance_pair(b, ResonanceVector::nonresonant()), precondition_error);
  }
  SECTION("a declared vector must annihilate alpha") {
    CHECK(resonance_pair(freq(1, 2), ResonanceVector::pair(-2, 1)) == ResonanceVector::pair(-2, 1));
    CHECK_THROWS_AS(resonance_pair(freq(1, 2), ResonanceVector::pair(-1, 1)), precondition_error);
  }
  SECTION("every (m1, m2) found satisfies m1 alpha1 + m2 alpha2 = 0 with gcd 1") {
    for (long a = 1; a <= 9; ++a)
      for (long b = a; b <= 9; ++b) {
        ResonanceVector r = resonance_pair(freq(a, b));
        REQUIRE_FALSE(r.none);
        CHECK(r.m1 * a + r.m2 * b == 0);
        CHECK(r.m1 < 0);
        CHECK(r.m2 > 0);
        CHECK(std::gcd(r.m1, r.m2) == 1);
      }
  }
}

TEST_CASE("classification", "[resonance]") {
  CHECK(classify(ResonanceVector::nonresonant()) == ResonanceClass::nonresonant);
  CHECK(classify(ResonanceVector::pair(-2, 1)) == ResonanceClass::nontrivial_multiple);
  CHECK(classify(ResonanceVector::pair(-3, 2)) == ResonanceClass::weakly_nonresonant);
  CHECK(classify(ResonanceVector::pair(-1, 1)) == ResonanceClass::equal_frequencies);
}

TEST_CASE("sigma monomial", "[resonance]") {
  CHECK(sigma_monomial(ResonanceVector::pair(-2, 1), 4) == cmono(4, 0, 1, 2, 0));
  CHECK(sigma_monomial(ResonanceVector::pair(-1, 1), 4) == cmono(4, 0, 1, 1, 0));
  Polynomial s = sigma_monomial(ResonanceVector::pair(-3, 2), 6);
  CHECK(s == cmono(6, 0, 2, 3, 0));
  CHECK(apply_D(s, freq(2, 3)).empty());
}

TEST_CASE("A_n decomposition", "[resonance]") {
  SECTION("H2 has only A_0") {
    Polynomial h2 = quadratic_part(freq(1, 1), Chart::complex, 4);
    AnDecomposition d = an_decompose(h2, ResonanceVector::pair(-1, 1));
    CHECK(d.block(1).empty());
    CHECK(d.block(2).empty());
    CHECK(d.block(0).size() == 2);
    CHECK(d.reassemble() == h2);
  }
  SECTION("Henon-Heiles quartic: A_2 coefficient of (conj(z1) z2)^2 is -7/48") {
    NormalFormResult nf = normalize(henon_heiles().h, 4, ResonanceVector::pair(-1, 1));
    AnDecomposition d = an_decompose(nf.hn, nf.res);
    REQUIRE(d.block(2).size() == 1);
    CHECK(d.block(2).at({0, 0}) == Coeff(Scalar(-7, 48)));
    CHECK(d.block(1).empty());
    CHECK(d.reassemble() == nf.hn);
  }
  SECTION("Hill printed sextic: A_2 carries -(15/8)(|z1|^2 + |z2|^2)") {
    // -(1/2)(|z1|^2+|z2|^2)(15/4)((conj z1 z2)^2 + (z1 conj z2)^2)
    const int n = 6;
    Polynomial p = cmono(n, 1, 2, 3, 0, Coeff(Scalar(-15, 8))) + cmono(n, 0, 3, 2, 1, Coeff(Scalar(-15, 8))) +
                   cmono(n, 3, 0, 1, 2, Coeff(Scalar(-15, 8))) + cmono(n, 2, 1, 0, 3, Coeff(Scalar(-15, 8)));
    AnDecomposition d = an_decompose(p, ResonanceVector::pair(-1, 1));
    REQUIRE(d.block(2).size() == 2);
    CHECK(d.block(2).at({1, 0}) == Coeff(Scalar(-15, 8)));
    CHECK(d.block(2).at({0, 1}) == Coeff(Scalar(-15, 8)));
    CHECK(d.reassemble() == p);
  }
  SECTION("monomials outside ker D are rejected") {
    CHECK_THROWS_AS(an_decompose(cmono(3, 2, 1, 0, 0), ResonanceVector::pair(-1, 1)), std::invalid_argument);
  }
}
