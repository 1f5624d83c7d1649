// JSON and text reports: determinism, key order and round trips.

#include <bgnf/hopf/report.hpp>
#include <bgnf/models.hpp>
#include <bgnf/numeric/report.hpp>
#include <bgnf/polyalg/text_io.hpp>

#include <catch_amalgamated.hpp>

using namespace bgnf;

namespace {

std::vector<std::string> keys(const ordered_json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

std::string normal_form_dump(const ModelBundle& m, int n) {
  NormalFormResult nf = normal_form_for(m, n);
  return normal_form_json(nf, verify(nf, m.h.with_order(n))).dump(2);
}

}  // namespace

TEST_CASE("normal form JSON", "[report][json]") {
  const ModelBundle m = henon_heiles(4);
  SECTION("two independent runs give identical bytes") {
    CHECK(normal_form_dump(m, 4) == normal_form_dump(henon_heiles(4), 4));
    CHECK(normal_form_dump(hill_regularized(6), 6) == normal_form_dump(hill_regularized(6), 6));
  }
  NormalFormResult nf = normal_form_for(m, 4, Route::none);
  ordered_json j = normal_form_json(nf, verify(nf, m.h));
  SECTION("key order is fixed") {
    CHECK(keys(j) == std::vector<std::string>{"N", "alpha", "resonance", "gauge", "psi_applied", "coefficients",
                                              "verify", "hn_text"});
    CHECK(keys(j["verify"]) == std::vector<std::string>{"in_kernel", "conjugacy", "symplectic", "symplectic_defect"});
  }
  SECTION("coefficients are exact strings in monomial order") {
    CHECK(j["gauge"] == "imD");
    bool found = false;
    for (const auto& c : j["coefficients"]) {
      if (c["key"] == "a2020") {
        CHECK(c["re"] == "-5/48");
        CHECK(c["im"] == "0");
        found = true;
      }
    }
    CHECK(found);
    CHECK(j["coefficients"].size() == nf.hn.size());
  }
  SECTION("hn_text reads back to the same polynomial") { CHECK(from_text(j["hn_text"].get<std::string>()) == nf.hn); }
  SECTION("a failed check carries its reason") {
    NormalFormResult bad = nf;
    bad.hn += Polynomial::monomial(Chart::complex, 4, make_exponent(2, 0, 2, 0), Coeff(Scalar(1, 1000)));
    ordered_json jb = normal_form_json(bad, verify(bad, m.h));
    CHECK(jb["verify"]["conjugacy"] == false);
    CHECK(jb["verify"]["failure"].get<std::string>().find("1/1000") != std::string::npos);
  }
}

TEST_CASE("analysis JSON", "[report][json]") {
  const ModelBundle m = hill_regularized(6);
  const HopfAnalysis a = analyze(normal_form_for(m, 6), symmetry_info(m));
  ordered_json j = analysis_json(a);
  CHECK(keys(j) == std::vector<std::string>{"N", "K", "gauge", "psi_applied", "nu", "Omega", "beta", "orbits",
                                            "amplitudes", "frequencies", "series", "verdict"});
  CHECK(j["gauge"] == "imD");
  CHECK(j["beta"][0] == "13/4");
  CHECK(j["series"]["rho1"]["rho"]["text"] == "2 + 4*E + 26*E^2 + O(E^3)");
  CHECK(j["series"]["rho1"]["rho"]["coefficients"] == ordered_json{"2", "4", "26"});
  CHECK(j["series"]["product"]["error_order"] == 3);
  CHECK(j["verdict"]["label"] == "Theorem 1.3(ii)");
  CHECK(j["verdict"]["predicted_leading"] == "36*E^2");
  CHECK(analysis_json(analyze(normal_form_for(m, 6), symmetry_info(m))).dump() == j.dump());

  SECTION("absent quantities are null") {
    const ModelBundle q = quadratic_model(Scalar(1), Scalar(2));
    ordered_json jq = analysis_json(analyze(normal_form_for(q, 4), symmetry_info(q)));
    CHECK(jq["nu"].is_null());
    CHECK(jq["Omega"].is_null());
    CHECK(jq["verdict"]["inconclusive"] == true);
    CHECK_FALSE(jq["verdict"].contains("predicted_leading"));
  }
}

TEST_CASE("text reports", "[report][text]") {
  const ModelBundle m = henon_heiles(4);
  const NormalFormResult nf = normal_form_for(m, 4, Route::none);
  const std::string t = normal_form_text(nf, verify(nf, m.h));
  CHECK(t.find("a2020 = -5/48") != std::string::npos);
  CHECK(t.find("verify: in_kernel=yes conjugacy=yes symplectic=yes") != std::string::npos);
  const std::string at = analysis_text(analyze(normal_form_for(m, 4), symmetry_info(m)));
  CHECK(at.find("verdict: Theorem 1.3(i)") != std::string::npos);
  CHECK(at.find("gauge imD, composed with Psi") != std::string::npos);
}

TEST_CASE("numeric report table", "[report][tsv]") {
  numeric::SeriesNumericReport rep;
  rep.series_order = 2;
  numeric::ReportRow row;
  row.E = 1e-3;
  row.rho1_num = 2.004;
  rep.rows.push_back(row);
  const std::string tsv = rep.tsv();
  CHECK(tsv.find(numeric::SeriesNumericReport::columns) != std::string::npos);
  CHECK(tsv.find("q_rho1=nan") != std::string::npos);
}
