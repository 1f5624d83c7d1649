#pragma once
// Structured (JSON) and plain-text renderings of normal forms and Hopf
// analyses. Key order is fixed so that identical inputs give identical
// bytes.

#include "bgnf/hopf/analysis.hpp"
#include "bgnf/polyalg/text_io.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace bgnf {

inline constexpr const char* tool_version = "1.0.0";

using ordered_json = nlohmann::ordered_json;

inline ordered_json series_json(const SeriesE& s) {
  ordered_json j;
  ordered_json c = ordered_json::array();
  for (int k = 0; k < s.error_order(); ++k) c.push_back(s[k].str());
  j["coefficients"] = c;
  j["error_order"] = s.error_order();
  j["text"] = s.str();
  return j;
}

inline std::string index_key(const Exponent& e) {
  return "a" + std::to_string(e[0]) + std::to_string(e[1]) + std::to_string(e[2]) + std::to_string(e[3]);
}

inline ordered_json coefficients_json(const Polynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : p.terms()) {
    ordered_json c;
    c["key"] = index_key(t.e);
    c["exponent"] = {t.e[0], t.e[1], t.e[2], t.e[3]};
    c["re"] = t.c.re.str();
    c["im"] = t.c.im.str();
    arr.push_back(c);
  }
  return arr;
}

inline ordered_json resonance_json(const ResonanceVector& r) {
  ordered_json j;
  if (r.none) {
    j["m"] = nullptr;
    j["class"] = resonance_class_name(ResonanceClass::nonresonant);
  } else {
    j["m"] = {r.m1, r.m2};
    j["class"] = resonance_class_name(classify(r));
  }
  return j;
}

inline ordered_json normal_form_json(const NormalFormResult& nf, const VerifyReport& vr) {
  ordered_json j;
  j["N"] = nf.order;
  j["alpha"] = {nf.alpha.a1.str(), nf.alpha.a2.str()};
  j["resonance"] = resonance_json(nf.res);
  j["gauge"] = nf.gauge;
  j["psi_applied"] = nf.psi_applied;
  j["coefficients"] = coefficients_json(nf.hn);
  ordered_json v;
  v["in_kernel"] = vr.in_kernel;
  v["conjugacy"] = vr.conjugacy;
  v["symplectic"] = vr.symplectic;
  v["symplectic_defect"] = vr.symplectic_defect.str();
  if (!vr.failure.empty()) v["failure"] = vr.failure;
  j["verify"] = v;
  j["hn_text"] = to_text(nf.hn);
  return j;
}

inline std::string normal_form_text(const NormalFormResult& nf, const VerifyReport& vr) {
  std::ostringstream os;
  os << "normal form of order " << nf.order << " (gauge " << nf.gauge << (nf.psi_applied ? ", composed with Psi" : "")
     << ")\n";
  os << "alpha = (" << nf.alpha.a1.str() << ", " << nf.alpha.a2.str() << ")\n";
  os << "resonance: " << (nf.res.none ? std::string("none") : std::to_string(nf.res.m1) + "," + std::to_string(nf.res.m2))
     << "\n";
  os << "coefficients a_{k1 k2 l1 l2} of z1^k1 z2^k2 conj(z1)^l1 conj(z2)^l2:\n";
  for (const auto& t : nf.hn.terms()) os << "  " << index_key(t.e) << " = " << t.c.str() << "\n";
  os << "verify: in_kernel=" << (vr.in_kernel ? "yes" : "no") << " conjugacy=" << (vr.conjugacy ? "yes" : "no")
     << " symplectic=" << (vr.symplectic ? "yes" : "no") << "\n";
  if (!vr.failure.empty()) os << "verify failure: " << vr.failure << "\n";
  return os.str();
}

inline ordered_json axis_rotation_json(const AxisRotation& r) {
  ordered_json j;
  j["exists"] = r.exists;
  if (!r.exists) return j;
  j["branch"] = branch_name(r.branch);
  j["coupled"] = r.coupled;
  j["half_power"] = r.half_power;
  j["rho"] = series_json(r.rho);
  if (r.coupled) {
    j["p"] = r.p.str();
    j["C_leading"] = r.c_lead.str();
    j["Delta_leading"] = r.delta_lead.str();
  }
  return j;
}

inline ordered_json analysis_json(const HopfAnalysis& a) {
  ordered_json j;
  j["N"] = a.order;
  j["K"] = a.K;
  j["gauge"] = a.gauge;
  j["psi_applied"] = a.psi_applied;
  j["nu"] = a.nu ? ordered_json(*a.nu) : ordered_json(nullptr);
  if (a.omega) {
    j["Omega"] = {{"Omega_nu_1", a.omega->omega1.str()}, {"Omega_nu_2", a.omega->omega2.str()}, {"Omega_nu", a.omega->omega.str()}};
  } else {
    j["Omega"] = nullptr;
  }
  j["beta"] = a.beta ? ordered_json{a.beta->first.str(), a.beta->second.str()} : ordered_json(nullptr);
  ordered_json ex;
  ex["gamma1"] = a.existence.gamma1;
  ex["gamma2"] = a.existence.gamma2;
  ex["obstructions"] = a.existence.obstructions;
  j["orbits"] = ex;
  ordered_json amp;
  amp["c1_squared"] = a.amplitude1 ? series_json(*a.amplitude1) : ordered_json(nullptr);
  amp["c2_squared"] = a.amplitude2 ? series_json(*a.amplitude2) : ordered_json(nullptr);
  j["amplitudes"] = amp;
  ordered_json fr;
  auto opt = [](const std::optional<SeriesE>& s) { return s ? series_json(*s) : ordered_json(nullptr); };
  fr["omega1"] = opt(a.frequencies.omega1);
  fr["omega2"] = opt(a.frequencies.omega2);
  fr["omega_hat1"] = opt(a.frequencies.omega_hat1);
  fr["omega_hat2"] = opt(a.frequencies.omega_hat2);
  j["frequencies"] = fr;
  ordered_json se;
  se["rho1"] = axis_rotation_json(a.rotation.axis1);
  se["rho2"] = axis_rotation_json(a.rotation.axis2);
  se["product"] = opt(a.twist);
  j["series"] = se;
  ordered_json v;
  v["label"] = a.verdict.label();
  v["theorem"] = a.verdict.theorem;
  v["clause"] = a.verdict.clause;
  v["inconclusive"] = a.verdict.inconclusive;
  if (!a.verdict.inconclusive) {
    v["predicted_leading"] = a.verdict.coefficient.str() + "*E^" + std::to_string(a.verdict.power);
  }
  v["hypothesis_trace"] = a.verdict.trace;
  j["verdict"] = v;
  return j;
}

inline std::string analysis_text(const HopfAnalysis& a) {
  std::ostringstream os;
  os << "order N = " << a.order << ", series order K = " << a.K << ", gauge " << a.gauge
     << (a.psi_applied ? ", composed with Psi" : "") << "\n";
  os << "nu = " << (a.nu ? std::to_string(*a.nu) : std::string("absent")) << "\n";
  if (a.omega) {
    os << "Omega_{nu,1} = " << a.omega->omega1.str() << ", Omega_{nu,2} = " << a.omega->omega2.str()
       << ", Omega_nu = " << a.omega->omega.str() << "\n";
  }
  if (a.beta) os << "beta1 = " << a.beta->first.str() << ", beta2 = " << a.beta->second.str() << "\n";
  if (a.amplitude1) os << "c1^2 = " << a.amplitude1->str() << "\n";
  if (a.amplitude2) os << "c2^2 = " << a.amplitude2->str() << "\n";
  if (a.frequencies.omega1) os << "omega1 = " << a.frequencies.omega1->str() << "\n";
  if (a.frequencies.omega2) os << "omega2 = " << a.frequencies.omega2->str() << "\n";
  for (const AxisRotation* r : {&a.rotation.axis1, &a.rotation.axis2}) {
    if (!r->exists) {
      os << "rho" << r->axis << ": no axis orbit\n";
      continue;
    }
    os << "rho" << r->axis << " [" << branch_name(r->branch) << "] = " << r->rho.str() << "\n";
  }
  if (a.twist) os << "(rho1-1)(rho2-1) = " << a.twist->str() << "\n";
  os << "verdict: " << a.verdict.label();
  if (!a.verdict.inconclusive) os << ", predicted 1 + " << a.verdict.coefficient.str() << "*E^" << a.verdict.power;
  os << "\n";
  for (const auto& t : a.verdict.trace) os << "  " << t << "\n";
  return os.str();
}

}  // namespace bgnf
