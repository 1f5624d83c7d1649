#pragma once
// Side-by-side table of numerically measured and series-predicted rotation
// numbers on an energy grid, with a power-law fit of the differences.

#include "bgnf/numeric/rotation.hpp"

#include <future>
#include <iomanip>
#include <sstream>

namespace bgnf::numeric {

struct ReportRow {
  double E = 0;
  double rho1_num = 0, rho1_series = 0;
  double rho2_num = 0, rho2_series = 0;
  double product_num = 0, product_series = 0;
  double err_bar = 0;
  OrbitRecord orbit1, orbit2;
};

/// |difference| ~ C E^q fitted by least squares in log-log coordinates.
struct PowerFit {
  double q = std::numeric_limits<double>::quiet_NaN();
  double log_c = std::numeric_limits<double>::quiet_NaN();
  /// False when fewer than two rows have a difference above the floor.
  bool valid = false;
};

struct SeriesNumericReport {
  int series_order = 0;
  std::vector<ReportRow> rows;
  PowerFit fit_rho1, fit_rho2, fit_product;

  static constexpr const char* columns = "E\trho1_num\trho1_series\trho2_num\trho2_series\tproduct_num\tproduct_series\terr_bar";
  std::string tsv() const;
};

struct ReportOptions {
  ShootingOptions shooting;
  RotationOptions rotation;
  /// Differences below this are treated as round-off and left out of fits.
  double fit_floor = 1e-13;
  /// Energies processed concurrently (1 = sequential).
  int workers = 1;
};

inline PowerFit fit_power(const std::vector<double>& e, const std::vector<double>& diff, double floor = 1e-13) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::abs(diff[i]) > floor && e[i] > 0) {
      lx.push_back(std::log(e[i]));
      ly.push_back(std::log(std::abs(diff[i])));
    }
  }
  PowerFit f;
  if (lx.size() < 2) return f;
  const double n = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) return f;
  f.q = (n * sxy - sx * sy) / den;
  f.log_c = (sy - f.q * sx) / n;
  f.valid = true;
  return f;
}

/// h: the Hamiltonian in closed form; nf: its normal form, used for the
/// orbit seeds and the series. K < 0 selects the default series order.
inline SeriesNumericReport series_vs_numeric_report(const Evaluable& h, const NormalFormResult& nf,
                                                    const std::vector<double>& energies, int K = -1,
                                                    const ReportOptions& opt = {}) {
  if (K < 0) K = bgnf::detail::default_order(nf);
  const RotationSeries rs = rotation_series(nf, K);
  const SeriesE prod = twist_product(rs, K);
  if (!rs.axis1.exists || !rs.axis2.exists) throw numeric_error("report: the normal form does not give both axis orbits");

  auto row_at = [&](double E) {
    ReportRow row;
    row.E = E;
    auto measure = [&](int axis, OrbitRecord& orb) {
      orb = continue_orbit(h, E, [&](double e) { return normal_form_seed(nf, axis, e); }, opt.shooting);
      return rotation_number_numeric(h, orb, opt.rotation);
    };
    const RotationEstimate r1 = measure(1, row.orbit1);
    const RotationEstimate r2 = measure(2, row.orbit2);
    row.rho1_num = r1.rho;
    row.rho2_num = r2.rho;
    row.rho1_series = rs.axis1.rho.evaluate(E);
    row.rho2_series = rs.axis2.rho.evaluate(E);
    row.product_num = (r1.rho - 1) * (r2.rho - 1);
    row.product_series = prod.evaluate(E);
    row.err_bar = std::max(r1.err_bar, r2.err_bar);
    return row;
  };

  SeriesNumericReport rep;
  rep.series_order = K;
  if (opt.workers > 1) {
    std::vector<std::future<ReportRow>> jobs;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      if (jobs.size() >= std::size_t(opt.workers)) {
        rep.rows.push_back(jobs.front().get());
        jobs.erase(jobs.begin());
      }
      jobs.push_back(std::async(std::launch::async, row_at, energies[i]));
    }
    for (auto& j : jobs) rep.rows.push_back(j.get());
  } else {
    for (double E : energies) rep.rows.push_back(row_at(E));
  }

  std::vector<double> e, d1, d2, dp;
  for (const auto& r : rep.rows) {
    e.push_back(r.E);
    d1.push_back(r.rho1_num - r.rho1_series);
    d2.push_back(r.rho2_num - r.rho2_series);
    dp.push_back(r.product_num - r.product_series);
  }
  rep.fit_rho1 = fit_power(e, d1, opt.fit_floor);
  rep.fit_rho2 = fit_power(e, d2, opt.fit_floor);
  rep.fit_product = fit_power(e, dp, opt.fit_floor);
  return rep;
}

inline std::string SeriesNumericReport::tsv() const {
  std::ostringstream os;
  os << columns << '\n' << std::setprecision(15);
  for (const auto& r : rows) {
    os << r.E << '\t' << r.rho1_num << '\t' << r.rho1_series << '\t' << r.rho2_num << '\t' << r.rho2_series << '\t'
       << r.product_num << '\t' << r.product_series << '\t' << r.err_bar << '\n';
  }
  auto q = [](const PowerFit& f) { return f.valid ? std::to_string(f.q) : std::string("nan"); };
  os << "# fit |num - series| ~ C E^q: q_rho1=" << q(fit_rho1) << " q_rho2=" << q(fit_rho2)
     << " q_product=" << q(fit_product) << '\n';
  return os.str();
}

}  // namespace bgnf::numeric
