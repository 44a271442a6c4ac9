#include "sfwg/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sfwg {

std::string format_mantissa(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0.%0*dE+00", digits, 0);
    return v == 0.0 ? std::string(buf) : std::string("nan");
  }
  bool neg = v < 0.0;
  double a = std::abs(v);
  int exp = static_cast<int>(std::floor(std::log10(a))) + 1;
  double mant = a / std::pow(10.0, exp);
  // rounding may push the mantissa to 1.0
  double scale = std::pow(10.0, digits);
  double rounded = std::round(mant * scale);
  if (rounded >= scale) {
    rounded /= 10.0;
    exp += 1;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s0.%0*.0fE%+03d", neg ? "-" : "", digits, rounded, exp);
  return buf;
}

std::string format_rate(const std::optional<double>& rate, bool first_row) {
  if (!rate) return first_row ? "0.00" : "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *rate);
  return buf;
}

std::string render_markdown(const ConvergenceReport& report, const std::string& title) {
  std::ostringstream out;
  if (!title.empty()) out << "## " << title << "\n\n";
  out << "| level | ||u_h-u||_0 | rate | |u_h-u|_1h | rate | energy | rate |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& r = row.report;
    out << "| " << r.level << " | " << format_mantissa(r.l2) << " | "
        << format_rate(row.rate_l2, i == 0) << " | " << format_mantissa(r.h1) << " | "
        << format_rate(row.rate_h1, i == 0) << " | " << format_mantissa(r.energy) << " | "
        << format_rate(row.rate_energy, i == 0) << " |\n";
  }
  return out.str();
}

std::string render_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "level,l2,rate_l2,h1,rate_h1,energy,rate_energy,"
         "h,dofs,l2_full,h1_full,energy_full,energy_qh_full,h2h_full,l2_q0_full\n";
  char buf[256];
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const auto& r = row.report;
    out << r.level << ',' << format_mantissa(r.l2) << ',' << format_rate(row.rate_l2, i == 0)
        << ',' << format_mantissa(r.h1) << ',' << format_rate(row.rate_h1, i == 0) << ','
        << format_mantissa(r.energy) << ',' << format_rate(row.rate_energy, i == 0) << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.h, r.dofs,
                  r.l2, r.h1, r.energy, r.energy_qh, r.h2h, r.l2_q0);
    out << buf << '\n';
  }
  return out.str();
}

} // namespace sfwg
