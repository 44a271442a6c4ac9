// Rendering of convergence tables: fixed-point scientific mantissas in the
// style 0.2764E+00, markdown and CSV outputs carrying the same formatted
// numbers (CSV adds full-precision columns).
#pragma once

#include "sfwg/norms.hpp"

#include <string>

namespace sfwg {

/// Formats v as 0.dddd E+ee with `digits` significant digits.
std::string format_mantissa(double v, int digits = 4);

/// Rate column entry: 2 decimals; first row prints 0.00, an undefined rate
/// (zero error) prints n/a.
std::string format_rate(const std::optional<double>& rate, bool first_row);

std::string render_markdown(const ConvergenceReport& report, const std::string& title);
std::string render_csv(const ConvergenceReport& report);

} // namespace sfwg
