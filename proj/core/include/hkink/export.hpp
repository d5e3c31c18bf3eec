#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "hkink/cylgrid.hpp"
#include "hkink/farfield.hpp"

namespace hkink {

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

/// CSV with header "r,t,value", LF line endings, rows ordered by t then r.
void write_field_csv(std::ostream& os, const Field& field);
/// Reads a field written by write_field_csv; the grid is rebuilt from the
/// distinct r and t columns. Throws DomainError on malformed input.
Field read_field_csv(std::istream& is, int n);
/// Same, but the values are placed on `expected`; throws DomainError if the
/// coordinates disagree beyond 1e-9 relative.
Field read_field_csv(std::istream& is, const CylGrid& expected);

/// CSV "r,U,dU,V,H". V and H are empty past the transform range.
void write_ode_csv(std::ostream& os, const RadialODESolution& sol, const Nonlinearity& f);

/// The 256-entry heatmap ramp: piecewise-linear through
/// #2166ac (-1), #67a9cf, #f7f7f7 (0), #ef8a62, #b2182b (+1).
const std::array<std::array<unsigned char, 3>, 256>& color_ramp();

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Per-cell heatmap of a field over the (r, t) plane, values clamped to
/// [lo, hi] and mapped through color_ramp. Cells are merged 'stride' at a time
/// in each direction to bound the file size.
void write_heatmap_svg(std::ostream& os, const Field& field, const std::string& title,
                       double lo = -1.0, double hi = 1.0, int max_cells = 160);

/// Polyline plot of one or more series with axes and tick labels.
void write_line_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label);

}  // namespace hkink
