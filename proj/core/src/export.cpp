#include "hkink/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& os, const Field& field) {
  const CylGrid& g = field.grid();
  os << "r,t,value\n";
  for (int j = 0; j < g.Nt; ++j) {
    for (int i = 0; i < g.Nr; ++i) {
      os << format_number(g.r(i)) << ',' << format_number(g.t(j)) << ',' << format_number(field(i, j))
         << '\n';
    }
  }
}

namespace {

// The last node is (N - 1) * (R / (N - 1)), which can sit an ulp away from R.
// Prefer a nearby R that reproduces it and has a short decimal form.
double recover_extent(double last, int N) {
  double best = last;
  int best_digits = 18;
  double c = last;
  for (int k = 0; k < 4; ++k) c = std::nextafter(c, -INFINITY);
  for (int k = 0; k < 9; ++k, c = std::nextafter(c, INFINITY)) {
    if ((N - 1) * (c / (N - 1)) != last) continue;
    int digits = 1;
    char buf[40];
    for (; digits < 17; ++digits) {
      std::snprintf(buf, sizeof buf, "%.*g", digits, c);
      if (std::strtod(buf, nullptr) == c) break;
    }
    if (digits < best_digits) {
      best = c;
      best_digits = digits;
    }
  }
  return best;
}

}  // namespace

Field read_field_csv(std::istream& is, int n) {
  std::string line;
  if (!std::getline(is, line) || line != "r,t,value") throw DomainError("field CSV: bad header");
  std::vector<double> r, t, v;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    double a, b, c;
    char tail;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &a, &b, &c, &tail) != 3) {
      throw DomainError("field CSV: malformed line " + std::to_string(lineno));
    }
    r.push_back(a);
    t.push_back(b);
    v.push_back(c);
  }
  if (r.empty()) throw DomainError("field CSV: no rows");
  int Nr = 1;
  while (Nr < static_cast<int>(t.size()) && t[Nr] == t[0]) ++Nr;
  if (v.size() % Nr != 0) throw DomainError("field CSV: ragged rows");
  const int Nt = static_cast<int>(v.size() / Nr);
  if (Nr < 8 || Nt < 8) throw DomainError("field CSV: grid too small");
  CylGrid g;
  g.n = n;
  g.R = recover_extent(r[Nr - 1], Nr);
  g.t_min = t.front();
  g.t_max = t.back();
  g.Nr = Nr;
  g.Nt = Nt;
  const double scale = std::max({g.R, std::abs(g.t_min), std::abs(g.t_max)});
  for (int j = 0; j < Nt; ++j) {
    for (int i = 0; i < Nr; ++i) {
      const std::size_t k = g.index(i, j);
      if (std::abs(r[k] - g.r(i)) > 1e-9 * scale || std::abs(t[k] - g.t(j)) > 1e-9 * scale) {
        throw DomainError("field CSV: rows do not form a uniform grid");
      }
    }
  }
  return Field(g, std::move(v));
}

Field read_field_csv(std::istream& is, const CylGrid& expected) {
  const Field raw = read_field_csv(is, expected.n);
  const CylGrid& g = raw.grid();
  const double scale = std::max({expected.R, std::abs(expected.t_min), std::abs(expected.t_max)});
  if (g.Nr != expected.Nr || g.Nt != expected.Nt || std::abs(g.R - expected.R) > 1e-9 * scale ||
      std::abs(g.t_min - expected.t_min) > 1e-9 * scale || std::abs(g.t_max - expected.t_max) > 1e-9 * scale) {
    throw DomainError("field CSV: grid differs from the expected one");
  }
  return Field(expected, raw.values());
}

void write_ode_csv(std::ostream& os, const RadialODESolution& sol, const Nonlinearity& f) {
  os << "r,U,dU,V,H\n";
  const double e = (2.0 * sol.n - 1.0) / 2.0;
  const double c = liouville_coefficient(sol.n);
  const double stop = sol.zero_crossings.empty() ? INFINITY : sol.zero_crossings.front();
  for (std::size_t k = 0; k < sol.r.size(); ++k) {
    const double r = sol.r[k];
    const double U = sol.U[k];
    os << format_number(r) << ',' << format_number(U) << ',' << format_number(sol.dU[k]) << ',';
    if (r > 0.0 && r < stop && U != 0.0) {
      os << format_number(std::pow(r, e) * U) << ',' << format_number(f(U) / U + c / (r * r));
    } else {
      os << ',';
    }
    os << '\n';
  }
}

const std::array<std::array<unsigned char, 3>, 256>& color_ramp() {
  static const auto ramp = [] {
    const double anchors[5][3] = {
        {0x21, 0x66, 0xac}, {0x67, 0xa9, 0xcf}, {0xf7, 0xf7, 0xf7}, {0xef, 0x8a, 0x62}, {0xb2, 0x18, 0x2b}};
    std::array<std::array<unsigned char, 3>, 256> out{};
    for (int k = 0; k < 256; ++k) {
      const double x = k / 255.0 * 4.0;
      const int seg = std::min(3, static_cast<int>(x));
      const double a = x - seg;
      for (int c = 0; c < 3; ++c) {
        const double v = (1.0 - a) * anchors[seg][c] + a * anchors[seg + 1][c];
        out[k][c] = static_cast<unsigned char>(std::lround(v));
      }
    }
    return out;
  }();
  return ramp;
}

namespace {

std::string hex(const std::array<unsigned char, 3>& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string fmt(double v, int digits = 4) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kW = 640, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

}  // namespace

void write_heatmap_svg(std::ostream& os, const Field& field, const std::string& title, double lo,
                       double hi, int max_cells) {
  const CylGrid& g = field.grid();
  const int sr = std::max(1, (g.Nr + max_cells - 1) / max_cells);
  const int st = std::max(1, (g.Nt + max_cells - 1) / max_cells);
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  const double span_t = g.t_max - g.t_min;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
     << "</text>\n";
  os << "<g shape-rendering=\"crispEdges\">\n";
  const auto& ramp = color_ramp();
  for (int j = 0; j < g.Nt; j += st) {
    const int j1 = std::min(j + st, g.Nt - 1);
    for (int i = 0; i < g.Nr; i += sr) {
      const int i1 = std::min(i + sr, g.Nr - 1);
      if (i1 == i || j1 == j) continue;
      const double v = std::clamp(field(i, j), lo, hi);
      const int idx = static_cast<int>(std::lround((v - lo) / (hi - lo) * 255.0));
      const double x0 = kLeft + g.r(i) / g.R * pw;
      const double x1 = kLeft + g.r(i1) / g.R * pw;
      const double y0 = kTop + ph - (g.t(j1) - g.t_min) / span_t * ph;
      const double y1 = kTop + ph - (g.t(j) - g.t_min) / span_t * ph;
      os << "<rect x=\"" << fmt(x0, 6) << "\" y=\"" << fmt(y0, 6) << "\" width=\"" << fmt(x1 - x0, 6)
         << "\" height=\"" << fmt(y1 - y0, 6) << "\" fill=\"" << hex(ramp[idx]) << "\"/>\n";
    }
  }
  os << "</g>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">r</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\">t</text>\n";
  os << "<text x=\"" << kLeft << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">0</text>\n";
  os << "<text x=\"" << kLeft + pw << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
     << fmt(g.R) << "</text>\n";
  os << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + ph << "\" text-anchor=\"end\">" << fmt(g.t_min)
     << "</text>\n";
  os << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << fmt(g.t_max)
     << "</text>\n";
  os << "</svg>\n";
}

void write_line_svg(std::ostream& os, const std::vector<SvgSeries>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (double x : s.x) xmin = std::min(xmin, x), xmax = std::max(xmax, x);
    for (double y : s.y) ymin = std::min(ymin, y), ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) xmin = 0.0, xmax = 1.0;
  if (!(ymax > ymin)) ymin -= 1.0, ymax += 1.0;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto X = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return kTop + ph - (y - ymin) / (ymax - ymin) * ph; };
  static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape(title)
     << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double x = xmin + (xmax - xmin) * k / 4.0;
    const double y = ymin + (ymax - ymin) * k / 4.0;
    os << "<text x=\"" << fmt(X(x), 6) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
       << fmt(x) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(Y(y) + 4, 6) << "\" text-anchor=\"end\">" << fmt(y)
       << "</text>\n";
  }
  if (ymin < 0.0 && ymax > 0.0) {
    os << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << fmt(Y(0.0), 6) << "\" y2=\""
       << fmt(Y(0.0), 6) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (std::size_t q = 0; q < series.size(); ++q) {
    const auto& s = series[q];
    const char* color = colors[q % 6];
    // thin long traces to about 2000 vertices
    const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 2000);
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); k += stride) {
      os << fmt(X(s.x[k]), 6) << ',' << fmt(Y(s.y[k]), 6) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + pw - 8 << "\" y=\"" << kTop + 16 + 16 * q << "\" text-anchor=\"end\" fill=\""
       << color << "\">" << escape(s.label) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";
  os << "</svg>\n";
}

}  // namespace hkink
