#include "hkink/cylgrid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hkink/error.hpp"

namespace hkink {

namespace {

void validate(const CylGrid& g) {
  if (g.n < 1) throw DimensionError("Heisenberg index must be >= 1");
  if (g.Nr < 8 || g.Nt < 8) throw DimensionError("grid needs at least 8 nodes per direction");
  if (!(g.R > 0.0) || !(g.t_max > g.t_min)) throw DomainError("degenerate grid extent");
}

}  // namespace

CylGrid CylGrid::half(int n, double R, int Nr, int Nt) {
  CylGrid g{n, R, 0.0, R * R, Nr, Nt};
  validate(g);
  return g;
}

CylGrid CylGrid::full(int n, double R, int Nr, int Nt) {
  CylGrid g{n, R, -R * R, R * R, Nr, Nt};
  validate(g);
  if (Nt % 2 == 0) throw DimensionError("full-cylinder grid needs an odd Nt");
  return g;
}

bool CylGrid::contains(double r, double t) const noexcept {
  const double er = 1e-12 * R;
  const double et = 1e-12 * (t_max - t_min);
  return r >= -er && r <= R + er && t >= t_min - et && t <= t_max + et;
}

void require_same_grid(const CylGrid& a, const CylGrid& b) {
  if (!(a == b)) throw DimensionError("fields live on different grids");
}

Field::Field(const CylGrid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field::Field(const CylGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw DimensionError("field size does not match grid");
}

Field Field::sample(const CylGrid& grid, const std::function<double(double, double)>& fn) {
  Field out(grid);
  for (int j = 0; j < grid.Nt; ++j) {
    for (int i = 0; i < grid.Nr; ++i) out(i, j) = fn(grid.r(i), grid.t(j));
  }
  return out;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Field::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double Field::interpolate(double r, double t) const {
  if (!grid_.contains(r, t)) {
    throw DomainError("interpolation point (" + std::to_string(r) + ", " + std::to_string(t) +
                      ") outside grid");
  }
  const double xr = std::clamp(r / grid_.hr(), 0.0, static_cast<double>(grid_.Nr - 1));
  const double xt =
      std::clamp((t - grid_.t_min) / grid_.ht(), 0.0, static_cast<double>(grid_.Nt - 1));
  const int i = std::min(static_cast<int>(xr), grid_.Nr - 2);
  const int j = std::min(static_cast<int>(xt), grid_.Nt - 2);
  const double a = xr - i;
  const double b = xt - j;
  // exact node hits avoid blending in a neighbour
  if (a == 0.0 && b == 0.0) return (*this)(i, j);
  return (1 - a) * (1 - b) * (*this)(i, j) + a * (1 - b) * (*this)(i + 1, j) +
         (1 - a) * b * (*this)(i, j + 1) + a * b * (*this)(i + 1, j + 1);
}

Field Field::resample(const CylGrid& target, std::optional<double> outside) const {
  Field out(target);
  for (int j = 0; j < target.Nt; ++j) {
    for (int i = 0; i < target.Nr; ++i) {
      const double r = target.r(i);
      const double t = target.t(j);
      if (grid_.contains(r, t)) {
        out(i, j) = interpolate(r, t);
      } else if (outside) {
        out(i, j) = *outside;
      } else {
        throw DomainError("resample target extends beyond the source grid");
      }
    }
  }
  return out;
}

GapField GapField::from_value(Field value) {
  Field gap(value.grid());
  for (std::size_t k = 0; k < gap.values().size(); ++k) {
    gap.values()[k] = 1.0 - std::abs(value.values()[k]);
  }
  return GapField{std::move(value), std::move(gap)};
}

double GapField::t_increment(int i, int j) const {
  const double a = value(i, j);
  const double b = value(i, j + 1);
  if (a >= 0.5 && b >= 0.5) return gap(i, j) - gap(i, j + 1);
  if (a <= -0.5 && b <= -0.5) return gap(i, j + 1) - gap(i, j);
  return b - a;
}

CylOperator::CylOperator(const CylGrid& grid)
    : grid_(grid),
      west_(grid.Nr, 0.0),
      east_(grid.Nr, 0.0),
      vertical_(grid.Nr, 0.0),
      weight_(grid.Nr, 0.0) {
  const int n = grid.n;
  const double hr = grid.hr();
  const double ht = grid.ht();
  const int p = 2 * n - 1;

  {
    const double half = 0.5 * hr;
    const double volume = std::pow(half, 2 * n) / (2.0 * n);
    east_[0] = 4.0 * n / (hr * hr);
    weight_[0] = volume * ht;
  }
  for (int i = 1; i < grid.Nr; ++i) {
    const double r = grid.r(i);
    const double rp = r + 0.5 * hr;
    const double rm = r - 0.5 * hr;
    const double volume = (std::pow(rp, 2 * n) - std::pow(rm, 2 * n)) / (2.0 * n);
    east_[i] = std::pow(rp, p) / (hr * volume);
    west_[i] = std::pow(rm, p) / (hr * volume);
    vertical_[i] = 4.0 * r * r / (ht * ht);
    weight_[i] = volume * ht;
  }
}

double CylOperator::apply_at(const Field& u, int i, int j) const {
  const double c = u(i, j);
  double s = east_[i] * (u(i + 1, j) - c);
  if (i > 0) s += west_[i] * (u(i - 1, j) - c);
  s += vertical_[i] * ((u(i, j + 1) - c) + (u(i, j - 1) - c));
  return s;
}

CylOperator build_operator(const CylGrid& grid) { return CylOperator(grid); }

Field apply(const CylOperator& op, const Field& u) {
  require_same_grid(op.grid(), u.grid());
  const CylGrid& g = op.grid();
  Field out(g);
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 0; i < g.Nr - 1; ++i) out(i, j) = op.apply_at(u, i, j);
  }
  return out;
}

double residual(const CylOperator& op, const Field& u, const Nonlinearity& f) {
  require_same_grid(op.grid(), u.grid());
  const CylGrid& g = op.grid();
  double worst = 0.0;
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 0; i < g.Nr - 1; ++i) {
      worst = std::max(worst, std::abs(op.apply_at(u, i, j) + f(u(i, j))));
    }
  }
  return worst;
}

double weighted_dot(const CylOperator& op, const Field& u, const Field& v) {
  require_same_grid(op.grid(), u.grid());
  require_same_grid(op.grid(), v.grid());
  const CylGrid& g = op.grid();
  double s = 0.0;
  for (int j = 1; j < g.Nt - 1; ++j) {
    for (int i = 0; i < g.Nr - 1; ++i) s += u(i, j) * v(i, j) * op.weight(i);
  }
  return s;
}

double extrapolated_residual(const CylOperator& op, const Field& u, const Nonlinearity& f,
                             std::optional<Window> window) {
  require_same_grid(op.grid(), u.grid());
  const CylGrid& g = op.grid();
  if (g.Nr % 2 == 0 || g.Nt % 2 == 0) {
    throw DimensionError("extrapolated residual needs odd node counts");
  }
  CylGrid coarse = g;
  coarse.Nr = (g.Nr + 1) / 2;
  coarse.Nt = (g.Nt + 1) / 2;
  if (coarse.Nr < 8 || coarse.Nt < 8) throw DimensionError("grid too small to coarsen");

  Field uc(coarse);
  for (int J = 0; J < coarse.Nt; ++J) {
    for (int I = 0; I < coarse.Nr; ++I) uc(I, J) = u(2 * I, 2 * J);
  }
  const CylOperator opc(coarse);

  double worst = 0.0;
  for (int J = 1; J < coarse.Nt - 1; ++J) {
    for (int I = 0; I < coarse.Nr - 1; ++I) {
      if (window && !window->contains(coarse.r(I), coarse.t(J))) continue;
      const double fine = op.apply_at(u, 2 * I, 2 * J);
      const double crude = opc.apply_at(uc, I, J);
      const double extrapolated = (4.0 * fine - crude) / 3.0;
      worst = std::max(worst, std::abs(extrapolated + f(uc(I, J))));
    }
  }
  return worst;
}

}  // namespace hkink
