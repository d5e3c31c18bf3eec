#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "hkink/nonlinearity.hpp"

namespace hkink {

/// Node-centred (r, t) grid on [0, R] x [t_min, t_max]. The axis r = 0 is a
/// node; the outer side r = R and the two lids are Dirichlet rows.
struct CylGrid {
  int n = 1;
  double R = 1.0;
  double t_min = 0.0;
  double t_max = 1.0;
  int Nr = 8;
  int Nt = 8;

  /// Half cylinder [0, R] x [0, R^2].
  static CylGrid half(int n, double R, int Nr, int Nt);
  /// Full cylinder [0, R] x [-R^2, R^2]; Nt must be odd so that t = 0 is a row.
  static CylGrid full(int n, double R, int Nr, int Nt);

  double hr() const noexcept { return R / (Nr - 1); }
  double ht() const noexcept { return (t_max - t_min) / (Nt - 1); }
  double r(int i) const noexcept { return i * hr(); }
  double t(int j) const noexcept { return t_min + j * ht(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(Nr) * Nt; }
  /// Row-major over t, then r.
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * Nr + static_cast<std::size_t>(i);
  }
  bool dirichlet(int i, int j) const noexcept { return i == Nr - 1 || j == 0 || j == Nt - 1; }
  bool is_full() const noexcept { return t_min < 0.0; }
  /// Row index of t = 0 (full grids), or 0 for half grids.
  int seam_row() const noexcept { return is_full() ? (Nt - 1) / 2 : 0; }
  bool contains(double r, double t) const noexcept;

  bool operator==(const CylGrid&) const = default;
};

/// A scalar function sampled on a CylGrid.
class Field {
 public:
  Field() = default;
  explicit Field(const CylGrid& grid, double fill = 0.0);
  Field(const CylGrid& grid, std::vector<double> values);
  /// Samples fn(r, t) at every node.
  static Field sample(const CylGrid& grid, const std::function<double(double, double)>& fn);

  const CylGrid& grid() const noexcept { return grid_; }
  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double min() const;
  double max() const;
  double sup_abs() const;
  /// Bilinear interpolation; throws DomainError outside the grid.
  double interpolate(double r, double t) const;
  /// Resamples onto another grid by bilinear interpolation; nodes of `target`
  /// outside this grid get `outside`.
  Field resample(const CylGrid& target, std::optional<double> outside = std::nullopt) const;

 private:
  CylGrid grid_;
  std::vector<double> values_;
};

/// Throws DimensionError unless both fields live on the same grid.
void require_same_grid(const CylGrid& a, const CylGrid& b);

/// A field bounded by 1 in modulus together with an independently computed
/// gap = 1 - |value|. Near +-1 the gap carries the digits the value loses.
struct GapField {
  Field value;
  Field gap;

  /// Gap computed from the value (no extra digits).
  static GapField from_value(Field value);
  /// value(i, j+1) - value(i, j), using gaps when both nodes sit on the same
  /// side near +-1.
  double t_increment(int i, int j) const;
};

/// Discrete cylindrical Kohn Laplacian
///   L U = r^{1-2n} d_r(r^{2n-1} d_r U) + 4 r^2 d_tt U
/// in conservative form: fluxes through r_{i+-1/2} with weight r^{2n-1}, divided
/// by the cell measure V_i = (r_{i+1/2}^{2n} - r_{i-1/2}^{2n}) / (2n). At the axis
/// this reduces to 4n (U_1 - U_0) / hr^2 = 2n d_rr U with the even ghost node.
class CylOperator {
 public:
  explicit CylOperator(const CylGrid& grid);

  const CylGrid& grid() const noexcept { return grid_; }
  double west(int i) const { return west_[i]; }
  double east(int i) const { return east_[i]; }
  /// Coefficient of each t-neighbour: 4 r_i^2 / ht^2.
  double vertical(int i) const { return vertical_[i]; }
  double diagonal(int i) const { return -(west_[i] + east_[i] + 2.0 * vertical_[i]); }
  /// Cell measure V_i * ht; the weight making L symmetric.
  double weight(int i) const { return weight_[i]; }

  /// (L U) at a non-Dirichlet node.
  double apply_at(const Field& u, int i, int j) const;

 private:
  CylGrid grid_;
  std::vector<double> west_, east_, vertical_, weight_;
};

CylOperator build_operator(const CylGrid& grid);

/// L u at non-Dirichlet nodes; Dirichlet rows are 0.
Field apply(const CylOperator& op, const Field& u);

/// max over non-Dirichlet nodes of |L u + f(u)|.
double residual(const CylOperator& op, const Field& u, const Nonlinearity& f);

/// Weighted inner product sum u v V_i ht over non-Dirichlet nodes.
double weighted_dot(const CylOperator& op, const Field& u, const Field& v);

/// Axis-aligned sub-rectangle of the (r, t) plane.
struct Window {
  double r_lo, r_hi, t_lo, t_hi;
  bool contains(double r, double t) const noexcept {
    return r >= r_lo && r <= r_hi && t >= t_lo && t <= t_hi;
  }
};

/// Truncation-level residual of a discrete solution: at nodes shared with the
/// 2x coarser grid, |L* u + f(u)| with the Richardson-extrapolated operator
/// L* = (4 L_h - L_2h) / 3. For a converged discrete solution this measures the
/// O(hr^2 + ht^2) defect of u against the continuous equation. Only nodes whose
/// coarse stencil is interior and which lie in `window` (if given) count.
/// Requires odd Nr and Nt.
double extrapolated_residual(const CylOperator& op, const Field& u, const Nonlinearity& f,
                             std::optional<Window> window = std::nullopt);

}  // namespace hkink
