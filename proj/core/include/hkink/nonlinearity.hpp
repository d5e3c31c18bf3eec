#pragma once

#include <functional>
#include <string>
#include <vector>

namespace hkink {

/// Reaction term f of Delta_H u + f(u) = 0 together with its two constants:
/// l = lim f(s)/s at 0 and the shift M >= Lip(f) on [-1, 1].
class Nonlinearity {
 public:
  using Fn = std::function<double(double)>;

  /// `near_one`, when given, must return f(1 - w) accurately for tiny w;
  /// otherwise it falls back to evaluating f(1 - w).
  Nonlinearity(std::string name, Fn f, double l, double shift, Fn near_one = {});

  double operator()(double s) const { return f_(s); }
  /// f(1 - w)
  double near_one(double w) const;
  /// g(s) = f(s) + M s. Throws DomainError outside [-1, 1].
  double g(double s) const;

  double l() const noexcept { return l_; }
  double shift() const noexcept { return shift_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Fn f_;
  Fn near_one_;
  double l_;
  double shift_;
};

/// f(s) = s (1 - s^2), l = 1, M = 2.
Nonlinearity make_cubic();
/// f(s) = sin(pi s) / pi, l = 1, M from the tight Lipschitz bound.
Nonlinearity make_sine();
/// Builtin lookup: "cubic" or "sine". Throws DomainError for unknown names.
Nonlinearity make_builtin(const std::string& name);
std::vector<std::string> builtin_names();

/// Sampled Lipschitz constant of fn on [-1, 1] (max slope between neighbours).
double sampled_lipschitz(const Nonlinearity::Fn& fn, int samples = 20001);
/// Shift used for builtins without a closed-form bound: 1.05 * sampled_lipschitz.
double default_shift(const Nonlinearity::Fn& fn);

struct HypothesisCheck {
  std::string name;  ///< "H1", "H2", "H3", "lipschitz"
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed() const;
  bool passed(const std::string& name) const;
};

/// Samples f on [-1, 1] and cross-checks oddness, the sign condition with
/// f(0) = f(1) = 0, the slope limit l (5% at s = 1e-4) and the declared shift.
/// Throws DomainError for samples < 16.
ValidationReport validate_hypotheses(const Nonlinearity& f, int samples = 1001);

}  // namespace hkink
