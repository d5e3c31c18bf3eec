#include "hkink/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hkink/error.hpp"

namespace hkink {

Nonlinearity::Nonlinearity(std::string name, Fn f, double l, double shift, Fn near_one)
    : name_(std::move(name)), f_(std::move(f)), near_one_(std::move(near_one)), l_(l),
      shift_(shift) {
  if (!f_) throw DomainError("nonlinearity without an evaluator");
  if (!(l_ > 0.0)) throw DomainError("slope limit l must be positive");
  if (!(shift_ > 0.0)) throw DomainError("Lipschitz shift M must be positive");
}

double Nonlinearity::near_one(double w) const {
  if (near_one_) return near_one_(w);
  return f_(1.0 - w);
}

double Nonlinearity::g(double s) const {
  if (!(s >= -1.0 && s <= 1.0)) {
    throw DomainError("g evaluated outside [-1, 1]: " + std::to_string(s));
  }
  return f_(s) + shift_ * s;
}

Nonlinearity make_cubic() {
  return Nonlinearity(
      "cubic", [](double s) { return s * (1.0 - s * s); }, 1.0, 2.0,
      // f(1 - w) = (1 - w)(2 - w) w
      [](double w) { return w * (1.0 - w) * (2.0 - w); });
}

Nonlinearity make_sine() {
  auto f = [](double s) { return std::sin(std::numbers::pi * s) / std::numbers::pi; };
  return Nonlinearity(
      "sine", f, 1.0, default_shift(f),
      [](double w) { return std::sin(std::numbers::pi * w) / std::numbers::pi; });
}

std::vector<std::string> builtin_names() { return {"cubic", "sine"}; }

Nonlinearity make_builtin(const std::string& name) {
  if (name == "cubic") return make_cubic();
  if (name == "sine") return make_sine();
  throw DomainError("unknown nonlinearity '" + name + "'");
}

double sampled_lipschitz(const Nonlinearity::Fn& fn, int samples) {
  samples = std::max(samples, 3);
  const double h = 2.0 / (samples - 1);
  double lip = 0.0;
  double prev = fn(-1.0);
  for (int k = 1; k < samples; ++k) {
    const double cur = fn(-1.0 + k * h);
    lip = std::max(lip, std::abs(cur - prev) / h);
    prev = cur;
  }
  return lip;
}

double default_shift(const Nonlinearity::Fn& fn) { return 1.05 * sampled_lipschitz(fn); }

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool ValidationReport::passed(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.passed;
  }
  return false;
}

ValidationReport validate_hypotheses(const Nonlinearity& f, int samples) {
  if (samples < 16) throw DomainError("validate_hypotheses needs at least 16 samples");
  ValidationReport report;
  const double h = 1.0 / samples;

  {
    double worst = 0.0;
    double worst_s = 0.0;
    for (int k = 1; k <= samples; ++k) {
      const double s = k * h;
      const double defect = std::abs(f(s) + f(-s)) / std::max(1.0, std::abs(f(s)));
      if (defect > worst) {
        worst = defect;
        worst_s = s;
      }
    }
    std::ostringstream os;
    os << "max |f(s) + f(-s)| = " << worst << " at s = " << worst_s;
    report.checks.push_back({"H1", worst <= 1e-12, os.str()});
  }

  {
    const double f0 = f(0.0);
    const double f1 = f(1.0);
    double min_interior = INFINITY;
    for (int k = 1; k < samples; ++k) min_interior = std::min(min_interior, f(k * h));
    const bool ok = std::abs(f0) <= 1e-12 && std::abs(f1) <= 1e-12 && min_interior > 0.0;
    std::ostringstream os;
    os << "f(0) = " << f0 << ", f(1) = " << f1 << ", min f on (0,1) = " << min_interior;
    report.checks.push_back({"H2", ok, os.str()});
  }

  {
    std::ostringstream os;
    os << "l = " << f.l();
    bool ok = true;
    for (const double s : {1e-2, 1e-3, 1e-4}) {
      const double ratio = f(s) / s;
      os << ", f(" << s << ")/" << s << " = " << ratio;
      if (s == 1e-4) ok = std::abs(ratio - f.l()) <= 0.05 * f.l();
    }
    report.checks.push_back({"H3", ok, os.str()});
  }

  {
    const double lip = sampled_lipschitz([&f](double s) { return f(s); }, 16 * samples + 1);
    std::ostringstream os;
    os << "sampled Lipschitz constant " << lip << " vs declared M = " << f.shift();
    report.checks.push_back({"lipschitz", lip <= f.shift() * (1.0 + 1e-9), os.str()});
  }
  return report;
}

}  // namespace hkink
