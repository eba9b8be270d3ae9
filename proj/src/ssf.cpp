#include "ssflab/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ssflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluates a binary operation pointwise on the union of breakpoints.
template <typename Op>
StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
  std::vector<double> bp = f.breakpoints();
  bp.insert(bp.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> vals;
  vals.reserve(bp.size());
  for (double x : bp) vals.push_back(op(f(x), g(x)));
  return StepFunction(op(f.left_tail(), g.left_tail()), std::move(bp), std::move(vals));
}

RealVector clamp_nonnegative(const RealVector& ev, const char* which) {
  RealVector out = ev;
  for (Index i = 0; i < out.size(); ++i) {
    if (out(i) < -defaults::kNonnegativeReject) {
      std::ostringstream os;
      os << "ssf_nonneg_pair: " << which << " is not positive semidefinite (eigenvalue "
         << out(i) << ")";
      throw ContractError(os.str());
    }
    if (out(i) < 0.0) out(i) = 0.0;
  }
  return out;
}

}  // namespace

StepFunction::StepFunction(double left_tail, std::vector<double> breakpoints,
                           std::vector<double> values)
    : left_tail_(left_tail), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size())
    throw DimensionError("StepFunction: one value per breakpoint is required");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i]))
      throw ParameterError("StepFunction: breakpoints must be finite");
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))
      throw ParameterError("StepFunction: breakpoints must be strictly increasing");
  }
}

StepFunction StepFunction::from_jumps(std::vector<std::pair<double, double>> jumps, double merge) {
  std::sort(jumps.begin(), jumps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> bp, vals;
  double level = 0.0;
  std::size_t i = 0;
  while (i < jumps.size()) {
    const double x = jumps[i].first;
    const double tol = merge * std::max(1.0, std::abs(x));
    double jump = 0.0;
    while (i < jumps.size() && jumps[i].first - x <= tol) jump += jumps[i++].second;
    if (jump == 0.0) continue;
    level += jump;
    bp.push_back(x);
    vals.push_back(level);
  }
  return StepFunction(0.0, std::move(bp), std::move(vals));
}

double StepFunction::operator()(double x) const {
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return left_tail_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepFunction::left_limit(double x) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return left_tail_;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

std::vector<Piece> StepFunction::pieces() const {
  std::vector<Piece> out;
  out.reserve(breakpoints_.size() + 1);
  out.push_back({-kInf, breakpoints_.empty() ? kInf : breakpoints_.front(), left_tail_});
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double hi = i + 1 < breakpoints_.size() ? breakpoints_[i + 1] : kInf;
    out.push_back({breakpoints_[i], hi, values_[i]});
  }
  return out;
}

double StepFunction::integral(double a, double b) const {
  if (!(a <= b)) throw ParameterError("StepFunction::integral: requires a <= b");
  double acc = 0.0;
  for (const Piece& p : pieces()) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (!(hi > lo) || p.value == 0.0) continue;
    acc += p.value * (hi - lo);
  }
  return acc;
}

double StepFunction::total_variation() const {
  double tv = 0.0;
  double prev = left_tail_;
  for (double v : values_) {
    tv += std::abs(v - prev);
    prev = v;
  }
  return tv;
}

StepFunction StepFunction::operator+(const StepFunction& other) const {
  return combine(*this, other, [](double a, double b) { return a + b; });
}

StepFunction StepFunction::operator-(const StepFunction& other) const {
  return combine(*this, other, [](double a, double b) { return a - b; });
}

StepFunction StepFunction::operator*(double s) const {
  std::vector<double> vals = values_;
  for (double& v : vals) v *= s;
  return StepFunction(left_tail_ * s, breakpoints_, std::move(vals));
}

StepFunction StepFunction::shifted(double c) const {
  std::vector<double> bp = breakpoints_;
  for (double& x : bp) x += c;
  return StepFunction(left_tail_, std::move(bp), values_);
}

StepFunction StepFunction::simplified() const {
  std::vector<double> bp, vals;
  double prev = left_tail_;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == prev) continue;
    bp.push_back(breakpoints_[i]);
    vals.push_back(values_[i]);
    prev = values_[i];
  }
  return StepFunction(left_tail_, std::move(bp), std::move(vals));
}

void StepFunction::write_csv(std::ostream& os) const {
  char buf[64];
  os << "breakpoint,value\n";
  std::snprintf(buf, sizeof buf, "-inf,%.17g\n", left_tail_);
  os << buf;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", breakpoints_[i], values_[i]);
    os << buf;
  }
}

StepFunction ssf_pair(const HermitianOperator& a_plus, const HermitianOperator& a_minus) {
  if (a_plus.dim() != a_minus.dim()) throw DimensionError("ssf_pair: dimension mismatch");
  const RealVector& ep = a_plus.eigenvalues();
  const RealVector& em = a_minus.eigenvalues();
  std::vector<std::pair<double, double>> jumps;
  jumps.reserve(static_cast<std::size_t>(ep.size() + em.size()));
  for (Index i = 0; i < em.size(); ++i) jumps.emplace_back(em(i), 1.0);
  for (Index i = 0; i < ep.size(); ++i) jumps.emplace_back(ep(i), -1.0);
  return StepFunction::from_jumps(std::move(jumps));
}

StepFunction ssf_weighted(const RealVector& h2_values, const RealVector& h2_weights,
                          const RealVector& h1_values, const RealVector& h1_weights) {
  if (h2_values.size() != h2_weights.size() || h1_values.size() != h1_weights.size())
    throw DimensionError("ssf_weighted: one weight per eigenvalue is required");
  std::vector<std::pair<double, double>> jumps;
  for (Index i = 0; i < h1_values.size(); ++i) jumps.emplace_back(h1_values(i), h1_weights(i));
  for (Index i = 0; i < h2_values.size(); ++i) jumps.emplace_back(h2_values(i), -h2_weights(i));
  return StepFunction::from_jumps(std::move(jumps));
}

StepFunction ssf_nonneg_pair(const HermitianOperator& h2, const HermitianOperator& h1) {
  const RealVector e2 = clamp_nonnegative(h2.eigenvalues(), "h2");
  const RealVector e1 = clamp_nonnegative(h1.eigenvalues(), "h1");
  return ssf_weighted(e2, RealVector::Ones(e2.size()), e1, RealVector::Ones(e1.size()));
}

KreinCheck krein_check(const HermitianOperator& a_plus, const HermitianOperator& a_minus,
                       const DifferentiableFn& f) {
  if (a_plus.dim() != a_minus.dim()) throw DimensionError("krein_check: dimension mismatch");
  const RealVector& ep = a_plus.eigenvalues();
  const RealVector& em = a_minus.eigenvalues();
  KreinCheck out;
  for (Index i = 0; i < ep.size(); ++i) out.lhs += f.value(ep(i)) - f.value(em(i));
  const StepFunction xi = ssf_pair(a_plus, a_minus);
  out.rhs = xi.integrate_antiderivative([&](double x) { return f.value(x); });
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

int weight_exponent(int p) {
  if (p < 0) throw ParameterError("weight_exponent: p must be nonnegative");
  return 2 * (p / 2) + 2;
}

double weight_antiderivative(double x, int q) {
  if (q < 2 || q % 2 != 0) throw ParameterError("weight_antiderivative: q must be even and >= 2");
  const int m = q / 2;
  const double pi = std::numbers::pi;
  if (std::isinf(x)) {
    const double half = pi / (2.0 * m * std::sin(pi / (2.0 * m)));
    return x > 0 ? half : -half;
  }
  // Partial fractions over the roots e^{i theta_k} of 1 + x^{2m} in the upper half plane.
  double acc = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double th = (2.0 * k - 1.0) * pi / (2.0 * m);
    const double c = std::cos(th);
    const double s = std::sin(th);
    acc += -0.5 * c * std::log(x * x - 2.0 * x * c + 1.0) + s * std::atan((x - c) / s);
  }
  // Subtract the value at 0 so that the antiderivative is odd.
  double at0 = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double th = (2.0 * k - 1.0) * pi / (2.0 * m);
    at0 += std::sin(th) * std::atan(-std::cos(th) / std::sin(th));
  }
  return (acc - at0) / m;
}

double weighted_l1(const StepFunction& f, int q) {
  double acc = 0.0;
  for (const Piece& p : f.pieces()) {
    if (p.value == 0.0) continue;
    if (std::isinf(p.lo) || std::isinf(p.hi))
      throw ContractError("weighted_l1: step function is not compactly supported");
    acc += std::abs(p.value) * (weight_antiderivative(p.hi, q) - weight_antiderivative(p.lo, q));
  }
  return acc;
}

CutoffLimit ssf_cutoff_limit(const HermitianOperator& a_minus, const HermitianOperator& b_plus,
                             const std::vector<double>& levels, int p) {
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (!(levels[i] > levels[i - 1]))
      throw ParameterError("ssf_cutoff_limit: levels must be increasing");
  const int q = weight_exponent(p);
  CutoffLimit out;
  out.levels = levels;
  out.limit = ssf_pair(a_minus + b_plus, a_minus);
  for (double n : levels) {
    const HermitianOperator bn = reduce(b_plus, cutoff(a_minus, n));
    StepFunction xi = ssf_pair(a_minus + bn, a_minus);
    out.l1_weighted_gaps.push_back(weighted_l1(xi - out.limit, q));
    out.per_level.push_back(std::move(xi));
  }
  return out;
}

}  // namespace ssflab
