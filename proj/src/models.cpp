#include "ssflab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ssflab {

namespace {

// psi(x) = exp(-1/x) for x > 0, the standard flat bump ingredient.
double flat(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double flat_prime(double x) { return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

Matrix power(const Matrix& g, int k) {
  Matrix r = Matrix::Identity(g.rows(), g.cols());
  for (int i = 0; i < k; ++i) r = r * g;
  return r;
}

// Visits every composition (k_0, ..., k_parts-1) of `total` into nonnegative parts.
template <typename Visit>
void for_each_composition(int total, int parts, std::vector<int>& acc, Visit&& visit) {
  if (static_cast<int>(acc.size()) == parts - 1) {
    acc.push_back(total);
    visit(acc);
    acc.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    acc.push_back(k);
    for_each_composition(total - k, parts, acc, visit);
    acc.pop_back();
  }
}

// sum over compositions of j-1 into i+1 parts of F^{k_0+1} B G0^{k_1+1} ... B G0^{k_i+1}
Matrix resolvent_chain(const std::vector<Matrix>& first_powers, const std::vector<Matrix>& g0_powers,
                       const Matrix& b, int i, int j) {
  const Index n = b.rows();
  Matrix sum = Matrix::Zero(n, n);
  std::vector<int> acc;
  for_each_composition(j - 1, i + 1, acc, [&](const std::vector<int>& k) {
    Matrix prod = first_powers[k[0] + 1];
    for (int r = 1; r <= i; ++r) prod = prod * b * g0_powers[k[r] + 1];
    sum += prod;
  });
  return sum;
}

}  // namespace

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "tanh") return ProfileKind::Tanh;
  if (name == "erf") return ProfileKind::Erf;
  if (name == "smoothstep-compact" || name == "smoothstep") return ProfileKind::SmoothstepCompact;
  throw ParameterError("unknown profile kind '" + name +
                       "' (expected tanh, erf or smoothstep-compact)");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Tanh:
      return "tanh";
    case ProfileKind::Erf:
      return "erf";
    case ProfileKind::SmoothstepCompact:
      return "smoothstep-compact";
  }
  return "unknown";
}

ProfileFunction::ProfileFunction(ProfileKind kind, double scale) : kind_(kind), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ParameterError("profile scale must be positive and finite");
}

double ProfileFunction::value(double t) const {
  const double x = (t - shift_) / scale_;
  switch (kind_) {
    case ProfileKind::Tanh:
      return 0.5 * (1.0 + std::tanh(x));
    case ProfileKind::Erf:
      return 0.5 * (1.0 + std::erf(x));
    case ProfileKind::SmoothstepCompact: {
      const double u = 0.5 * (x + 1.0);
      const double a = flat(u);
      const double b = flat(1.0 - u);
      return a / (a + b);
    }
  }
  return 0.0;
}

double ProfileFunction::derivative(double t) const {
  const double x = (t - shift_) / scale_;
  switch (kind_) {
    case ProfileKind::Tanh: {
      const double c = std::cosh(x);
      return std::isinf(c) ? 0.0 : 0.5 / (c * c * scale_);
    }
    case ProfileKind::Erf:
      return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * scale_);
    case ProfileKind::SmoothstepCompact: {
      const double u = 0.5 * (x + 1.0);
      if (u <= 0.0 || u >= 1.0) return 0.0;
      const double a = flat(u);
      const double b = flat(1.0 - u);
      const double num = flat_prime(u) * b + a * flat_prime(1.0 - u);
      return num / ((a + b) * (a + b)) * 0.5 / scale_;
    }
  }
  return 0.0;
}

ProfileFunction ProfileFunction::shifted(double shift) const {
  ProfileFunction out = *this;
  out.shift_ = shift_ + shift;
  return out;
}

ProfileFunction make_profile(ProfileKind kind, double scale) { return ProfileFunction(kind, scale); }

ProfileFunction make_profile(const std::string& kind, double scale) {
  return ProfileFunction(parse_profile_kind(kind), scale);
}

PerturbationPath::PerturbationPath(HermitianOperator a_minus_, HermitianOperator b_plus_,
                                   ProfileFunction profile_)
    : a_minus(std::move(a_minus_)), b_plus(std::move(b_plus_)), profile(profile_) {
  if (a_minus.dim() != b_plus.dim())
    throw DimensionError("PerturbationPath: A_- and B_+ have different dimensions");
}

HermitianOperator PerturbationPath::a_plus() const { return a_minus + b_plus; }

HermitianOperator PerturbationPath::straight_line(double s) const {
  return HermitianOperator(Matrix(a_minus.matrix() + s * b_plus.matrix()));
}

PathPoint path_at(const PerturbationPath& path, double t) {
  const double th = path.profile.value(t);
  const double dth = path.profile.derivative(t);
  HermitianOperator b(Matrix(th * path.b_plus.matrix()));
  HermitianOperator a(Matrix(path.a_minus.matrix() + b.matrix()));
  HermitianOperator bp(Matrix(dth * path.b_plus.matrix()));
  return {std::move(a), std::move(b), std::move(bp)};
}

CutoffProjection cutoff(const HermitianOperator& a_minus, double level) {
  if (!(level >= 0.0)) throw ParameterError("cutoff: level must be nonnegative");
  return {level, spectral_projection(a_minus, -level, level)};
}

HermitianOperator reduce(const HermitianOperator& b, const CutoffProjection& p) {
  if (b.dim() != p.projector.rows())
    throw DimensionError("reduce: operator and projection have different dimensions");
  return HermitianOperator(Matrix(p.projector * b.matrix() * p.projector));
}

std::vector<double> cutoff_levels(const HermitianOperator& a_minus) {
  const RealVector& ev = a_minus.eigenvalues();
  std::vector<double> mags(ev.data(), ev.data() + ev.size());
  for (double& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end());
  std::vector<double> out;
  const double scale = std::max(1.0, mags.empty() ? 1.0 : mags.back());
  for (double m : mags) {
    if (out.empty() || m - out.back() > 1e-12 * scale) out.push_back(m);
  }
  return out;
}

TaylorExpansion taylor_expansion(const HermitianOperator& a0, const HermitianOperator& b, Complex z,
                                 int j) {
  if (j < 1) throw ParameterError("taylor_expansion: j must be positive");
  if (a0.dim() != b.dim()) throw DimensionError("taylor_expansion: dimension mismatch");
  const HermitianOperator a1 = a0 + b;
  const Matrix g0 = resolvent_power(a0, z, 1);
  const Matrix g1 = resolvent_power(a1, z, 1);

  std::vector<Matrix> g0_pow(j + 1), g1_pow(j + 1);
  for (int k = 0; k <= j; ++k) {
    g0_pow[k] = power(g0, k);
    g1_pow[k] = power(g1, k);
  }

  TaylorExpansion out;
  out.terms.reserve(j);
  for (int i = 1; i <= j; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    out.terms.push_back(sign * resolvent_chain(g0_pow, g0_pow, b.matrix(), i, j));
  }
  const double rsign = ((j + 1) % 2 == 0) ? 1.0 : -1.0;
  out.remainder = rsign * resolvent_chain(g1_pow, g0_pow, b.matrix(), j + 1, j);
  return out;
}

std::vector<double> cutoff_resolvent_gaps(const HermitianOperator& a0, const HermitianOperator& b,
                                          const std::vector<double>& levels, Complex z, int j) {
  const Matrix base = resolvent_power(a0, z, j);
  const Matrix full = resolvent_power(a0 + b, z, j) - base;
  std::vector<double> gaps;
  gaps.reserve(levels.size());
  for (double n : levels) {
    const HermitianOperator bn = reduce(b, cutoff(a0, n));
    const Matrix reduced = resolvent_power(a0 + bn, z, j) - base;
    gaps.push_back(schatten_norm(reduced - full, 1.0).value);
  }
  return gaps;
}

std::vector<InterpolationRow> interpolation_profile(const HermitianOperator& a0,
                                                    const HermitianOperator& b, int p) {
  if (p < 0) throw ParameterError("interpolation_profile: p must be nonnegative");
  const Complex mi(0.0, -1.0);  // (A0 + i)^{-k} = (A0 - (-i))^{-k}
  const double bnorm = operator_norm(b.matrix());
  const double top = schatten_norm(b.matrix() * resolvent_power(a0, mi, p + 1), 1.0).value;
  std::vector<InterpolationRow> rows;
  for (int j = 1; j <= p + 1; ++j) {
    const double q = static_cast<double>(p + 1) / j;
    InterpolationRow r;
    r.j = j;
    r.lhs = schatten_norm(b.matrix() * resolvent_power(a0, mi, j), q).value;
    // Log-convexity in 1/q: the trace-class end carries the weight j / (p + 1).
    r.rhs = std::pow(bnorm, static_cast<double>(p + 1 - j) / (p + 1)) *
            std::pow(top, static_cast<double>(j) / (p + 1));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ssflab
