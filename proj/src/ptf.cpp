#include "ssflab/ptf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

// tr(f(A) B) = sum_i f(lambda_i) (U^H B U)_ii
double trace_function_times(const Matrix& a, const Matrix& b, bool real, const ScalarFn& f) {
  const Eigensystem es = eigh_uncached(a, real, true);
  double acc = 0.0;
  for (Index i = 0; i < es.values.size(); ++i) {
    const Complex bii = es.vectors.col(i).dot(b * es.vectors.col(i));
    acc += f(es.values(i)) * bii.real();
  }
  return acc;
}

}  // namespace

double rhs_quadrature(const PerturbationPath& path, double t, int nodes) {
  if (!(t > 0.0)) throw ParameterError("rhs_quadrature: t must be positive");
  if (nodes < 4) throw ParameterError("rhs_quadrature: at least 4 nodes are required");
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  const Matrix& am = path.a_minus.matrix();
  const Matrix& b = path.b_plus.matrix();
  const bool real = path.a_minus.is_real() && path.b_plus.is_real();
  const auto gauss = [t](double x) { return std::exp(-t * x * x); };
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    acc += rule.weights[q] * trace_function_times(am + rule.nodes[q] * b, b, real, gauss);
  return -std::sqrt(t / std::numbers::pi) * acc;
}

double rhs_erf(const PerturbationPath& path, double t) {
  if (!(t > 0.0)) throw ParameterError("rhs_erf: t must be positive");
  const double st = std::sqrt(t);
  const HermitianOperator a_plus = path.a_plus();
  const RealVector& plus = a_plus.eigenvalues();
  const RealVector& minus = path.a_minus.eigenvalues();
  double acc = 0.0;
  for (Index i = 0; i < plus.size(); ++i) acc += std::erf(st * plus(i)) - std::erf(st * minus(i));
  return -0.5 * acc;
}

bool PtfReport::quadrature_ok(double tolerance) const {
  for (double r : residual_quad)
    if (!(r <= tolerance)) return false;
  return true;
}

PtfReport verify(const SuspensionPair& pair, const std::vector<double>& t_values,
                 const PtfOptions& options) {
  for (double t : t_values) {
    if (!(t >= options.t_min && t <= options.t_max)) {
      std::ostringstream os;
      os << "t = " << t << " is outside the validity window [" << options.t_min << ", "
         << options.t_max << "] of the discretized heat trace";
      throw ParameterError(os.str());
    }
  }
  PtfReport r;
  r.points = pair.grid().points;
  r.t_values = t_values;
  for (double t : t_values) {
    const double lhs = heat_trace_gap(pair, t);
    const double quad = rhs_quadrature(pair.path(), t, options.nodes);
    const double erf_side = rhs_erf(pair.path(), t);
    r.lhs.push_back(lhs);
    r.rhs_quadrature.push_back(quad);
    r.rhs_erf.push_back(erf_side);
    r.residual_lr.push_back(std::abs(lhs - erf_side));
    r.residual_quad.push_back(std::abs(quad - erf_side));
  }
  if (options.refine) {
    const SuspensionPair fine = assemble(pair.grid().refined(), pair.path(), pair.options());
    PtfRefinement ref;
    ref.points = fine.grid().points;
    for (std::size_t i = 0; i < t_values.size(); ++i) {
      const double lhs = heat_trace_gap(fine, t_values[i]);
      const double res = std::abs(lhs - r.rhs_erf[i]);
      ref.lhs.push_back(lhs);
      ref.residual_lr.push_back(res);
      ref.ratio.push_back(r.residual_lr[i] / res);
    }
    r.refinement = std::move(ref);
  }
  return r;
}

}  // namespace ssflab
