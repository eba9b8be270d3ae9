#include "ssflab/doi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

double trace_of_function(const HermitianOperator& m, const ScalarFn& f) {
  double acc = 0.0;
  for (double l : m.eigenvalues()) acc += f(l);
  return acc;
}

double trace_derivative_times(const HermitianOperator& a, const Matrix& b, const ScalarFn& fp) {
  const Eigensystem& es = a.eig();
  double acc = 0.0;
  for (Index i = 0; i < es.values.size(); ++i)
    acc += fp(es.values(i)) * es.vectors.col(i).dot(b * es.vectors.col(i)).real();
  return acc;
}

}  // namespace

DoiKernel doi_kernel(const HermitianOperator& a, const HermitianOperator& b,
                     const DifferentiableFn& f) {
  if (a.dim() != b.dim()) throw DimensionError("doi_kernel: dimension mismatch");
  DoiKernel k;
  k.a_eigs = a.eigenvalues();
  k.b_eigs = b.eigenvalues();
  const double scale =
      std::max({1.0, k.a_eigs.cwiseAbs().maxCoeff(), k.b_eigs.cwiseAbs().maxCoeff()});
  k.delta = defaults::kCoincidenceScale * scale;
  k.kernel.resize(k.a_eigs.size(), k.b_eigs.size());
  for (Index i = 0; i < k.a_eigs.size(); ++i) {
    const double l = k.a_eigs(i);
    for (Index j = 0; j < k.b_eigs.size(); ++j) {
      const double m = k.b_eigs(j);
      k.kernel(i, j) = std::abs(l - m) > k.delta ? (f.value(l) - f.value(m)) / (l - m)
                                                 : f.derivative(0.5 * (l + m));
    }
  }
  return k;
}

Matrix doi_apply(const HermitianOperator& a, const HermitianOperator& b, const DifferentiableFn& f,
                 const Matrix& x) {
  if (x.rows() != a.dim() || x.cols() != b.dim())
    throw DimensionError("doi_apply: x has the wrong shape");
  const DoiKernel k = doi_kernel(a, b, f);
  const Matrix& u = a.eig().vectors;
  const Matrix& v = b.eig().vectors;
  const Matrix inner = (u.adjoint() * x * v).cwiseProduct(k.kernel.cast<Complex>());
  return u * inner * v.adjoint();
}

DkDerivative dk_derivative(const PerturbationPath& path, const DifferentiableFn& f, double s,
                           double eps) {
  if (!(eps > 0.0)) throw ParameterError("dk_derivative: eps must be positive");
  DkDerivative out;
  out.analytic = trace_derivative_times(path.straight_line(s), path.b_plus.matrix(), f.derivative);
  const double up = trace_of_function(path.straight_line(s + eps), f.value);
  const double down = trace_of_function(path.straight_line(s - eps), f.value);
  out.finite_difference = (up - down) / (2.0 * eps);
  out.residual = std::abs(out.analytic - out.finite_difference);
  return out;
}

double dk_integral_check(const PerturbationPath& path, const DifferentiableFn& f, int nodes) {
  if (nodes < 1) throw ParameterError("dk_integral_check: nodes must be positive");
  const double lhs =
      trace_of_function(path.a_plus(), f.value) - trace_of_function(path.a_minus, f.value);
  const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
  double rhs = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q)
    rhs += rule.weights[q] *
           trace_derivative_times(path.straight_line(rule.nodes[q]), path.b_plus.matrix(),
                                  f.derivative);
  return std::abs(lhs - rhs);
}

std::vector<double> doi_cutoff_gaps(const HermitianOperator& a0, const HermitianOperator& b,
                                    const std::vector<double>& levels, const DifferentiableFn& f) {
  const Matrix full = doi_apply(a0 + b, a0, f, b.matrix());
  std::vector<double> gaps;
  for (double n : levels) {
    const HermitianOperator bn = reduce(b, cutoff(a0, n));
    gaps.push_back(schatten_norm(doi_apply(a0 + bn, a0, f, bn.matrix()) - full, 1.0).value);
  }
  return gaps;
}

DifferentiableFn scalar_family(const std::string& name, double t) {
  if (name == "identity") return {[](double x) { return x; }, [](double) { return 1.0; }};
  if (name == "square") return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; }};
  if (name == "cube")
    return {[](double x) { return x * x * x; }, [](double x) { return 3.0 * x * x; }};
  if (name == "exp")
    return {[](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }};
  if (name == "gauss")
    return {[t](double x) { return std::exp(-t * x * x); },
            [t](double x) { return -2.0 * t * x * std::exp(-t * x * x); }};
  if (name == "erf") {
    const double st = std::sqrt(t);
    return {[st](double x) { return std::erf(st * x); },
            [st](double x) {
              return 2.0 * st / std::sqrt(std::numbers::pi) * std::exp(-st * st * x * x);
            }};
  }
  throw ParameterError("unknown scalar family '" + name + "'");
}

}  // namespace ssflab
