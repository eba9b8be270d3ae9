#pragma once

#include <functional>
#include <vector>

namespace ssflab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

double integrate(const std::function<double(double)>& f, const QuadratureRule& rule);

/// Adaptive Gauss-Kronrod (15 point) on a finite interval.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tolerance = 1e-12);

}  // namespace ssflab
