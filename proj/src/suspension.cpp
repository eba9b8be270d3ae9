#include "ssflab/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssflab {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void add_block(std::vector<Triplet>& out, Index row0, Index col0, const Matrix& block) {
  for (Index j = 0; j < block.cols(); ++j)
    for (Index i = 0; i < block.rows(); ++i)
      if (block(i, j) != Complex(0.0)) out.emplace_back(row0 + i, col0 + j, block(i, j));
}

void check_saturation(const TimeGrid& grid, const ProfileFunction& profile, double tol) {
  const double left = std::abs(profile.value(-grid.half_width));
  const double right = std::abs(profile.value(grid.half_width) - 1.0);
  if (left > tol || right > tol) {
    std::ostringstream os;
    os << "profile is not saturated on [-T, T] (|theta(-T)| = " << left
       << ", |theta(T) - 1| = " << right << ", tolerance " << tol
       << "); raise the half-width T or lower the profile scale";
    throw ConfigError(os.str());
  }
}

}  // namespace

TimeGrid make_grid(double half_width, Index points) {
  if (!(half_width > 0.0)) throw ParameterError("time grid half-width must be positive");
  if (points < 3 || points % 2 == 0)
    throw ParameterError("time grid needs an odd number of points >= 3");
  TimeGrid g;
  g.half_width = half_width;
  g.points = points;
  g.step = 2.0 * half_width / static_cast<double>(points - 1);
  g.nodes.resize(points);
  const Index mid = (points - 1) / 2;
  for (Index i = 0; i < points; ++i) g.nodes[i] = static_cast<double>(i - mid) * g.step;
  g.nodes.front() = -half_width;
  g.nodes.back() = half_width;
  return g;
}

TimeGrid TimeGrid::refined() const { return make_grid(half_width, 2 * points - 1); }

RealMatrix build_ddt(const TimeGrid& grid) {
  const Index n = grid.points;
  RealMatrix m = RealMatrix::Zero(n, n);
  const double c = 1.0 / (2.0 * grid.step);
  for (Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = c;
    m(i + 1, i) = -c;
  }
  return m;
}

RealMatrix build_forward_difference(const TimeGrid& grid) {
  const Index n = grid.points;
  RealMatrix m = RealMatrix::Zero(n - 1, n);
  for (Index i = 0; i + 1 < n; ++i) {
    m(i, i) = -1.0 / grid.step;
    m(i, i + 1) = 1.0 / grid.step;
  }
  return m;
}

RealMatrix build_midpoint_average(const TimeGrid& grid) {
  const Index n = grid.points;
  RealMatrix m = RealMatrix::Zero(n - 1, n);
  for (Index i = 0; i + 1 < n; ++i) {
    m(i, i) = 0.5;
    m(i, i + 1) = 0.5;
  }
  return m;
}

RealVector cell_window(const std::vector<double>& points, double half_width, double h) {
  RealVector w(static_cast<Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i)
    w(static_cast<Index>(i)) =
        std::clamp((half_width - std::abs(points[i])) / h + 0.5, 0.0, 1.0);
  return w;
}

RealVector window_mass(const Matrix& vectors, const RealVector& chi) {
  RealVector mass(vectors.cols());
  for (Index j = 0; j < vectors.cols(); ++j) {
    double acc = 0.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      if (chi(i) != 0.0) acc += chi(i) * std::norm(vectors(i, j));
    }
    mass(j) = acc;
  }
  return mass;
}

SuspensionPair assemble(const TimeGrid& grid, const PerturbationPath& path,
                        const SuspensionOptions& options) {
  check_saturation(grid, path.profile, options.saturation_tolerance);
  if (!(options.window_fraction > 0.0 && options.window_fraction < 1.0))
    throw ConfigError("window_fraction must lie in (0, 1)");

  auto state = std::make_shared<SuspensionPair::State>(grid, path, options);
  const Index n = grid.points;
  const Index k = path.dim();
  const double h = grid.step;
  if (n * k > defaults::kMaxSuspensionDimension) {
    std::ostringstream os;
    os << "suspension dimension " << n * k << " exceeds the dense cap "
       << defaults::kMaxSuspensionDimension << "; lower N or the internal dimension";
    throw ConfigError(os.str());
  }

  std::vector<Matrix> a(n);
  for (Index i = 0; i < n; ++i)
    a[i] = path.a_minus.matrix() + path.profile.value(grid.nodes[i]) * path.b_plus.matrix();
  const Matrix id = Matrix::Identity(k, k);

  std::vector<Triplet> trips;
  if (options.scheme == Scheme::Central) {
    const double c = 1.0 / (2.0 * h);
    for (Index i = 0; i < n; ++i) {
      add_block(trips, i * k, i * k, a[i]);
      if (i + 1 < n) add_block(trips, i * k, (i + 1) * k, c * id);
      if (i > 0) add_block(trips, i * k, (i - 1) * k, -c * id);
    }
    SparseMatrix d(n * k, n * k);
    d.setFromTriplets(trips.begin(), trips.end());
    state->d = std::move(d);
    for (Index i = 0; i < n; ++i)
      for (Index c2 = 0; c2 < k; ++c2) state->domain_times.push_back(grid.nodes[i]);
    state->range_times = state->domain_times;
  } else {
    for (Index i = 0; i + 1 < n; ++i) {
      add_block(trips, i * k, i * k, Matrix(-id / h + 0.5 * a[i]));
      add_block(trips, i * k, (i + 1) * k, Matrix(id / h + 0.5 * a[i + 1]));
    }
    SparseMatrix full((n - 1) * k, n * k);
    full.setFromTriplets(trips.begin(), trips.end());

    // Trial space: interior nodes unrestricted, boundary nodes restricted
    // to the nonpositive (left) / nonnegative (right) spectral subspace.
    const Eigensystem left = eigh_uncached(a.front(), false, true);
    const Eigensystem right = eigh_uncached(a.back(), false, true);
    std::vector<Index> keep_left, keep_right;
    for (Index c2 = 0; c2 < k; ++c2) {
      if (left.values(c2) <= options.endpoint_zero_tolerance) keep_left.push_back(c2);
      if (right.values(c2) >= -options.endpoint_zero_tolerance) keep_right.push_back(c2);
    }
    const Index n_dom = (n - 2) * k + static_cast<Index>(keep_left.size() + keep_right.size());
    std::vector<Triplet> emb;
    Index col = 0;
    for (Index c2 : keep_left) {
      for (Index r = 0; r < k; ++r) emb.emplace_back(r, col, left.vectors(r, c2));
      state->domain_times.push_back(grid.nodes.front());
      ++col;
    }
    for (Index i = 1; i + 1 < n; ++i) {
      for (Index r = 0; r < k; ++r) {
        emb.emplace_back(i * k + r, col, Complex(1.0));
        state->domain_times.push_back(grid.nodes[i]);
        ++col;
      }
    }
    for (Index c2 : keep_right) {
      for (Index r = 0; r < k; ++r) emb.emplace_back((n - 1) * k + r, col, right.vectors(r, c2));
      state->domain_times.push_back(grid.nodes.back());
      ++col;
    }
    SparseMatrix e(n * k, n_dom);
    e.setFromTriplets(emb.begin(), emb.end());
    state->d = (full * e).pruned();
    for (Index i = 0; i + 1 < n; ++i)
      for (Index r = 0; r < k; ++r)
        state->range_times.push_back(0.5 * (grid.nodes[i] + grid.nodes[i + 1]));
  }

  const SparseMatrix dh = state->d.adjoint();
  state->h1 = HermitianOperator(Matrix(Matrix(dh * state->d)));
  state->h2 = HermitianOperator(Matrix(Matrix(state->d * dh)));

  state->window = options.window_fraction * grid.half_width;
  state->domain_window = cell_window(state->domain_times, state->window, h);
  state->range_window = cell_window(state->range_times, state->window, h);
  return SuspensionPair(std::move(state));
}

const LocalizedSpectrum& SuspensionPair::local_h1() const {
  std::call_once(state_->local1_once, [this] {
    const Eigensystem& es = state_->h1.eig();
    state_->local1 = {es.values, window_mass(es.vectors, state_->domain_window)};
  });
  return state_->local1;
}

const LocalizedSpectrum& SuspensionPair::local_h2() const {
  std::call_once(state_->local2_once, [this] {
    const Eigensystem& es = state_->h2.eig();
    state_->local2 = {es.values, window_mass(es.vectors, state_->range_window)};
  });
  return state_->local2;
}

namespace {

template <typename F>
double localized_gap(const SuspensionPair& pair, F&& f) {
  const LocalizedSpectrum& s1 = pair.local_h1();
  const LocalizedSpectrum& s2 = pair.local_h2();
  double acc2 = 0.0;
  for (Index i = 0; i < s2.values.size(); ++i) acc2 += s2.weights(i) * f(s2.values(i));
  double acc1 = 0.0;
  for (Index i = 0; i < s1.values.size(); ++i) acc1 += s1.weights(i) * f(s1.values(i));
  return acc2 - acc1;
}

}  // namespace

double heat_trace_gap(const SuspensionPair& pair, double t) {
  if (!(t > 0.0)) throw ParameterError("heat_trace_gap: t must be positive");
  return localized_gap(pair, [t](double lam) { return std::exp(-t * std::max(lam, 0.0)); });
}

double global_heat_trace_gap(const SuspensionPair& pair, double t) {
  if (!(t > 0.0)) throw ParameterError("global_heat_trace_gap: t must be positive");
  const RealVector& e1 = pair.h1().eigenvalues();
  const RealVector& e2 = pair.h2().eigenvalues();
  double acc = 0.0;
  for (Index i = 0; i < e2.size(); ++i) acc += std::exp(-t * std::max(e2(i), 0.0));
  for (Index i = 0; i < e1.size(); ++i) acc -= std::exp(-t * std::max(e1(i), 0.0));
  return acc;
}

double resolvent_trace_gap(const SuspensionPair& pair, double z, int k) {
  if (!(z < 0.0)) throw ParameterError("resolvent_trace_gap: z must be negative");
  if (k < 1) throw ParameterError("resolvent_trace_gap: k must be positive");
  return localized_gap(pair,
                       [z, k](double lam) { return std::pow(std::max(lam, 0.0) - z, -k); });
}

}  // namespace ssflab
