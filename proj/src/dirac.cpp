#include "ssflab/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ssflab/quadrature.hpp"

namespace ssflab {

namespace {

const Complex I(0.0, 1.0);

Matrix pauli(int which) {
  Matrix s = Matrix::Zero(2, 2);
  switch (which) {
    case 1:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case 2:
      s(0, 1) = -I;
      s(1, 0) = I;
      break;
    default:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Index ipow(Index base, int e) {
  Index r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Row-major multi-index of a flat index.
std::vector<Index> unflatten(Index flat, Index m, int d) {
  std::vector<Index> idx(static_cast<std::size_t>(d));
  for (int a = d - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = flat % m;
    flat /= m;
  }
  return idx;
}

double spectral_ratio(double coarse, double fine) {
  if (coarse == 0.0 && fine == 0.0) return 1.0;
  return fine / coarse;
}

}  // namespace

CliffordSet clifford(int d) {
  if (d < 1 || d > defaults::kCliffordMaxDimension)
    throw ParameterError("clifford: d must lie in [1, 8]");
  CliffordSet s;
  if (d % 2 == 1) {
    s.gammas = {pauli(3), pauli(1)};
    s.d = 1;
  } else {
    s.gammas = {pauli(3), pauli(1), pauli(2)};
    s.d = 2;
  }
  while (s.d < d) {
    const Index n = s.gammas.front().rows();
    const Matrix id = Matrix::Identity(n, n);
    CliffordSet next;
    next.d = s.d + 2;
    next.gammas.push_back(kron(id, pauli(3)));
    for (int k = 1; k <= s.d; ++k) next.gammas.push_back(kron(s.gammas[static_cast<std::size_t>(k)], pauli(1)));
    next.gammas.push_back(kron(s.gammas.front(), pauli(1)));
    next.gammas.push_back(kron(id, pauli(2)));
    s = std::move(next);
  }
  s.size = s.gammas.front().rows();
  return s;
}

bool clifford_relations_exact(const CliffordSet& set) {
  const Index n = set.size;
  const Matrix id = Matrix::Identity(n, n);
  for (std::size_t j = 0; j < set.gammas.size(); ++j) {
    const Matrix& g = set.gammas[j];
    if (g != Matrix(g.adjoint())) return false;
    if (Matrix(g * g) != id) return false;
    for (std::size_t k = j + 1; k < set.gammas.size(); ++k) {
      const Matrix& h = set.gammas[k];
      if (Matrix(g * h + h * g) != Matrix::Zero(n, n)) return false;
    }
  }
  return true;
}

HermitianOperator DiracModel::total() const { return potential ? free + *potential : free; }

DiracModel build_dirac(int d, double mass, double box, Index modes, const PotentialFn& potential) {
  if (!(mass >= 0.0)) throw ParameterError("build_dirac: mass must be nonnegative");
  if (!(box > 0.0)) throw ParameterError("build_dirac: box length must be positive");
  if (modes < 3 || modes % 2 == 0) throw ParameterError("build_dirac: modes per axis must be odd and >= 3");
  DiracModel model;
  model.d = d;
  model.mass = mass;
  model.box = box;
  model.modes = modes;
  model.clifford = clifford(d);
  model.potential_fn = potential;
  const Index n = model.clifford.size;
  const Index count = ipow(modes, d);
  if (count * n > defaults::kDiracMaxDimension) {
    std::ostringstream os;
    os << "build_dirac: dimension " << count * n << " exceeds the cap "
       << defaults::kDiracMaxDimension;
    throw ParameterError(os.str());
  }
  const double half = 0.5 * static_cast<double>(modes - 1);
  const double dk = 2.0 * std::numbers::pi / box;
  const double dx = box / static_cast<double>(modes);
  for (Index f = 0; f < count; ++f) {
    const std::vector<Index> idx = unflatten(f, modes, d);
    std::vector<double> kap, pos;
    for (Index i : idx) {
      kap.push_back(dk * (static_cast<double>(i) - half));
      pos.push_back(dx * (static_cast<double>(i) - half));
    }
    model.momenta.push_back(std::move(kap));
    model.positions.push_back(std::move(pos));
  }

  Matrix dfree = Matrix::Zero(count * n, count * n);
  for (Index f = 0; f < count; ++f) {
    Matrix block = mass * model.clifford.gammas[0];
    for (int a = 0; a < d; ++a)
      block += model.momenta[static_cast<std::size_t>(f)][static_cast<std::size_t>(a)] *
               model.clifford.gammas[static_cast<std::size_t>(a + 1)];
    dfree.block(f * n, f * n, n, n) = block;
  }
  model.free = HermitianOperator(dfree);

  if (potential) {
    std::vector<Matrix> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (const auto& x : model.positions) {
      Matrix v = potential(x);
      if (v.rows() != n || v.cols() != n)
        throw DimensionError("build_dirac: potential sample has the wrong size");
      const double defect = (v - v.adjoint()).norm() / (1.0 + v.norm());
      if (defect > defaults::kHermitianRejectTolerance) {
        std::ostringstream os;
        os << "build_dirac: the potential must be a Hermitian matrix of functions (defect "
           << defect << ")";
        throw ContractError(os.str());
      }
      samples.push_back(std::move(v));
    }
    // Unitary DFT F(kappa, x) = exp(-i kappa . x) / sqrt(M^d).
    Matrix fmat(count, count);
    const double norm = 1.0 / std::sqrt(static_cast<double>(count));
    for (Index r = 0; r < count; ++r)
      for (Index c = 0; c < count; ++c) {
        double phase = 0.0;
        for (int a = 0; a < d; ++a)
          phase += model.momenta[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)] *
                   model.positions[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
        fmat(r, c) = std::polar(norm, -phase);
      }
    Matrix vhat = Matrix::Zero(count * n, count * n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        Eigen::VectorXcd diag(count);
        bool any = false;
        for (Index x = 0; x < count; ++x) {
          diag(x) = samples[static_cast<std::size_t>(x)](a, b);
          any = any || diag(x) != Complex(0.0);
        }
        if (!any) continue;
        const Matrix block = fmat * diag.asDiagonal() * fmat.adjoint();
        for (Index r = 0; r < count; ++r)
          for (Index c = 0; c < count; ++c) vhat(r * n + a, c * n + b) = block(r, c);
      }
    model.potential = HermitianOperator(vhat);
  }
  return model;
}

RealVector free_dirac_spectrum(int d, double mass, double box, Index modes) {
  const Index n = ipow(2, (d + 1) / 2);
  const Index count = ipow(modes, d);
  const double half = 0.5 * static_cast<double>(modes - 1);
  const double dk = 2.0 * std::numbers::pi / box;
  std::vector<double> ev;
  for (Index f = 0; f < count; ++f) {
    double k2 = mass * mass;
    for (Index i : unflatten(f, modes, d)) {
      const double k = dk * (static_cast<double>(i) - half);
      k2 += k * k;
    }
    const double e = std::sqrt(k2);
    for (Index c = 0; c < n / 2; ++c) {
      ev.push_back(e);
      ev.push_back(-e);
    }
  }
  std::sort(ev.begin(), ev.end());
  return Eigen::Map<RealVector>(ev.data(), static_cast<Index>(ev.size()));
}

Matrix chiral_operator(const DiracModel& model) {
  const Index count = model.dim() / model.clifford.size;
  return kron(Matrix::Identity(count, count), model.clifford.gammas[0]);
}

PotentialFn make_potential(const std::string& name, const CliffordSet& set, double amplitude,
                           double width) {
  if (!(width > 0.0)) throw ParameterError("make_potential: width must be positive");
  const Index n = set.size;
  const auto r2 = [](const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  if (name == "zero") return [n](const std::vector<double>&) { return Matrix(Matrix::Zero(n, n)); };
  if (name == "gaussian")
    return [=](const std::vector<double>& x) {
      return Matrix(amplitude * std::exp(-r2(x) / (width * width)) * Matrix::Identity(n, n));
    };
  if (name == "sharp")
    return [=](const std::vector<double>& x) {
      double m = 0.0;
      for (double v : x) m = std::max(m, std::abs(v));
      return Matrix((m <= width ? amplitude : 0.0) * Matrix::Identity(n, n));
    };
  if (name == "magnetic") {
    if (set.d != 3) throw ParameterError("make_potential: the magnetic potential needs d = 3");
    return [=](const std::vector<double>& x) {
      const double g = amplitude * std::exp(-r2(x) / (width * width));
      return Matrix(-g * x[1] * set.gammas[1] + g * x[0] * set.gammas[2]);
    };
  }
  throw ParameterError("unknown potential '" + name +
                       "' (expected zero, gaussian, sharp or magnetic)");
}

L1L2Report l1l2_norm(const std::function<double(const std::vector<double>&)>& f, int d,
                     int radius, int order, std::optional<double> tail_bound) {
  if (d < 1) throw ParameterError("l1l2_norm: d must be positive");
  if (radius < 0) throw ParameterError("l1l2_norm: radius must be nonnegative");
  const QuadratureRule rule = gauss_legendre(order, -0.5, 0.5);
  const Index side = 2 * radius + 1;
  const Index ncubes = ipow(side, d);
  const Index npts = ipow(order, d);
  L1L2Report rep;
  rep.cubes = ncubes;
  double shell = 0.0;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (Index c = 0; c < ncubes; ++c) {
    const std::vector<Index> cube = unflatten(c, side, d);
    bool outer = false;
    for (Index v : cube) outer = outer || v == 0 || v == side - 1;
    double mass = 0.0;
    for (Index q = 0; q < npts; ++q) {
      const std::vector<Index> node = unflatten(q, order, d);
      double w = 1.0;
      for (int a = 0; a < d; ++a) {
        const auto na = static_cast<std::size_t>(node[static_cast<std::size_t>(a)]);
        x[static_cast<std::size_t>(a)] =
            static_cast<double>(cube[static_cast<std::size_t>(a)] - radius) + rule.nodes[na];
        w *= rule.weights[na];
      }
      const double v = f(x);
      mass += w * v * v;
    }
    const double norm = std::sqrt(mass);
    rep.value += norm;
    if (outer && radius > 0) shell += norm;
  }
  if (tail_bound) {
    rep.tail = *tail_bound;
  } else {
    if (radius == 0 || shell > 1e-8 * rep.value) {
      throw ContractError(
          "l1l2_norm: the samples do not decay over the outermost shell of cubes; "
          "enlarge the radius or provide a tail bound");
    }
    rep.tail = shell;
  }
  return rep;
}

bool HypothesisReport::schatten_stable(double lo, double hi) const {
  for (double r : schatten_ratio)
    if (!(r >= lo && r <= hi)) return false;
  return true;
}

namespace {

void profile(const DiracModel& model, int p, std::vector<double>& schatten,
             std::vector<double>& commutator) {
  const Index dim = model.dim();
  const Matrix v = model.potential ? model.potential->matrix() : Matrix(Matrix::Zero(dim, dim));
  for (int j = 1; j <= p + 1; ++j) {
    const Matrix r = resolvent_power(model.free, Complex(0.0, -1.0), j);
    schatten.push_back(schatten_norm(v * r, static_cast<double>(p + 1) / j).value);
  }
  const Matrix d2 = model.free.matrix() * model.free.matrix();
  Matrix c = v;
  for (int k = 1; k <= 2 * p; ++k) {
    c = d2 * c - c * d2;
    const Matrix weight =
        apply_function(model.free, [k](double l) { return std::pow(1.0 + l * l, -0.5 * k); });
    commutator.push_back(operator_norm(weight * c));
  }
}

}  // namespace

HypothesisReport hypothesis_diagnostics(const DiracModel& model, int p) {
  if (p < 1) throw ParameterError("hypothesis_diagnostics: p must be positive");
  HypothesisReport rep;
  rep.p = p;
  rep.coarse_modes = model.modes;
  rep.fine_modes = 2 * model.modes + 1;
  const DiracModel fine =
      build_dirac(model.d, model.mass, model.box, rep.fine_modes, model.potential_fn);
  profile(model, p, rep.schatten_coarse, rep.commutator_coarse);
  profile(fine, p, rep.schatten_fine, rep.commutator_fine);
  for (std::size_t i = 0; i < rep.schatten_coarse.size(); ++i)
    rep.schatten_ratio.push_back(spectral_ratio(rep.schatten_coarse[i], rep.schatten_fine[i]));
  for (std::size_t i = 0; i < rep.commutator_coarse.size(); ++i)
    rep.commutator_ratio.push_back(
        spectral_ratio(rep.commutator_coarse[i], rep.commutator_fine[i]));
  return rep;
}

}  // namespace ssflab
