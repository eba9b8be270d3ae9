#pragma once

// Named models with frozen definitions and a portable seeded generator for
// random Hermitian data (identical streams on every platform).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ssflab/linalg.hpp"
#include "ssflab/models.hpp"

namespace ssflab {

namespace defaults {
inline constexpr std::uint64_t kSeed = 20240611;
}  // namespace defaults

/// mt19937_64 with explicit bit-to-double conversions. std::uniform_real_distribution
/// and std::normal_distribution are implementation-defined, so they are not used.
class Rng {
public:
  explicit Rng(std::uint64_t seed = defaults::kSeed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  /// Standard normal by Box-Muller.
  double normal();

private:
  std::mt19937_64 engine_;
};

Matrix random_matrix(Index rows, Index cols, Rng& rng, bool real = false);

/// (G + G^H)/2 scaled so that the operator norm is `scale`.
HermitianOperator random_hermitian(Index n, Rng& rng, double scale = 1.0, bool real = false);

/// Haar-like unitary from the QR factorization of a Gaussian matrix.
Matrix random_unitary(Index n, Rng& rng);

/// U diag(lambda) U^H with |lambda_i| in [gap, 1 + gap] and random signs.
HermitianOperator random_gapped_hermitian(Index n, Rng& rng, double gap);

struct Fixture {
  std::string name;
  std::string description;
  PerturbationPath path;
  double half_width;
  Index points;
};

/// FIX-SCALAR, FIX-SCALAR-REVERSED, FIX-ZERO, FIX-DIAG2, FIX-NONCOMM2,
/// FIX-GAPPED-ZERO-FLOW, FIX-HALFCROSS, FIX-RAND8 (seeded).
Fixture fixture(const std::string& name, std::uint64_t seed = defaults::kSeed);
std::vector<std::string> fixture_names();

}  // namespace ssflab
