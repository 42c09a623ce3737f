#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace diraclab {

using complex = std::complex<double>;
using cmatrix = Eigen::MatrixXcd;
using cvector = Eigen::VectorXcd;
using rmatrix = Eigen::MatrixXd;
using rvector = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// error hierarchy

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

// Thrown when the single-particle spectrum has a level inside the zero window
// and the filled-sea construction is ambiguous.
struct ZeroModeError : Error {
  using Error::Error;
};

// Thrown when a construction degenerates (e.g. a gauge function built from an
// identically vanishing current divergence).
struct DegenerateInputError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// numeric helpers

inline double frobenius(const cmatrix& m) { return m.norm(); }

/// Relative Frobenius distance from Hermiticity.
inline double hermiticity_error(const cmatrix& m) {
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() / scale;
}

inline void require_square(const cmatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
}

/// Shortest-width decimal with 17 significant digits; round-trips doubles and
/// keeps report files byte-stable.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// deterministic random streams

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded generator. Gaussian variates come from an explicit Box-Muller so the
/// stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  /// Independent child stream; `tag` distinguishes siblings.
  Rng substream(std::uint64_t tag) const { return Rng(splitmix64(seed_ ^ splitmix64(tag + 0x51ed270b)) ); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace diraclab
