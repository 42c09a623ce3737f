#pragma once

// Gaussian (free-fermion) states as one-body correlation matrices
// C_ij = <psi_j^dagger psi_i>, with the filled-sea vacuum, normal-ordered
// energies, excitations and exact time evolution.
//
// Normal ordering is fixed once, in the free theory: observables subtract
// their expectation in the filled negative-energy sea P_minus, so the vacuum
// reads exactly zero.

#include <optional>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "diraclab/common.hpp"
#include "diraclab/lattice.hpp"

namespace diraclab {

struct CorrelationState {
  cmatrix corr;
  std::string label;

  int dim() const { return static_cast<int>(corr.rows()); }
};

/// The filled-sea reference: spectral projector of h0 onto negative levels
/// and the raw (un-ordered) energy of the sea.
struct VacuumReference {
  cmatrix projector;
  double vacuum_energy_raw = 0.0;

  int dim() const { return static_cast<int>(projector.rows()); }
  int rank() const { return static_cast<int>(std::lround(projector.trace().real())); }
};

struct SpectralDecomposition {
  rvector eigenvalues;  // ascending
  cmatrix eigenvectors; // columns
};

inline SpectralDecomposition decompose(const SingleParticleOperator& op) {
  require_square(op.kernel, "decompose");
  Eigen::SelfAdjointEigenSolver<cmatrix> solver(op.kernel);
  if (solver.info() != Eigen::Success)
    throw Error("decompose: eigensolver failed on kernel '" + op.label + "'");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// ---------------------------------------------------------------------------
// vacuum and energies

/// Fill the negative-energy sea of h0.  Refuses kernels with a level inside
/// (-tol_zero, +tol_zero): the sea is ambiguous there and silently
/// tie-breaking would corrupt every downstream identity.
inline std::pair<VacuumReference, CorrelationState> build_vacuum(
    const SingleParticleOperator& h0, double tol_zero = 1e-9) {
  if (hermiticity_error(h0.kernel) > 1e-12)
    throw InvalidArgumentError("build_vacuum: kernel '" + h0.label + "' is not Hermitian");
  const SpectralDecomposition sd = decompose(h0);
  const int dim = static_cast<int>(sd.eigenvalues.size());
  double raw = 0.0;
  int n_neg = 0;
  for (int i = 0; i < dim; ++i) {
    const double e = sd.eigenvalues[i];
    if (std::abs(e) < tol_zero)
      throw ZeroModeError(
          "build_vacuum: eigenvalue " + format_g17(e) +
          " lies inside the zero window; the filled sea is ambiguous. "
          "Use a mass m > 0 (or an antiperiodic-style momentum offset) so the "
          "spectrum is gapped.");
    if (e < 0.0) {
      raw += e;
      ++n_neg;
    }
  }
  const cmatrix neg = sd.eigenvectors.leftCols(n_neg);  // ascending order: negatives first
  cmatrix p = neg * neg.adjoint();
  p = ((p + p.adjoint()) * 0.5).eval();
  VacuumReference vac{p, raw};
  CorrelationState state{std::move(p), "vacuum"};
  return {std::move(vac), std::move(state)};
}

/// Tr(M (C - R)): expectation of a bilinear kernel relative to a reference
/// projector.  The difference is formed first; the large sea contributions
/// never appear explicitly.
inline double energy_relative(const CorrelationState& state, const SingleParticleOperator& op,
                              const cmatrix& reference) {
  require_same_dim(state.corr.rows(), op.kernel.rows(), "energy_relative");
  require_same_dim(state.corr.rows(), reference.rows(), "energy_relative");
  return (op.kernel * (state.corr - reference)).trace().real();
}

/// Normal-ordered free-field energy <Omega| :H0: |Omega>.
inline double free_energy(const CorrelationState& state, const SingleParticleOperator& h0,
                          const VacuumReference& vac) {
  return energy_relative(state, h0, vac.projector);
}

/// Energy in a static potential, normal-ordered against the free vacuum.
inline double energy_with_potential(const CorrelationState& state,
                                    const SingleParticleOperator& h_coupled,
                                    const VacuumReference& vac) {
  return energy_relative(state, h_coupled, vac.projector);
}

inline double expectation(const SingleParticleOperator& kernel, const CorrelationState& state,
                          const VacuumReference& vac, bool normal_ordered) {
  require_same_dim(state.corr.rows(), kernel.kernel.rows(), "expectation");
  if (normal_ordered) return energy_relative(state, kernel, vac.projector);
  return (kernel.kernel * state.corr).trace().real();
}

// ---------------------------------------------------------------------------
// state constructions

/// ||C^2 - C||, zero for pure Gaussian states.
inline double purity_error(const CorrelationState& state) {
  return (state.corr * state.corr - state.corr).norm();
}

/// Check the correlation-matrix invariants; returns a description of the
/// first violation instead of throwing, so validation failures can be
/// reported as check results.
inline std::optional<std::string> state_invariant_violation(const CorrelationState& state) {
  if (state.corr.rows() != state.corr.cols()) return "correlation matrix is not square";
  const double herm = hermiticity_error(state.corr);
  if (herm > 1e-12) return "hermiticity error " + format_g17(herm) + " exceeds 1e-12";
  Eigen::SelfAdjointEigenSolver<cmatrix> solver(state.corr);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo < -1e-10) return "occupation eigenvalue " + format_g17(lo) + " below 0";
  if (hi > 1.0 + 1e-10) return "occupation eigenvalue " + format_g17(hi) + " above 1";
  return std::nullopt;
}

/// Add a particle in `creator` and/or a hole in `annihilator`.  Modes must be
/// unit vectors lying in the unoccupied / occupied subspace of the (pure)
/// input state.
inline CorrelationState excite(const CorrelationState& state,
                               const std::optional<cvector>& creator,
                               const std::optional<cvector>& annihilator,
                               double tol = 1e-8) {
  cmatrix c = state.corr;
  if (creator) {
    const cvector& u = *creator;
    require_same_dim(u.size(), c.rows(), "excite(creator)");
    if (std::abs(u.norm() - 1.0) > 1e-10)
      throw InvalidArgumentError("excite: creator mode is not normalized");
    if ((c * u).norm() > tol)
      throw InvalidArgumentError("excite: creator mode is not in the unoccupied subspace");
    c += u * u.adjoint();
  }
  if (annihilator) {
    const cvector& w = *annihilator;
    require_same_dim(w.size(), c.rows(), "excite(annihilator)");
    if (std::abs(w.norm() - 1.0) > 1e-10)
      throw InvalidArgumentError("excite: annihilator mode is not normalized");
    if ((state.corr * w - w).norm() > tol)
      throw InvalidArgumentError("excite: annihilator mode is not in the occupied subspace");
    if (creator && std::abs(creator->dot(w)) > 1e-10)
      throw InvalidArgumentError("excite: creator and annihilator modes are not orthogonal");
    c -= w * w.adjoint();
  }
  return {std::move(c), state.label + "+excitation"};
}

/// C(t) = exp(-i h t) C exp(+i h t) through the spectral decomposition of h.
inline CorrelationState evolve(const CorrelationState& state, const SingleParticleOperator& h,
                               double t) {
  require_same_dim(state.corr.rows(), h.kernel.rows(), "evolve");
  if (hermiticity_error(h.kernel) > 1e-12)
    throw InvalidArgumentError("evolve: kernel '" + h.label + "' is not Hermitian");
  if (t == 0.0) return state;
  const SpectralDecomposition sd = decompose(h);
  cvector phases(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases[i] = std::exp(complex(0, -sd.eigenvalues[i] * t));
  const cmatrix w = sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
  return {w * state.corr * w.adjoint(), state.label};
}

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase
/// convention fixed by the R diagonal).
inline cmatrix haar_unitary(int dim, Rng& rng) {
  cmatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<cmatrix> qr(g);
  cmatrix q = qr.householderQ();
  const cmatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const complex d = r(j, j);
    const complex phase = std::abs(d) > 0 ? d / std::abs(d) : complex(1, 0);
    q.col(j) *= phase;
  }
  return q;
}

/// Random pure Gaussian state: a Haar rotation of the filled sea.
inline CorrelationState random_pure_state(const VacuumReference& vac, Rng& rng) {
  const cmatrix u = haar_unitary(vac.dim(), rng);
  cmatrix c = u * vac.projector * u.adjoint();
  c = ((c + c.adjoint()) * 0.5).eval();
  return {std::move(c), "random"};
}

/// Positive-energy single-particle wavepacket: Gaussian envelope around
/// `center` with mean momentum `momentum`, projected onto the unoccupied
/// (positive-energy) subspace of the vacuum and normalized.
inline cvector wavepacket_mode(const LatticeConfig& cfg, const VacuumReference& vac,
                               double center, double width, double momentum) {
  if (!(width > 0.0)) throw InvalidArgumentError("wavepacket_mode: width must be > 0");
  const int n = cfg.n_sites;
  const double a = cfg.spacing;
  const double len = cfg.length();

  // positive-energy spinor of the 2x2 Bloch kernel at the mean momentum
  Eigen::Matrix2cd hk = spinor_alpha() * (std::sin(momentum * a) / a) +
                        spinor_beta() * (cfg.mass + cfg.wilson_r * (1.0 - std::cos(momentum * a)) / a);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(hk);
  const Eigen::Vector2cd spinor = solver.eigenvectors().col(1);

  cvector v = cvector::Zero(cfg.dim());
  for (int i = 0; i < n; ++i) {
    const double x = i * a;
    double d = x - center;
    if (cfg.boundary == Boundary::periodic) {
      d = std::remainder(d, len);
    }
    const complex amp =
        std::exp(-d * d / (4.0 * width * width)) * std::exp(complex(0, momentum * x));
    v[2 * i] = amp * spinor[0];
    v[2 * i + 1] = amp * spinor[1];
  }
  v -= vac.projector * v;  // project onto the unoccupied subspace
  const double norm = v.norm();
  if (norm < 1e-8)
    throw DegenerateInputError("wavepacket_mode: packet has no positive-energy content");
  return v / norm;
}

// ---------------------------------------------------------------------------
// state recipes (used by drivers and refinement studies)

struct StateRecipe {
  enum class Kind { vacuum, wavepacket, random, boosted_sea };
  Kind kind = Kind::vacuum;
  double center = 0.0;    // wavepacket, physical position
  double width = 1.0;     // wavepacket, physical width
  double momentum = 0.0;  // wavepacket, mean momentum
  std::uint64_t seed = 1; // random
  double boost = 0.0;     // boosted_sea, uniform link field

  static StateRecipe vacuum() { return {}; }
  static StateRecipe wavepacket(double center, double width, double momentum) {
    StateRecipe r;
    r.kind = Kind::wavepacket;
    r.center = center;
    r.width = width;
    r.momentum = momentum;
    return r;
  }
  static StateRecipe random(std::uint64_t seed) {
    StateRecipe r;
    r.kind = Kind::random;
    r.seed = seed;
    return r;
  }
  /// Filled sea of the kernel with a constant link field: the uniform
  /// current-carrying state on the ring.
  static StateRecipe boosted_sea(double boost) {
    StateRecipe r;
    r.kind = Kind::boosted_sea;
    r.boost = boost;
    return r;
  }
};

inline CorrelationState make_state(const StateRecipe& recipe, const LatticeConfig& cfg,
                                   const VacuumReference& vac, const CorrelationState& vacuum_state) {
  switch (recipe.kind) {
    case StateRecipe::Kind::vacuum:
      return vacuum_state;
    case StateRecipe::Kind::wavepacket: {
      const cvector mode = wavepacket_mode(cfg, vac, recipe.center, recipe.width, recipe.momentum);
      CorrelationState s = excite(vacuum_state, mode, std::nullopt);
      s.label = "wavepacket";
      return s;
    }
    case StateRecipe::Kind::random: {
      Rng rng(recipe.seed);
      return random_pure_state(vac, rng);
    }
    case StateRecipe::Kind::boosted_sea: {
      LinkField field{rvector::Constant(cfg.n_links(), recipe.boost)};
      const SingleParticleOperator hb =
          build_coupled_hamiltonian(cfg, field, ScalarPotential::zero(cfg), CouplingScheme::peierls);
      auto [bvac, bstate] = build_vacuum(hb);
      (void)bvac;
      bstate.label = "boosted_sea";
      return bstate;
    }
  }
  throw Error("make_state: unreachable");
}

}  // namespace diraclab
