#pragma once

// Single-particle kernels of the 1+1D Wilson-Dirac chain: the free
// Hamiltonian, potential-coupled Hamiltonians (exact link-phase coupling and
// its linearization), and the charge / current observables.
//
// Conventions, fixed once here and relied on everywhere else:
//   * two-component spinor per site, index p = 2*site + component;
//   * alpha = sigma_y, beta = sigma_z.  In this representation the free
//     kernel is purely real, so the filled sea carries no bare link current;
//   * units hbar = c = 1, charge q = +1;
//   * densities carry 1/a so that a * sum_sites approximates an integral;
//   * the current kernel on a link is defined through i[h0, rho] so the
//     discrete continuity equation is an operator identity, and the linear
//     coupling -a * sum_l J_l A_l is then exactly the first order of the
//     link-phase (Peierls) coupling.

#include <string>

#include "diraclab/common.hpp"

namespace diraclab {

enum class Boundary { periodic, open_chain };

enum class CouplingScheme { peierls, linear };

inline const char* to_string(CouplingScheme s) {
  return s == CouplingScheme::peierls ? "peierls" : "linear";
}

struct LatticeConfig {
  int n_sites = 2;
  double spacing = 1.0;   // a
  double mass = 0.0;      // m, inverse length
  double wilson_r = 1.0;  // r in (0, 1]
  Boundary boundary = Boundary::periodic;
  static constexpr double charge = 1.0;  // q; couplings are absorbed into the potential

  int dim() const { return 2 * n_sites; }
  int n_links() const { return boundary == Boundary::periodic ? n_sites : n_sites - 1; }
  double length() const { return n_sites * spacing; }

  void validate() const {
    if (n_sites < 2) throw InvalidArgumentError("LatticeConfig: n_sites must be >= 2");
    if (!(spacing > 0.0)) throw InvalidArgumentError("LatticeConfig: spacing must be > 0");
    if (!(mass >= 0.0)) throw InvalidArgumentError("LatticeConfig: mass must be >= 0");
    if (!(wilson_r > 0.0) || wilson_r > 1.0)
      throw InvalidArgumentError("LatticeConfig: wilson_r must lie in (0, 1]");
  }
};

struct SingleParticleOperator {
  cmatrix kernel;
  std::string label;

  int dim() const { return static_cast<int>(kernel.rows()); }
};

/// Real vector potential, one value per link.
struct LinkField {
  rvector values;

  static LinkField zero(const LatticeConfig& cfg) {
    return {rvector::Zero(cfg.n_links())};
  }
};

/// Real scalar potential, one value per site.
struct ScalarPotential {
  rvector values;

  static ScalarPotential zero(const LatticeConfig& cfg) {
    return {rvector::Zero(cfg.n_sites)};
  }
};

// ---------------------------------------------------------------------------
// spinor algebra

inline Eigen::Matrix2cd spinor_alpha() {
  Eigen::Matrix2cd m;
  m << complex(0, 0), complex(0, -1), complex(0, 1), complex(0, 0);
  return m;
}

inline Eigen::Matrix2cd spinor_beta() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

/// Gamma = sigma_x anticommutes with both alpha and beta, hence with every
/// free-kernel block: conjugation by it flips the sign of h0 exactly.
inline Eigen::Matrix2cd spinor_conjugation() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

/// Site-diagonal extension of the spinor conjugation to the full chain.
inline cmatrix charge_conjugation(const LatticeConfig& cfg) {
  cmatrix g = cmatrix::Zero(cfg.dim(), cfg.dim());
  const Eigen::Matrix2cd s = spinor_conjugation();
  for (int i = 0; i < cfg.n_sites; ++i) g.block<2, 2>(2 * i, 2 * i) = s;
  return g;
}

// ---------------------------------------------------------------------------
// kernel builders

namespace detail {

/// Forward hop block of one link: the coefficient matrix of psi_{l+1} in the
/// row of psi_l.  Central difference plus Wilson term.
inline Eigen::Matrix2cd forward_hop(const LatticeConfig& cfg) {
  const double a = cfg.spacing;
  return (complex(0, -1) * spinor_alpha() - cfg.wilson_r * spinor_beta()) / (2.0 * a);
}

inline Eigen::Matrix2cd site_diagonal(const LatticeConfig& cfg) {
  return (cfg.mass + cfg.wilson_r / cfg.spacing) * spinor_beta();
}

inline int link_from(const LatticeConfig& cfg, int link) { return link; }
inline int link_to(const LatticeConfig& cfg, int link) { return (link + 1) % cfg.n_sites; }

}  // namespace detail

inline SingleParticleOperator build_free_hamiltonian(const LatticeConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_sites;
  cmatrix h = cmatrix::Zero(cfg.dim(), cfg.dim());
  const Eigen::Matrix2cd diag = detail::site_diagonal(cfg);
  const Eigen::Matrix2cd hop = detail::forward_hop(cfg);
  for (int i = 0; i < n; ++i) h.block<2, 2>(2 * i, 2 * i) = diag;
  for (int l = 0; l < cfg.n_links(); ++l) {
    const int i = detail::link_from(cfg, l);
    const int j = detail::link_to(cfg, l);
    h.block<2, 2>(2 * i, 2 * j) += hop;
    h.block<2, 2>(2 * j, 2 * i) += hop.adjoint();
  }
  return {std::move(h), "h0"};
}

/// Kernel of the charge density rho(x_site) = q/a * (site projector), so that
/// a * sum over sites reproduces the total charge operator.
inline SingleParticleOperator charge_density_kernel(const LatticeConfig& cfg, int site) {
  cfg.validate();
  if (site < 0 || site >= cfg.n_sites)
    throw InvalidArgumentError("charge_density_kernel: site index out of range");
  cmatrix k = cmatrix::Zero(cfg.dim(), cfg.dim());
  const double w = LatticeConfig::charge / cfg.spacing;
  k(2 * site, 2 * site) = w;
  k(2 * site + 1, 2 * site + 1) = w;
  return {std::move(k), "rho[" + std::to_string(site) + "]"};
}

/// Current kernel of one link, defined so that i[h0, rho_i] equals
/// -(J_i - J_{i-1})/a identically.  With T the forward hop block this is
/// iq T at (l, l+1) plus the conjugate transpose.
inline SingleParticleOperator current_kernel(const LatticeConfig& cfg, int link) {
  cfg.validate();
  if (link < 0 || link >= cfg.n_links())
    throw InvalidArgumentError("current_kernel: link index out of range");
  cmatrix k = cmatrix::Zero(cfg.dim(), cfg.dim());
  const Eigen::Matrix2cd block =
      complex(0, 1) * LatticeConfig::charge * detail::forward_hop(cfg);
  const int i = detail::link_from(cfg, link);
  const int j = detail::link_to(cfg, link);
  k.block<2, 2>(2 * i, 2 * j) += block;
  k.block<2, 2>(2 * j, 2 * i) += block.adjoint();
  return {std::move(k), "J[" + std::to_string(link) + "]"};
}

/// Hamiltonian kernel in a static potential (A on links, A0 on sites).
///
/// peierls: every link hop acquires the phase exp(-i q a A_l); exactly gauge
///          covariant on the lattice.
/// linear:  h0 - a * sum_l J_l A_l + a * sum_i rho_i A0_i, the literal
///          discretization of the continuum coupling; equals the first-order
///          expansion of the link phases.
inline SingleParticleOperator build_coupled_hamiltonian(const LatticeConfig& cfg,
                                                        const LinkField& a_link,
                                                        const ScalarPotential& a0,
                                                        CouplingScheme scheme) {
  cfg.validate();
  if (a_link.values.size() != cfg.n_links())
    throw DimensionError("build_coupled_hamiltonian: link field length does not match boundary");
  if (a0.values.size() != cfg.n_sites)
    throw DimensionError("build_coupled_hamiltonian: scalar potential length != n_sites");

  const int n = cfg.n_sites;
  const double a = cfg.spacing;
  const double q = LatticeConfig::charge;
  cmatrix h = cmatrix::Zero(cfg.dim(), cfg.dim());
  const Eigen::Matrix2cd diag = detail::site_diagonal(cfg);
  const Eigen::Matrix2cd hop = detail::forward_hop(cfg);

  for (int i = 0; i < n; ++i) {
    h.block<2, 2>(2 * i, 2 * i) = diag + q * a0.values[i] * Eigen::Matrix2cd::Identity();
  }
  for (int l = 0; l < cfg.n_links(); ++l) {
    const int i = detail::link_from(cfg, l);
    const int j = detail::link_to(cfg, l);
    Eigen::Matrix2cd fwd;
    if (scheme == CouplingScheme::peierls) {
      fwd = std::exp(complex(0, -q * a * a_link.values[l])) * hop;
    } else {
      // hop - a * A_l * (iq hop) reproduces J-coupling of this link exactly
      fwd = (1.0 - complex(0, q * a * a_link.values[l])) * hop;
    }
    h.block<2, 2>(2 * i, 2 * j) += fwd;
    h.block<2, 2>(2 * j, 2 * i) += fwd.adjoint();
  }
  return {std::move(h), std::string("h[") + to_string(scheme) + "]"};
}

/// Analytic dispersion of the free periodic kernel at momentum k:
/// E(k)^2 = (sin(ka)/a)^2 + (m + r(1-cos(ka))/a)^2.
inline double lattice_dispersion(const LatticeConfig& cfg, double k) {
  const double a = cfg.spacing;
  const double kin = std::sin(k * a) / a;
  const double mw = cfg.mass + cfg.wilson_r * (1.0 - std::cos(k * a)) / a;
  return std::sqrt(kin * kin + mw * mw);
}

/// One-site translation (site i -> i+1) with trivial spinor action; commutes
/// with the free periodic kernel.
inline cmatrix translation_operator(const LatticeConfig& cfg) {
  cmatrix t = cmatrix::Zero(cfg.dim(), cfg.dim());
  for (int i = 0; i < cfg.n_sites; ++i) {
    const int j = (i + 1) % cfg.n_sites;
    t(2 * j, 2 * i) = 1.0;
    t(2 * j + 1, 2 * i + 1) = 1.0;
  }
  return t;
}

}  // namespace diraclab
