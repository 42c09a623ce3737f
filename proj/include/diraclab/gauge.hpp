#pragma once

// Static gauge changes A -> A + grad(chi), the diagonal local-phase unitary
// implementing them on states, and the energy functional of the transformed
// observer.
//
// Two couplings are first-class throughout:
//   * linear  - the literal transformed-frame functional
//               <Omega| (H0 - a sum_l J_l (grad chi)_l) |Omega>, normal-ordered
//               against the free vacuum.  Exact only to first order in the
//               link phases.
//   * peierls - the exactly covariant lattice completion.  Its energies are
//               measured from the frame-mapped sea G P- G^dag, which is the
//               coupled kernel's own ground state; the subtracted constant
//               then equals the free-theory constant Tr(h0 P-), so the frame
//               map is an exact isometry of the functional.
// The two functionals differ by the c-number anomaly that the vacuum probe
// in verify.hpp measures; keeping both visible is the point of the lab.

#include <optional>
#include <string>

#include "diraclab/common.hpp"
#include "diraclab/gaussian.hpp"
#include "diraclab/lattice.hpp"

namespace diraclab {

/// Real gauge function chi, one sample per site (dimensionless for q = 1).
struct GaugeFunction {
  rvector chi;
  std::string label;

  static GaugeFunction zero(const LatticeConfig& cfg) {
    return {rvector::Zero(cfg.n_sites), "chi=0"};
  }
};

/// Diagonal phase unitary exp(i q chi(x)) over (site x spinor); both spinor
/// components of a site share one phase.
struct GaugeUnitary {
  cvector phases;  // length 2N

  int dim() const { return static_cast<int>(phases.size()); }
};

inline void require_chi_matches(const GaugeFunction& chi, const LatticeConfig& cfg) {
  if (chi.chi.size() != cfg.n_sites)
    throw DimensionError("gauge function length != n_sites");
}

/// Forward-difference gradient on links, (chi_{i+1} - chi_i)/a with periodic
/// wrap.  Periodic lattices only: chi is single-valued by construction.
inline LinkField gradient_on_links(const GaugeFunction& chi, const LatticeConfig& cfg) {
  require_chi_matches(chi, cfg);
  if (cfg.boundary != Boundary::periodic)
    throw InvalidArgumentError("gradient_on_links: periodic boundary required");
  rvector g(cfg.n_links());
  for (int l = 0; l < cfg.n_links(); ++l) {
    const int i = l;
    const int j = (l + 1) % cfg.n_sites;
    g[l] = (chi.chi[j] - chi.chi[i]) / cfg.spacing;
  }
  return {std::move(g)};
}

inline GaugeUnitary make_unitary(const GaugeFunction& chi, const LatticeConfig& cfg) {
  require_chi_matches(chi, cfg);
  cvector phases(cfg.dim());
  for (int i = 0; i < cfg.n_sites; ++i) {
    const complex p = std::exp(complex(0, LatticeConfig::charge * chi.chi[i]));
    phases[2 * i] = p;
    phases[2 * i + 1] = p;
  }
  return {std::move(phases)};
}

inline cmatrix conjugate_by_unitary(const cmatrix& m, const GaugeUnitary& g) {
  require_same_dim(m.rows(), g.phases.size(), "conjugate_by_unitary");
  return g.phases.asDiagonal() * m * g.phases.conjugate().asDiagonal();
}

/// C -> G C G^dag; the correlation matrix of U_chi |Omega>.
inline CorrelationState apply_gauge(const CorrelationState& state, const GaugeFunction& chi,
                                    const LatticeConfig& cfg) {
  const GaugeUnitary g = make_unitary(chi, cfg);
  return {conjugate_by_unitary(state.corr, g), state.label + "@" + (chi.label.empty() ? "chi" : chi.label)};
}

// ---------------------------------------------------------------------------
// observables on links and sites

/// Raw link currents <J_l> read directly off the hop correlations.
inline rvector link_currents(const CorrelationState& state, const LatticeConfig& cfg) {
  require_same_dim(state.corr.rows(), cfg.dim(), "link_currents");
  const Eigen::Matrix2cd hop = detail::forward_hop(cfg);
  rvector j(cfg.n_links());
  for (int l = 0; l < cfg.n_links(); ++l) {
    const int i = detail::link_from(cfg, l);
    const int k = detail::link_to(cfg, l);
    const complex z = (hop * state.corr.block<2, 2>(2 * k, 2 * i)).trace();
    j[l] = -2.0 * LatticeConfig::charge * z.imag();
  }
  return j;
}

/// Raw site densities <rho_i> (per unit length).
inline rvector site_densities(const CorrelationState& state, const LatticeConfig& cfg) {
  require_same_dim(state.corr.rows(), cfg.dim(), "site_densities");
  rvector d(cfg.n_sites);
  for (int i = 0; i < cfg.n_sites; ++i) {
    d[i] = LatticeConfig::charge / cfg.spacing *
           (state.corr(2 * i, 2 * i) + state.corr(2 * i + 1, 2 * i + 1)).real();
  }
  return d;
}

/// Site-centered backward difference of the link currents; the exact adjoint
/// of gradient_on_links, so summation by parts is an identity.
inline rvector divergence_of_current(const CorrelationState& state, const LatticeConfig& cfg) {
  if (cfg.boundary != Boundary::periodic)
    throw InvalidArgumentError("divergence_of_current: periodic boundary required");
  const rvector j = link_currents(state, cfg);
  rvector div(cfg.n_sites);
  for (int i = 0; i < cfg.n_sites; ++i) {
    const int prev = (i + cfg.n_sites - 1) % cfg.n_sites;
    div[i] = (j[i] - j[prev]) / cfg.spacing;
  }
  return div;
}

// ---------------------------------------------------------------------------
// transformed-observer energy

/// Energy of `state` as described by the observer whose vector potential is
/// grad(chi).  See the header comment for the two schemes' reference states.
inline double sg_energy(const CorrelationState& state, const GaugeFunction& chi,
                        const LatticeConfig& cfg, const SingleParticleOperator& h0,
                        const VacuumReference& vac, CouplingScheme scheme) {
  (void)h0;  // the coupled kernel is rebuilt from the config; h0 pins dimensions
  require_same_dim(state.corr.rows(), cfg.dim(), "sg_energy");
  const LinkField grad = gradient_on_links(chi, cfg);
  const SingleParticleOperator h =
      build_coupled_hamiltonian(cfg, grad, ScalarPotential::zero(cfg), scheme);
  if (scheme == CouplingScheme::linear) {
    return energy_with_potential(state, h, vac);
  }
  const GaugeUnitary g = make_unitary(chi, cfg);
  const cmatrix frame_sea = conjugate_by_unitary(vac.projector, g);
  return energy_relative(state, h, frame_sea);
}

// ---------------------------------------------------------------------------
// gauge-function recipes

/// Named generators for chi, resolvable at any lattice spacing (except
/// explicit sample lists, which are tied to one lattice).
struct ChiRecipe {
  enum class Kind { constant, sine, bump, from_current, samples };
  Kind kind = Kind::constant;
  double value = 0.0;       // constant
  double amplitude = 0.0;   // sine / bump
  double wavelength = 1.0;  // sine; snapped to an integer winding of the ring
  double center = 0.0;      // bump
  double width = 1.0;       // bump
  double f = 0.0;           // from_current
  rvector samples;          // samples

  static ChiRecipe constant(double c) {
    ChiRecipe r;
    r.kind = Kind::constant;
    r.value = c;
    return r;
  }
  static ChiRecipe sine(double amplitude, double wavelength) {
    ChiRecipe r;
    r.kind = Kind::sine;
    r.amplitude = amplitude;
    r.wavelength = wavelength;
    return r;
  }
  static ChiRecipe bump(double center, double width, double amplitude) {
    ChiRecipe r;
    r.kind = Kind::bump;
    r.center = center;
    r.width = width;
    r.amplitude = amplitude;
    return r;
  }
  static ChiRecipe from_current(double f) {
    ChiRecipe r;
    r.kind = Kind::from_current;
    r.f = f;
    return r;
  }
  static ChiRecipe from_samples(rvector values) {
    ChiRecipe r;
    r.kind = Kind::samples;
    r.samples = std::move(values);
    return r;
  }

  /// True when the recipe can be re-evaluated on refined lattices.
  bool refinable() const { return kind != Kind::samples; }

  GaugeFunction build(const LatticeConfig& cfg, const CorrelationState* state = nullptr) const {
    const int n = cfg.n_sites;
    const double len = cfg.length();
    rvector chi(n);
    switch (kind) {
      case Kind::constant:
        chi.setConstant(value);
        return {std::move(chi), "constant"};
      case Kind::sine: {
        if (!(wavelength > 0.0))
          throw InvalidArgumentError("chi sine recipe: wavelength must be > 0");
        const double windings = std::max(1.0, std::round(len / wavelength));
        const double k = 2.0 * M_PI * windings / len;
        for (int i = 0; i < n; ++i) chi[i] = amplitude * std::sin(k * i * cfg.spacing);
        return {std::move(chi), "sine"};
      }
      case Kind::bump: {
        if (!(width > 0.0)) throw InvalidArgumentError("chi bump recipe: width must be > 0");
        for (int i = 0; i < n; ++i) {
          double d = i * cfg.spacing - center;
          if (cfg.boundary == Boundary::periodic) d = std::remainder(d, len);
          chi[i] = amplitude * std::exp(-d * d / (2.0 * width * width));
        }
        return {std::move(chi), "bump"};
      }
      case Kind::from_current: {
        if (state == nullptr)
          throw InvalidArgumentError("chi from_current recipe needs a state to measure");
        const rvector div = divergence_of_current(*state, cfg);
        if (div.cwiseAbs().maxCoeff() <= 1e-10)
          throw DegenerateInputError(
              "chi from_current recipe: the current divergence vanishes identically "
              "(a translation-invariant or vacuum state); use a wavepacket state");
        chi = f * div;
        return {std::move(chi), "from_current"};
      }
      case Kind::samples: {
        if (samples.size() != n)
          throw DimensionError("chi samples list length != n_sites");
        chi = samples;
        return {std::move(chi), "samples"};
      }
    }
    throw Error("ChiRecipe::build: unreachable");
  }
};

}  // namespace diraclab
