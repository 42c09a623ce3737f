#pragma once

// The constructive lower-bound probe: build chi from the measured current
// divergence, form the first-order energy prediction (which is unbounded
// below in the amplitude f), and sweep f against the exact energies of the
// regulated model.

#include <span>
#include <vector>

#include "diraclab/common.hpp"
#include "diraclab/gauge.hpp"
#include "diraclab/gaussian.hpp"
#include "diraclab/lattice.hpp"

namespace diraclab {

struct SweepRow {
  double f = 0.0;
  double linear_prediction = 0.0;        // first-order form, unbounded below in f
  double exact_peierls_energy = 0.0;     // covariant-scheme energy of the transformed state
  double exact_linear_scheme_energy = 0.0;
  double transformed_free_energy = 0.0;  // free-frame energy of the transformed state
  double gap = 0.0;                      // transformed_free_energy - linear_prediction
};

/// chi_i = f * (div <J>)_i measured on the state.  Degenerate (and refused)
/// when the divergence vanishes identically, e.g. for the vacuum.
inline GaugeFunction build_chi_from_current(const CorrelationState& state, double f,
                                            const LatticeConfig& cfg) {
  return ChiRecipe::from_current(f).build(cfg, &state);
}

/// First-order energy prediction  free_energy + a sum_l <J_l> (grad chi)_l.
/// For chi built from the current divergence this equals
/// free_energy - f a sum_i (div<J>_i)^2 by exact summation by parts.
inline double predicted_energy(const CorrelationState& state, const GaugeFunction& chi,
                               const SingleParticleOperator& h0, const VacuumReference& vac,
                               const LatticeConfig& cfg) {
  const LinkField grad = gradient_on_links(chi, cfg);
  const rvector j = link_currents(state, cfg);
  double dot = 0.0;
  for (int l = 0; l < cfg.n_links(); ++l) dot += cfg.spacing * j[l] * grad.values[l];
  return free_energy(state, h0, vac) + dot;
}

inline std::vector<SweepRow> sweep_f(const CorrelationState& state, std::span<const double> f_values,
                                     const LatticeConfig& cfg, const SingleParticleOperator& h0,
                                     const VacuumReference& vac) {
  std::vector<SweepRow> rows;
  rows.reserve(f_values.size());
  for (double f : f_values) {
    if (!std::isfinite(f)) throw InvalidArgumentError("sweep_f: non-finite amplitude");
    const GaugeFunction chi = build_chi_from_current(state, f, cfg);
    const CorrelationState transformed = apply_gauge(state, chi, cfg);
    SweepRow row;
    row.f = f;
    row.linear_prediction = predicted_energy(state, chi, h0, vac, cfg);
    row.transformed_free_energy = free_energy(transformed, h0, vac);
    row.exact_peierls_energy = sg_energy(transformed, chi, cfg, h0, vac, CouplingScheme::peierls);
    row.exact_linear_scheme_energy = sg_energy(transformed, chi, cfg, h0, vac, CouplingScheme::linear);
    row.gap = row.transformed_free_energy - row.linear_prediction;
    rows.push_back(row);
  }
  return rows;
}

struct CrossoverScale {
  double f_star = 0.0;
  bool found = false;
};

/// Smallest f at which |gap| reaches 10% of the prediction's drop below the
/// free energy, linearly interpolated between sweep rows.
inline CrossoverScale crossover_scale(const std::vector<SweepRow>& rows, double free_e) {
  auto excess = [&](const SweepRow& r) {
    return std::abs(r.gap) - 0.1 * std::abs(r.linear_prediction - free_e);
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].f <= 0.0) continue;
    const double gi = excess(rows[i]);
    if (gi < 0.0) continue;
    const SweepRow& prev = rows[i - 1];
    const double gp = excess(prev);
    if (prev.f > 0.0 && gp < 0.0) {
      const double t = -gp / (gi - gp);
      return {prev.f + t * (rows[i].f - prev.f), true};
    }
    return {rows[i].f, true};
  }
  return {0.0, false};
}

}  // namespace diraclab
