#pragma once

// Brute-force many-body oracle on the full Fock space of the chain
// (dimension 2^(2N), so N <= 4).  Everything is rebuilt from first
// principles - occupation-number basis, Jordan-Wigner signs, dense many-body
// operators - independently of the correlation-matrix engine it is used to
// check.

#include <vector>

#include <Eigen/Eigenvalues>

#include "diraclab/common.hpp"
#include "diraclab/gauge.hpp"
#include "diraclab/lattice.hpp"

namespace diraclab {

class FockOracle {
 public:
  explicit FockOracle(const LatticeConfig& cfg)
      : cfg_(cfg), n_modes_(cfg.dim()), dim_(1 << cfg.dim()) {
    cfg.validate();
    if (cfg.n_sites > 4)
      throw InvalidArgumentError(
          "FockOracle: refuses n_sites > 4 (Fock dimension 2^(2N) = " +
          std::to_string(1 << cfg.dim()) + ")");
  }

  int n_modes() const { return n_modes_; }
  int fock_dim() const { return dim_; }

  /// Many-body operator of a one-body kernel, sum_pq M_pq adag_p a_q.
  cmatrix bilinear(const cmatrix& kernel) const {
    require_same_dim(kernel.rows(), n_modes_, "FockOracle::bilinear");
    cmatrix op = cmatrix::Zero(dim_, dim_);
    for (int q = 0; q < n_modes_; ++q) {
      for (int s = 0; s < dim_; ++s) {
        if (!(s >> q & 1)) continue;
        const int t = s ^ (1 << q);
        const int sign_q = parity_below(s, q);
        for (int p = 0; p < n_modes_; ++p) {
          if (kernel(p, q) == complex(0, 0)) continue;
          if (t >> p & 1) continue;
          const int u = t | (1 << p);
          const int sign_p = parity_below(t, p);
          op(u, s) += kernel(p, q) * double(sign_p * sign_q);
        }
      }
    }
    return op;
  }

  /// Slater-determinant state with the given orthonormal occupied modes
  /// (columns), built by applying mode creators to the empty state.
  cvector slater_state(const cmatrix& occupied) const {
    require_same_dim(occupied.rows(), n_modes_, "FockOracle::slater_state");
    cvector psi = cvector::Zero(dim_);
    psi[0] = 1.0;
    for (Eigen::Index col = 0; col < occupied.cols(); ++col) {
      cvector next = cvector::Zero(dim_);
      for (int p = 0; p < n_modes_; ++p) {
        const complex amp = occupied(p, col);
        if (amp == complex(0, 0)) continue;
        for (int s = 0; s < dim_; ++s) {
          if (psi[s] == complex(0, 0)) continue;
          if (s >> p & 1) continue;
          next[s | (1 << p)] += amp * double(parity_below(s, p)) * psi[s];
        }
      }
      psi = next;
    }
    const double norm = psi.norm();
    if (norm < 1e-12)
      throw InvalidArgumentError("FockOracle::slater_state: occupied modes are degenerate");
    return psi / norm;
  }

  /// Apply the diagonal gauge unitary exp(i q sum_i chi_i n_i).
  cvector apply_gauge(const GaugeFunction& chi, const cvector& psi) const {
    require_chi_matches(chi, cfg_);
    require_same_dim(psi.size(), dim_, "FockOracle::apply_gauge");
    cvector out(dim_);
    for (int s = 0; s < dim_; ++s) {
      double phase = 0.0;
      for (int i = 0; i < cfg_.n_sites; ++i) {
        const int occ = (s >> (2 * i) & 1) + (s >> (2 * i + 1) & 1);
        phase += LatticeConfig::charge * chi.chi[i] * occ;
      }
      out[s] = std::exp(complex(0, phase)) * psi[s];
    }
    return out;
  }

  double expectation(const cmatrix& op, const cvector& psi) const {
    return (psi.adjoint() * op * psi)(0, 0).real();
  }

  /// exp(-i Op t) |psi> by dense diagonalization of the many-body operator.
  cvector evolve(const cmatrix& op, const cvector& psi, double t) const {
    Eigen::SelfAdjointEigenSolver<cmatrix> solver(op);
    if (solver.info() != Eigen::Success) throw Error("FockOracle::evolve: diagonalization failed");
    cvector phases(dim_);
    for (int i = 0; i < dim_; ++i) phases[i] = std::exp(complex(0, -solver.eigenvalues()[i] * t));
    return solver.eigenvectors() *
           (phases.asDiagonal() * (solver.eigenvectors().adjoint() * psi));
  }

  double ground_state_energy(const cmatrix& op) const {
    Eigen::SelfAdjointEigenSolver<cmatrix> solver(op);
    if (solver.info() != Eigen::Success)
      throw Error("FockOracle::ground_state_energy: diagonalization failed");
    return solver.eigenvalues().minCoeff();
  }

  /// One-body correlation matrix C_ij = <psi| adag_j a_i |psi>.
  cmatrix correlation_matrix(const cvector& psi) const {
    std::vector<cvector> lowered(n_modes_);
    for (int p = 0; p < n_modes_; ++p) {
      cvector ap = cvector::Zero(dim_);
      for (int s = 0; s < dim_; ++s) {
        if (!(s >> p & 1)) continue;
        ap[s ^ (1 << p)] += double(parity_below(s, p)) * psi[s];
      }
      lowered[p] = std::move(ap);
    }
    cmatrix c(n_modes_, n_modes_);
    for (int i = 0; i < n_modes_; ++i)
      for (int j = 0; j < n_modes_; ++j) c(i, j) = lowered[j].dot(lowered[i]);
    return c;
  }

 private:
  static int parity_below(int state, int mode) {
    const int mask = (1 << mode) - 1;
    return (__builtin_popcount(state & mask) & 1) ? -1 : 1;
  }

  LatticeConfig cfg_;
  int n_modes_;
  int dim_;
};

}  // namespace diraclab
