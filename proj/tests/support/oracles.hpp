#pragma once

// Test-only reference computations, deliberately independent of the library
// code paths they check: dense assembly, a Taylor scaling-and-squaring matrix
// exponential, dense/tridiagonal diagonalization, and a numerically summed
// bound-state normalization.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "specdis/chain_model.hpp"

namespace specdis::oracle {

inline Eigen::MatrixXd dense_chain(const ChainSpec& s) {
  const auto n = static_cast<Eigen::Index>(s.n_sites);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  h(0, 0) = s.mu;
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double hop = j == 0 ? s.C : s.B;
    h(j, j + 1) = hop;
    h(j + 1, j) = hop;
  }
  return h;
}

/// Block-model matrix on the flat basis e_{m + M j}: D on the first block,
/// C*1 between blocks 0 and 1, B*1 between later neighbouring blocks.
inline Eigen::MatrixXd dense_block(const BlockSpec& s) {
  const auto m = static_cast<Eigen::Index>(s.energies.size());
  const auto n = static_cast<Eigen::Index>(s.n_sites);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m * n, m * n);
  for (Eigen::Index a = 0; a < m; ++a) h(a, a) = s.energies[static_cast<std::size_t>(a)];
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double hop = j == 0 ? s.C : s.B;
    for (Eigen::Index a = 0; a < m; ++a) {
      h(a + m * j, a + m * (j + 1)) = hop;
      h(a + m * (j + 1), a + m * j) = hop;
    }
  }
  return h;
}

/// exp(A) by scaling and squaring with a 30-term Taylor series.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Eigenvalues of the truncated chain via the tridiagonal QL solver.
inline Eigen::VectorXd chain_eigenvalues(const ChainSpec& s) {
  const auto n = static_cast<Eigen::Index>(s.n_sites);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(n - 1, s.B);
  diag(0) = s.mu;
  sub(0) = s.C;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Eigenvalues strictly outside [-2B - 0, 2B + 0] by more than `margin`.
inline std::vector<double> out_of_band(const Eigen::VectorXd& ev, double B, double margin) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > 2.0 * B + margin) out.push_back(ev(i));
  }
  return out;
}

/// Eigenvector of the truncated chain for eigenvalue e, built by the
/// three-term recurrence from the hard wall inwards (stable for a state
/// that decays away from site 0). Returned unnormalized, |v| rescaled to
/// stay finite.
inline std::vector<double> wall_recurrence_vector(const ChainSpec& s, double e) {
  const std::size_t n = s.n_sites;
  std::vector<double> v(n);
  v[n - 1] = 1.0;
  v[n - 2] = e / s.B;
  for (std::size_t j = n - 2; j >= 2; --j) {
    v[j - 1] = (e * v[j] - s.B * v[j + 1]) / s.B;
    if (std::abs(v[j - 1]) > 1e200) {
      for (std::size_t k = j - 1; k < n; ++k) v[k] *= 1e-200;
    }
  }
  // row 1: C v0 + B v2 = e v1
  v[0] = (e * v[1] - s.B * v[2]) / s.C;
  return v;
}

/// |<bound|e_0>|^2 by summing the ansatz psi_0 = B/C, psi_j = x^j directly.
inline double summed_overlap_sq(double x, double C_B) {
  const double head = 1.0 / (C_B * C_B);
  double bulk = 0.0;
  double term = x * x;
  for (int j = 1; j < 200000 && term > 1e-300; ++j) {
    bulk += term;
    term *= x * x;
  }
  return head / (head + bulk);
}

}  // namespace specdis::oracle
