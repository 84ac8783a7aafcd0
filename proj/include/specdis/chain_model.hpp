#pragma once

// Chain representation of the ancilla+target hopping Hamiltonian.
//
// A single chain lives on the basis e_j = |j>|phi_j>, j = 0..N-1, and is the
// real symmetric tridiagonal matrix
//
//     | mu  C             |
//     | C   0   B         |
//     |     B   0   B     |
//     |         B   0 ... |
//
// truncated with a hard wall after site N-1. The block model with a diagonal
// on-site operator D = diag(E_0..E_{M-1}) splits into M such chains, one per
// target eigenvalue, under the flat index e_{m + M j}.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specdis/error.hpp"

namespace specdis {

struct ChainSpec {
  double B = 1.0;   ///< bulk hopping
  double C = 1.0;   ///< hopping between site 0 and site 1
  double mu = 0.0;  ///< site-0 energy
  std::size_t n_sites = 2;

  [[nodiscard]] double mu_B() const { return mu / B; }
  [[nodiscard]] double C_B() const { return C / B; }

  void validate() const {
    if (!std::isfinite(B) || !std::isfinite(C) || !std::isfinite(mu)) {
      throw InvalidSpec("chain parameters must be finite");
    }
    if (B <= 0.0) throw InvalidSpec("bulk hopping B must be positive");
    if (C < 0.0) throw InvalidSpec("boundary hopping C must be non-negative");
    if (n_sites < 2) throw InvalidSpec("a chain needs at least 2 sites");
  }
};

/// Real symmetric tridiagonal matrix stored as its two bands.
struct ChainHamiltonian {
  std::vector<double> diag;     // length N
  std::vector<double> offdiag;  // length N-1, offdiag[j] couples j and j+1

  [[nodiscard]] std::size_t size() const { return diag.size(); }

  /// out = H * in. `out` must not alias `in`.
  void apply(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) const {
    const std::size_t n = size();
    if (in.size() != n || out.size() != n) {
      throw DimensionMismatch("vector length does not match chain size");
    }
    if (n == 0) return;
    if (n == 1) {
      out[0] = diag[0] * in[0];
      return;
    }
    out[0] = diag[0] * in[0] + offdiag[0] * in[1];
    for (std::size_t j = 1; j + 1 < n; ++j) {
      out[j] = offdiag[j - 1] * in[j - 1] + diag[j] * in[j] + offdiag[j] * in[j + 1];
    }
    out[n - 1] = offdiag[n - 2] * in[n - 2] + diag[n - 1] * in[n - 1];
  }

  /// Gershgorin enclosure [lo, hi] of the spectrum.
  [[nodiscard]] std::pair<double, double> spectral_bounds() const {
    const std::size_t n = size();
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double radius = 0.0;
      if (j > 0) radius += std::abs(offdiag[j - 1]);
      if (j + 1 < n) radius += std::abs(offdiag[j]);
      const double a = diag[j] - radius;
      const double b = diag[j] + radius;
      if (j == 0 || a < lo) lo = a;
      if (j == 0 || b > hi) hi = b;
    }
    return {lo, hi};
  }
};

inline ChainHamiltonian build_chain(const ChainSpec& spec) {
  spec.validate();
  ChainHamiltonian h;
  h.diag.assign(spec.n_sites, 0.0);
  h.offdiag.assign(spec.n_sites - 1, spec.B);
  h.diag[0] = spec.mu;
  h.offdiag[0] = spec.C;
  return h;
}

struct BlockSpec {
  double B = 1.0;
  double C = 1.0;
  std::vector<double> energies;  ///< eigenvalues E_0..E_{M-1} of the site-0 block
  std::size_t n_sites = 2;       ///< sites per chain

  [[nodiscard]] std::size_t block_size() const { return energies.size(); }

  void validate() const {
    if (energies.empty()) throw InvalidSpec("block model needs at least one target energy");
    for (double e : energies) {
      if (!std::isfinite(e)) throw InvalidSpec("target energies must be finite");
    }
    ChainSpec{B, C, 0.0, n_sites}.validate();
  }
};

/// One chain per target eigenvalue; chain m carries mu = E_m.
inline std::vector<ChainSpec> decompose_block(const BlockSpec& spec) {
  spec.validate();
  std::vector<ChainSpec> chains;
  chains.reserve(spec.energies.size());
  for (double e : spec.energies) chains.push_back(ChainSpec{spec.B, spec.C, e, spec.n_sites});
  return chains;
}

/// Flat block-model index of |j>|phi_j^(m)>.
inline std::size_t basis_index(std::size_t m, std::size_t j, std::size_t block_size) {
  if (block_size == 0) throw std::out_of_range("block size must be positive");
  if (m >= block_size) {
    throw std::out_of_range("target index " + std::to_string(m) + " outside block of size " +
                            std::to_string(block_size));
  }
  return m + block_size * j;
}

/// Inverse of basis_index: flat index -> (m, j).
inline std::pair<std::size_t, std::size_t> split_basis_index(std::size_t flat,
                                                             std::size_t block_size) {
  if (block_size == 0) throw std::out_of_range("block size must be positive");
  return {flat % block_size, flat / block_size};
}

}  // namespace specdis
