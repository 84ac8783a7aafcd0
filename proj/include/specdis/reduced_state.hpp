#pragma once

// Target-subsystem density matrices obtained by tracing out the ancilla.
//
// Chain site j carries the product state |j>|phi_j>. The ancilla states are
// orthonormal, so a pure chain state psi reduces to
//
//   rho_T = sum_j |psi_j|^2 |phi_j><phi_j|,
//
// regardless of whether the |phi_j> are mutually orthogonal.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "specdis/chain_model.hpp"
#include "specdis/error.hpp"
#include "specdis/parallel.hpp"
#include "specdis/propagator.hpp"

namespace specdis {

using TargetState = Eigen::VectorXcd;

/// Tolerances every reduced state is held to.
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

class TargetDensityMatrix {
 public:
  /// Wraps and validates (Hermitian, unit trace, PSD).
  explicit TargetDensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
      throw DimensionMismatch("density matrix must be square and non-empty");
    }
    if (!rho_.allFinite()) throw NumericalFailure("density matrix has non-finite entries");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
      throw NumericalFailure("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - 1.0) > kTraceTolerance) {
      throw NumericalFailure("density matrix trace " + std::to_string(rho_.trace().real()) +
                             " differs from 1");
    }
    if (eigenvalues().minCoeff() < -kPositivityTolerance) {
      throw NumericalFailure("density matrix has a negative eigenvalue");
    }
  }

  [[nodiscard]] Eigen::Index dim() const { return rho_.rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const { return rho_; }
  [[nodiscard]] std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const {
    return rho_(i, j);
  }

  /// Ascending eigenvalues.
  [[nodiscard]] Eigen::VectorXd eigenvalues() const {
    const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly)
        .eigenvalues();
  }

  [[nodiscard]] double purity() const { return (rho_ * rho_).trace().real(); }

  /// <s| rho |s>
  [[nodiscard]] double population(const TargetState& s) const {
    return (s.adjoint() * rho_ * s)(0, 0).real();
  }

 private:
  Eigen::MatrixXcd rho_;
};

/// Half the trace norm of the difference.
inline double trace_distance(const TargetDensityMatrix& a, const TargetDensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("density matrices differ in dimension");
  const Eigen::MatrixXcd d = a.matrix() - b.matrix();
  const Eigen::MatrixXcd herm = 0.5 * (d + d.adjoint());
  return 0.5 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly)
                   .eigenvalues()
                   .cwiseAbs()
                   .sum();
}

/// |s><s| for a normalized s.
inline TargetDensityMatrix projector(const TargetState& s) {
  return TargetDensityMatrix(s * s.adjoint());
}

inline TargetState computational_state(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw std::out_of_range("computational state index outside target");
  TargetState s = TargetState::Zero(dim);
  s(k) = 1.0;
  return s;
}

/// Assignment j -> |phi_j> of target states to chain sites. Sites are
/// labelled by an explicit prefix table, then by a pattern repeated forever;
/// an empty pattern means sites past the prefix are unassigned.
class TargetMap {
 public:
  TargetMap(std::vector<TargetState> states, std::vector<std::size_t> prefix,
            std::vector<std::size_t> cycle)
      : states_(std::move(states)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (states_.empty()) throw InvalidArgument("target map needs at least one state");
    const Eigen::Index m = states_.front().size();
    if (m == 0) throw InvalidArgument("target states must be non-empty");
    for (const auto& s : states_) {
      if (s.size() != m) throw DimensionMismatch("target states differ in dimension");
      if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw InvalidArgument("target states must be normalized");
      }
    }
    for (auto l : prefix_) check_label(l);
    for (auto l : cycle_) check_label(l);
  }

  /// site 0 -> initial, every later site -> sink.
  static TargetMap reset(TargetState initial, TargetState sink) {
    return TargetMap({std::move(initial), std::move(sink)}, {0}, {1});
  }

  /// even sites -> even_state, odd sites -> odd_state.
  static TargetMap alternating(TargetState even_state, TargetState odd_state) {
    return TargetMap({std::move(even_state), std::move(odd_state)}, {}, {0, 1});
  }

  [[nodiscard]] Eigen::Index dim() const { return states_.front().size(); }
  [[nodiscard]] std::size_t label_count() const { return states_.size(); }
  [[nodiscard]] const TargetState& state(std::size_t label) const { return states_.at(label); }

  /// Number of sites with an assignment, or none if unbounded.
  [[nodiscard]] std::optional<std::size_t> coverage() const {
    if (cycle_.empty()) return prefix_.size();
    return std::nullopt;
  }

  [[nodiscard]] std::size_t label(std::size_t site) const {
    if (site < prefix_.size()) return prefix_[site];
    if (cycle_.empty()) throw std::out_of_range("site " + std::to_string(site) + " unassigned");
    return cycle_[(site - prefix_.size()) % cycle_.size()];
  }

  /// Inner products <phi_a|phi_b> between the labelled states.
  [[nodiscard]] Eigen::MatrixXcd gram() const {
    const auto n = static_cast<Eigen::Index>(states_.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) g(a, b) = states_[a].dot(states_[b]);
    }
    return g;
  }

 private:
  void check_label(std::size_t l) const {
    if (l >= states_.size()) throw InvalidArgument("site label refers to a missing target state");
  }

  std::vector<TargetState> states_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> cycle_;
};

namespace detail {

inline Eigen::MatrixXcd reduce_unchecked(const AmplitudeVector& psi, const TargetMap& map) {
  if (auto cov = map.coverage(); cov && *cov < psi.size()) {
    throw DimensionMismatch("target map covers " + std::to_string(*cov) + " sites, state has " +
                            std::to_string(psi.size()));
  }
  std::vector<double> weight(map.label_count(), 0.0);
  for (std::size_t j = 0; j < psi.size(); ++j) weight[map.label(j)] += std::norm(psi[j]);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(map.dim(), map.dim());
  for (std::size_t l = 0; l < weight.size(); ++l) {
    if (weight[l] != 0.0) rho += weight[l] * (map.state(l) * map.state(l).adjoint());
  }
  return rho;
}

}  // namespace detail

inline TargetDensityMatrix reduce(const AmplitudeVector& psi, const TargetMap& map) {
  return TargetDensityMatrix(detail::reduce_unchecked(psi, map));
}

/// One term of a classical mixture of ancilla+target states: either a chain
/// branch that evolves, or a target state the Hamiltonian never touches.
struct MixtureBranch {
  double weight = 0.0;
  std::variant<AmplitudeVector, TargetState> content;

  static MixtureBranch evolving(double w, AmplitudeVector psi) { return {w, std::move(psi)}; }
  static MixtureBranch inert(double w, TargetState s) { return {w, std::move(s)}; }
};

inline TargetDensityMatrix mix_reduce(const std::vector<MixtureBranch>& branches,
                                      const TargetMap& map) {
  if (branches.empty()) throw InvalidArgument("mixture has no branches");
  double total = 0.0;
  for (const auto& b : branches) {
    if (!(b.weight >= 0.0)) throw InvalidArgument("mixture weights must be non-negative");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(map.dim(), map.dim());
  for (const auto& b : branches) {
    if (const auto* psi = std::get_if<AmplitudeVector>(&b.content)) {
      rho += b.weight * detail::reduce_unchecked(*psi, map);
    } else {
      const auto& s = std::get<TargetState>(b.content);
      if (s.size() != map.dim()) throw DimensionMismatch("inert branch has the wrong dimension");
      if (std::abs(s.norm() - 1.0) > kNormTolerance) {
        throw InvalidArgument("inert branch state must be normalized");
      }
      rho += b.weight * (s * s.adjoint());
    }
  }
  return TargetDensityMatrix(std::move(rho));
}

/// ((1 + p)/2)|a><a| + ((1 - p)/2)|b><b|
inline TargetDensityMatrix parity_mix_state(double parity_value, const TargetState& a,
                                            const TargetState& b) {
  if (!(std::abs(parity_value) <= 1.0 + 1e-12)) throw InvalidArgument("parity must lie in [-1, 1]");
  if (a.size() != b.size()) throw DimensionMismatch("target states differ in dimension");
  if (std::abs(a.norm() - 1.0) > kNormTolerance || std::abs(b.norm() - 1.0) > kNormTolerance) {
    throw InvalidArgument("target states must be normalized");
  }
  const double p = std::clamp(parity_value, -1.0, 1.0);
  return TargetDensityMatrix(0.5 * (1.0 + p) * (a * a.adjoint()) +
                             0.5 * (1.0 - p) * (b * b.adjoint()));
}

/// Occupation of |E_0> over time for the block model started in |0>|E_m>.
/// Only chain m is populated, with site 0 carrying |E_m> and every later
/// site |E_0>.
inline ObservableSeries run_example4(const BlockSpec& block, std::size_t initial_m, double t_max,
                                     double dt) {
  const auto chains = decompose_block(block);
  if (initial_m >= chains.size()) {
    throw InvalidArgument("initial target index " + std::to_string(initial_m) +
                          " outside block of size " + std::to_string(chains.size()));
  }
  const auto m_dim = static_cast<Eigen::Index>(chains.size());
  const auto ground = computational_state(m_dim, 0);
  const auto map = TargetMap::reset(
      computational_state(m_dim, static_cast<Eigen::Index>(initial_m)), ground);

  ObservableSeries out;
  out.times = time_grid(t_max, dt);
  out.values.reserve(out.times.size());
  const auto& spec = chains[initial_m];
  propagate_visit(build_chain(spec), AmplitudeVector::basis(spec.n_sites, 0), out.times,
                  [&](double, const AmplitudeVector& psi) {
                    out.values.push_back(reduce(psi, map).population(ground));
                  });
  return out;
}

/// run_example4 for every initial index, chains propagated concurrently.
inline std::vector<ObservableSeries> run_example4_all(const BlockSpec& block, double t_max,
                                                      double dt, unsigned threads = 1) {
  block.validate();
  std::vector<ObservableSeries> out(block.block_size());
  parallel_for(out.size(), threads,
               [&](std::size_t m) { out[m] = run_example4(block, m, t_max, dt); });
  return out;
}

}  // namespace specdis
