#pragma once

// Markovian baseline for small target systems:
//
//   drho/dt = -i [H, rho] + sum_k G_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho}),
//
// integrated with classical RK4. The step is refined by halving until two
// successive refinements agree to the requested tolerance at every sample.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specdis/error.hpp"
#include "specdis/reduced_state.hpp"

namespace specdis {

inline constexpr Eigen::Index kMaxLindbladDim = 16;

struct LindbladModel {
  Eigen::MatrixXcd hamiltonian;
  std::vector<Eigen::MatrixXcd> jump_ops;
  std::vector<double> rates;

  [[nodiscard]] Eigen::Index dim() const { return hamiltonian.rows(); }

  void validate() const {
    const Eigen::Index m = hamiltonian.rows();
    if (m == 0 || hamiltonian.cols() != m) throw DimensionMismatch("H_T must be square");
    if (m > kMaxLindbladDim) {
      throw InvalidArgument("Lindblad baseline is limited to dimension " +
                            std::to_string(kMaxLindbladDim));
    }
    if (!hamiltonian.allFinite()) throw InvalidArgument("H_T has non-finite entries");
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidArgument("H_T is not Hermitian");
    }
    if (jump_ops.size() != rates.size()) {
      throw DimensionMismatch("jump operators and rates differ in count");
    }
    for (const auto& l : jump_ops) {
      if (l.rows() != m || l.cols() != m) throw DimensionMismatch("jump operator has wrong shape");
    }
    for (double g : rates) {
      if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("rates must be non-negative");
    }
  }
};

/// H_T = E0|0><0| + E1|1><1|, single jump |0><1| at rate gamma.
inline LindbladModel spontaneous_decay_model(double e0, double e1, double gamma) {
  LindbladModel model;
  model.hamiltonian = Eigen::MatrixXcd::Zero(2, 2);
  model.hamiltonian(0, 0) = e0;
  model.hamiltonian(1, 1) = e1;
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(2, 2);
  lower(0, 1) = 1.0;
  model.jump_ops.push_back(lower);
  model.rates.push_back(gamma);
  return model;
}

namespace detail {

inline Eigen::MatrixXcd lindblad_rhs_unchecked(const LindbladModel& model,
                                               const Eigen::MatrixXcd& rho) {
  const std::complex<double> minus_i(0.0, -1.0);
  Eigen::MatrixXcd out = minus_i * (model.hamiltonian * rho - rho * model.hamiltonian);
  for (std::size_t k = 0; k < model.jump_ops.size(); ++k) {
    const auto& l = model.jump_ops[k];
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    out += model.rates[k] * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

inline void rk4_step(const LindbladModel& model, Eigen::MatrixXcd& rho, double h) {
  const Eigen::MatrixXcd k1 = lindblad_rhs_unchecked(model, rho);
  const Eigen::MatrixXcd k2 = lindblad_rhs_unchecked(model, rho + 0.5 * h * k1);
  const Eigen::MatrixXcd k3 = lindblad_rhs_unchecked(model, rho + 0.5 * h * k2);
  const Eigen::MatrixXcd k4 = lindblad_rhs_unchecked(model, rho + h * k3);
  rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Fixed-step RK4; every sample interval is split into equal steps <= max_step.
inline std::vector<Eigen::MatrixXcd> rk4_trajectory(const LindbladModel& model,
                                                    const Eigen::MatrixXcd& rho0,
                                                    std::span<const double> times,
                                                    double max_step) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(times.size());
  Eigen::MatrixXcd rho = rho0;
  double now = 0.0;
  for (double t : times) {
    const double span = t - now;
    if (span > 0.0) {
      const auto steps = static_cast<std::size_t>(std::ceil(span / max_step - 1e-12));
      const double h = span / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) rk4_step(model, rho, h);
    }
    now = t;
    out.push_back(rho);
  }
  return out;
}

/// Crude bound on the generator norm, used to pick the first step.
inline double generator_scale(const LindbladModel& model) {
  double s = 2.0 * model.hamiltonian.norm();
  for (std::size_t k = 0; k < model.jump_ops.size(); ++k) {
    s += 2.0 * model.rates[k] * model.jump_ops[k].squaredNorm();
  }
  return s;
}

}  // namespace detail

inline Eigen::MatrixXcd lindblad_rhs(const LindbladModel& model, const TargetDensityMatrix& rho) {
  model.validate();
  if (rho.dim() != model.dim()) throw DimensionMismatch("density matrix and model differ in dimension");
  return detail::lindblad_rhs_unchecked(model, rho.matrix());
}

struct IntegratorOptions {
  double tolerance = 1e-8;       ///< max entry change when the step is halved
  double initial_step = 0.0;     ///< 0 picks one from the generator scale
  unsigned max_refinements = 14;
  /// Skip refinement and integrate once with initial_step. Used when two runs
  /// must share the exact same step sequence.
  bool fixed_step = false;
};

struct LindbladTrajectory {
  std::vector<double> times;
  std::vector<TargetDensityMatrix> states;
  double step = 0.0;  ///< RK4 step of the returned (finer) trajectory
};

inline LindbladTrajectory integrate(const LindbladModel& model, const TargetDensityMatrix& rho0,
                                    std::span<const double> times,
                                    const IntegratorOptions& options = {}) {
  model.validate();
  if (rho0.dim() != model.dim()) throw DimensionMismatch("initial state and model differ in dimension");
  detail::check_times(times);

  double h = options.initial_step;
  if (!(h > 0.0)) h = std::min(0.05, 0.25 / std::max(detail::generator_scale(model), 1e-300));

  auto finish = [&](std::vector<Eigen::MatrixXcd>& fine, double step) {
    LindbladTrajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.step = step;
    traj.states.reserve(fine.size());
    for (auto& m : fine) {
      // symmetrize away round-off before the invariant checks
      const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
      if ((m - herm).cwiseAbs().maxCoeff() > 1e-9) {
        throw NumericalFailure("Lindblad trajectory lost hermiticity");
      }
      const Eigen::VectorXd ev =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly).eigenvalues();
      if (std::abs(herm.trace() - 1.0) > 1e-9 || ev.minCoeff() < -1e-8) {
        throw NumericalFailure("Lindblad trajectory left the set of density matrices");
      }
      traj.states.emplace_back(herm);
    }
    return traj;
  };

  if (options.fixed_step) {
    if (!(options.initial_step > 0.0)) throw InvalidArgument("fixed-step integration needs a step");
    auto single = detail::rk4_trajectory(model, rho0.matrix(), times, h);
    return finish(single, h);
  }
  auto coarse = detail::rk4_trajectory(model, rho0.matrix(), times, h);
  for (unsigned r = 0; r < options.max_refinements; ++r) {
    auto fine = detail::rk4_trajectory(model, rho0.matrix(), times, 0.5 * h);
    double change = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      change = std::max(change, (fine[i] - coarse[i]).cwiseAbs().maxCoeff());
    }
    h *= 0.5;
    if (change < options.tolerance) return finish(fine, h);
    coarse = std::move(fine);
  }
  throw NumericalFailure("RK4 step refinement did not converge to the requested tolerance");
}

}  // namespace specdis
