#pragma once

// Preset end-to-end runs on a two-level target: qubit reset, qubit mixing
// and the microscopic-vs-Lindblad spontaneous decay comparison.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <vector>

#include "specdis/chain_model.hpp"
#include "specdis/lindblad.hpp"
#include "specdis/parallel.hpp"
#include "specdis/propagator.hpp"
#include "specdis/reduced_state.hpp"

namespace specdis {

struct TargetRun {
  std::vector<double> times;
  std::vector<double> n0;
  std::vector<double> parity;
  std::vector<TargetDensityMatrix> rho;
};

/// Target starts in (|0><0| + |1><1|)/2. The |1> half sits on chain site 0
/// and leaks into the |0>-dressed bulk; the |0> half is never touched.
inline TargetRun run_reset(const ChainSpec& spec, double t_max, double dt) {
  const auto zero = computational_state(2, 0);
  const auto one = computational_state(2, 1);
  const auto map = TargetMap::reset(one, zero);
  TargetRun run;
  run.times = time_grid(t_max, dt);
  propagate_visit(build_chain(spec), AmplitudeVector::basis(spec.n_sites, 0), run.times,
                  [&](double, const AmplitudeVector& psi) {
                    run.n0.push_back(occupation(psi, 0));
                    run.parity.push_back(parity(psi));
                    run.rho.push_back(mix_reduce(
                        {MixtureBranch::evolving(0.5, psi), MixtureBranch::inert(0.5, zero)}, map));
                  });
  return run;
}

/// Target starts pure in `even_state`; even sites carry even_state, odd
/// sites odd_state, so rho_T follows the parity of the chain state.
inline TargetRun run_mixing(const ChainSpec& spec, const TargetState& even_state,
                            const TargetState& odd_state, double t_max, double dt) {
  const auto map = TargetMap::alternating(even_state, odd_state);
  TargetRun run;
  run.times = time_grid(t_max, dt);
  propagate_visit(build_chain(spec), AmplitudeVector::basis(spec.n_sites, 0), run.times,
                  [&](double, const AmplitudeVector& psi) {
                    run.n0.push_back(occupation(psi, 0));
                    run.parity.push_back(parity(psi));
                    run.rho.push_back(reduce(psi, map));
                  });
  return run;
}

/// Normalized pair |a> = |0>, |b> = g|0> + sqrt(1 - g^2)|1> with <a|b> = g.
inline std::pair<TargetState, TargetState> overlapping_pair(double overlap) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw InvalidArgument("overlap must lie in [0, 1]");
  TargetState a = computational_state(2, 0);
  TargetState b(2);
  b << overlap, std::sqrt(1.0 - overlap * overlap);
  return {a, b};
}

struct DecayComparison {
  std::vector<double> times;
  std::vector<double> mus;
  std::vector<std::vector<double>> microscopic_n0;  ///< one series per mu
  std::vector<double> lindblad_excited;            ///< <1|rho|1> from the integrated equation
};

/// <n_0(t)> of the chain for each site energy, beside the Lindblad decay of
/// |1> with H_T = diag(e0, e1), L = |0><1| at rate gamma.
inline DecayComparison run_decay_comparison(double B, double C, const std::vector<double>& mus,
                                            std::size_t n_sites, double t_max, double dt,
                                            double gamma, double e0, double e1,
                                            unsigned threads = 1) {
  DecayComparison cmp;
  cmp.times = time_grid(t_max, dt);
  cmp.mus = mus;
  cmp.microscopic_n0.resize(mus.size());
  parallel_for(mus.size(), threads, [&](std::size_t i) {
    const ChainSpec spec{B, C, mus[i], n_sites};
    auto& out = cmp.microscopic_n0[i];
    propagate_visit(build_chain(spec), AmplitudeVector::basis(n_sites, 0), cmp.times,
                    [&](double, const AmplitudeVector& psi) { out.push_back(occupation(psi, 0)); });
  });
  const auto model = spontaneous_decay_model(e0, e1, gamma);
  const auto traj = integrate(model, projector(computational_state(2, 1)), cmp.times);
  for (const auto& rho : traj.states) cmp.lindblad_excited.push_back(rho(1, 1).real());
  return cmp;
}

}  // namespace specdis
