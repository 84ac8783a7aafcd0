#pragma once

// Decay vs. trapping for the single-impurity chain.
//
// The chain decays (purely absolutely continuous spectrum, every site-0
// excitation eventually leaves) exactly when it has no eigenvalue outside the
// band [-2B, 2B]. Two independent routes decide this:
//
//  * decay_condition: the closed-form inequality in (mu/B, C/B), with its
//    C = B and mu = 0 special cases;
//  * find_bound_states: the exact bound-state solver. With the ansatz
//    psi_0 = A B / C, psi_j = A x^j (j >= 1) the eigenvalue equations reduce
//    to E = B (x + 1/x) and (C_B^2 - 1) x^2 + mu_B x - 1 = 0; every root with
//    |x| < 1 is a normalizable bound state.
//
// find_bound_states is the reference; decay_condition is the fast screen.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "specdis/error.hpp"
#include "specdis/parallel.hpp"

namespace specdis {

/// |x| within this distance of 1 counts as a threshold (boundary) state.
inline constexpr double kThresholdTolerance = 1e-12;

enum class CriterionBranch { general, c_equals_b, mu_zero };

inline const char* to_string(CriterionBranch b) {
  switch (b) {
    case CriterionBranch::general: return "general";
    case CriterionBranch::c_equals_b: return "c_equals_b";
    case CriterionBranch::mu_zero: return "mu_zero";
  }
  return "unknown";
}

struct BoundState {
  double x = 0.0;           ///< amplitude ratio psi_{j+1} / psi_j in the bulk
  double energy = 0.0;      ///< in units of B
  double overlap_sq = 0.0;  ///< |<bound|e_0>|^2
  /// |x| == 1 to kThresholdTolerance: a non-normalizable band-edge state,
  /// kept so boundary points classify as trapped. overlap_sq is 0.
  bool threshold = false;
};

struct DecayVerdict {
  bool decays = true;
  std::vector<BoundState> bound_states;
  CriterionBranch criterion_branch = CriterionBranch::general;
};

namespace detail {

inline void require_positive_coupling(double mu_B, double C_B) {
  if (!std::isfinite(mu_B) || !std::isfinite(C_B)) {
    throw InvalidArgument("mu_B and C_B must be finite");
  }
  if (C_B <= 0.0) throw InvalidArgument("C_B must be positive, got " + std::to_string(C_B));
}

inline CriterionBranch select_branch(double mu_B, double C_B) {
  if (std::abs(C_B - 1.0) < 1e-12) return CriterionBranch::c_equals_b;
  if (mu_B == 0.0) return CriterionBranch::mu_zero;
  return CriterionBranch::general;
}

}  // namespace detail

/// Closed-form screen: true iff no bound state exists. Ties (equality) are
/// trapped. A negative radicand means complex roots with |x| > 1, i.e. decay.
inline bool decay_condition(double mu_B, double C_B) {
  detail::require_positive_coupling(mu_B, C_B);
  switch (detail::select_branch(mu_B, C_B)) {
    case CriterionBranch::c_equals_b:
      return std::abs(mu_B) < 1.0;
    case CriterionBranch::mu_zero:
      return C_B < std::sqrt(2.0);
    case CriterionBranch::general:
      break;
  }
  const double radicand = mu_B * mu_B + 4.0 * C_B * C_B - 4.0;
  if (radicand < 0.0) return true;
  return 2.0 * std::abs(1.0 - C_B * C_B) < std::abs(std::abs(mu_B) - std::sqrt(radicand));
}

/// Bound states of the semi-infinite chain, energies in units of B.
inline std::vector<BoundState> find_bound_states(double mu_B, double C_B) {
  detail::require_positive_coupling(mu_B, C_B);

  std::vector<double> roots;
  const double a = C_B * C_B - 1.0;
  if (std::abs(C_B - 1.0) < 1e-12) {
    if (mu_B != 0.0) roots.push_back(1.0 / mu_B);
  } else {
    const double disc = mu_B * mu_B + 4.0 * a;
    if (disc >= 0.0) {
      // a x^2 + mu_B x - 1 = 0, cancellation-free pair
      const double sign = mu_B < 0.0 ? -1.0 : 1.0;
      const double q = -0.5 * (mu_B + sign * std::sqrt(disc));
      roots.push_back(q / a);
      if (disc > 0.0 && q != 0.0) roots.push_back(-1.0 / q);
    }
  }

  std::vector<BoundState> states;
  for (double x : roots) {
    const double ax = std::abs(x);
    if (ax > 1.0 + kThresholdTolerance) continue;
    BoundState s;
    if (ax >= 1.0 - kThresholdTolerance) {
      s.x = x > 0.0 ? 1.0 : -1.0;
      s.energy = 2.0 * s.x;
      s.overlap_sq = 0.0;
      s.threshold = true;
    } else {
      s.x = x;
      s.energy = x + 1.0 / x;
      // |psi_0|^2 / (|psi_0|^2 + sum_{j>=1} |psi_j|^2) with psi_0 = A / C_B
      const double bulk = x * x / (1.0 - x * x);
      const double head = 1.0 / (C_B * C_B);
      s.overlap_sq = head / (head + bulk);
    }
    states.push_back(s);
  }
  return states;
}

/// Long-time average of <n_0(t)> starting from e_0: sum of |<b|e_0>|^4.
inline double trapped_weight(double mu_B, double C_B) {
  double w = 0.0;
  for (const auto& s : find_bound_states(mu_B, C_B)) w += s.overlap_sq * s.overlap_sq;
  return w;
}

inline DecayVerdict classify(double mu_B, double C_B) {
  DecayVerdict v;
  v.bound_states = find_bound_states(mu_B, C_B);
  v.decays = v.bound_states.empty();
  v.criterion_branch = detail::select_branch(mu_B, C_B);
  return v;
}

/// Inclusive uniform grid lo, lo+step, ..., <= hi.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  void validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step)) {
      throw InvalidArgument("grid bounds must be finite");
    }
    if (step <= 0.0) throw InvalidArgument("grid step must be positive");
    if (hi < lo) throw InvalidArgument("grid upper bound below lower bound");
  }

  [[nodiscard]] std::vector<double> values() const {
    validate();
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
    return v;
  }

  /// Parses "lo:hi:step".
  static GridSpec parse(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? first : text.find(':', first + 1);
    if (second == std::string::npos) {
      throw InvalidArgument("grid must be written lo:hi:step, got '" + text + "'");
    }
    try {
      GridSpec g{std::stod(text.substr(0, first)),
                 std::stod(text.substr(first + 1, second - first - 1)),
                 std::stod(text.substr(second + 1))};
      g.validate();
      return g;
    } catch (const std::logic_error&) {
      throw InvalidArgument("grid must be written lo:hi:step, got '" + text + "'");
    }
  }
};

/// Row-major over C_B (outer) then mu_B (inner).
struct PhaseDiagram {
  std::vector<double> mu_values;
  std::vector<double> c_values;
  std::vector<DecayVerdict> cells;

  [[nodiscard]] const DecayVerdict& at(std::size_t ic, std::size_t imu) const {
    return cells.at(ic * mu_values.size() + imu);
  }
};

inline PhaseDiagram phase_diagram(const GridSpec& mu_range, const GridSpec& c_range,
                                  unsigned threads = 1) {
  PhaseDiagram pd;
  pd.mu_values = mu_range.values();
  pd.c_values = c_range.values();
  for (double c : pd.c_values) {
    if (c <= 0.0) throw InvalidArgument("C_B grid must be strictly positive");
  }
  const std::size_t nmu = pd.mu_values.size();
  pd.cells.resize(nmu * pd.c_values.size());
  parallel_for(pd.c_values.size(), threads, [&](std::size_t ic) {
    for (std::size_t imu = 0; imu < nmu; ++imu) {
      pd.cells[ic * nmu + imu] = classify(pd.mu_values[imu], pd.c_values[ic]);
    }
  });
  return pd;
}

}  // namespace specdis
