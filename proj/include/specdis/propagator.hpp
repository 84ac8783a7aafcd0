#pragma once

// Exact time evolution psi(t) = exp(-i H t) psi(0) on a truncated chain
// (hbar = 1), and the site observables built on it.
//
// The exponential is applied with a Chebyshev expansion,
//
//   exp(-i H dt) = exp(-i a dt) sum_k (2 - delta_k0) (-i)^k J_k(b dt) T_k(H~),
//   H~ = (H - a) / b,
//
// where [a - b, a + b] encloses the spectrum. Each step costs O(N) per term
// and needs only the two bands of H.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specdis/chain_model.hpp"
#include "specdis/error.hpp"

namespace specdis {

using cplx = std::complex<double>;

/// Unit-norm tolerance for states and every propagation step.
inline constexpr double kNormTolerance = 1e-10;
/// <n_{N-1}> above this marks the wavefront reaching the wall.
inline constexpr double kBoundaryThreshold = 1e-3;

/// Normalized complex amplitudes over the chain basis e_j.
class AmplitudeVector {
 public:
  explicit AmplitudeVector(std::vector<cplx> amps) : amps_(std::move(amps)) {
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw InvalidArgument("amplitudes must be finite");
      }
    }
    if (amps_.empty()) throw InvalidArgument("amplitude vector is empty");
    if (std::abs(norm() - 1.0) > kNormTolerance) {
      throw InvalidArgument("amplitude vector is not normalized (norm " +
                            std::to_string(norm()) + ")");
    }
  }

  /// e_site on an n-site chain.
  static AmplitudeVector basis(std::size_t n, std::size_t site) {
    if (site >= n) throw std::out_of_range("basis site outside the chain");
    std::vector<cplx> v(n);
    v[site] = 1.0;
    return AmplitudeVector(std::move(v));
  }

  [[nodiscard]] std::size_t size() const { return amps_.size(); }
  [[nodiscard]] const cplx& operator[](std::size_t j) const { return amps_[j]; }
  [[nodiscard]] std::span<const cplx> amplitudes() const { return amps_; }

  [[nodiscard]] double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

 private:
  friend class ChebyshevPropagator;
  std::vector<cplx> amps_;
};

inline double occupation(const AmplitudeVector& psi, std::size_t site) {
  if (site >= psi.size()) throw std::out_of_range("site index outside the chain");
  return std::norm(psi[site]);
}

/// Even-odd difference sum_j (-1)^j |psi_j|^2.
inline double parity(const AmplitudeVector& psi) {
  double p = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    p += (j % 2 == 0 ? 1.0 : -1.0) * std::norm(psi[j]);
  }
  return p;
}

/// Light-cone estimate N / (2B) of how long the truncated chain behaves like
/// the semi-infinite one.
inline double valid_horizon(const ChainSpec& spec) {
  return static_cast<double>(spec.n_sites) / (2.0 * spec.B);
}

/// Sites needed to reach t_max inside the light cone with the given margin.
inline std::size_t recommended_sites(double B, double t_max, double margin = 1.25) {
  return static_cast<std::size_t>(std::ceil(2.0 * B * t_max * margin));
}

/// 0, dt, 2 dt, ... up to t_max (t_max itself included when it lands on the grid).
inline std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be non-negative");
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> t(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

class ChebyshevPropagator {
 public:
  explicit ChebyshevPropagator(ChainHamiltonian h) : h_(std::move(h)) {
    if (h_.size() == 0 || h_.offdiag.size() + 1 != h_.size()) {
      throw DimensionMismatch("malformed tridiagonal Hamiltonian");
    }
    for (double v : h_.diag) {
      if (!std::isfinite(v)) throw InvalidArgument("Hamiltonian entries must be finite");
    }
    for (double v : h_.offdiag) {
      if (!std::isfinite(v)) throw InvalidArgument("Hamiltonian entries must be finite");
    }
    const auto [lo, hi] = h_.spectral_bounds();
    center_ = 0.5 * (hi + lo);
    half_width_ = 0.5 * (hi - lo) * 1.01 + 1e-12;
    work_.resize(4, std::vector<cplx>(h_.size()));
  }

  [[nodiscard]] std::size_t size() const { return h_.size(); }
  [[nodiscard]] const ChainHamiltonian& hamiltonian() const { return h_; }

  /// psi <- exp(-i H dt) psi. Negative dt runs backwards.
  void advance(std::span<cplx> psi, double dt) {
    if (psi.size() != h_.size()) throw DimensionMismatch("state length does not match chain");
    if (!std::isfinite(dt)) throw InvalidArgument("time step must be finite");
    if (dt == 0.0) return;
    const double x = half_width_ * std::abs(dt);
    const auto pieces = static_cast<std::size_t>(std::ceil(x / kMaxArgument));
    const double sub = dt / static_cast<double>(std::max<std::size_t>(pieces, 1));
    const auto& coeffs = coefficients(sub);
    for (std::size_t p = 0; p < std::max<std::size_t>(pieces, 1); ++p) apply_series(psi, coeffs, sub);
  }

  void advance(AmplitudeVector& psi, double dt) { advance(std::span<cplx>(psi.amps_), dt); }

 private:
  static constexpr double kMaxArgument = 100.0;
  static constexpr double kSeriesCutoff = 1e-17;

  const std::vector<cplx>& coefficients(double dt) {
    if (dt == cached_dt_) return cached_coeffs_;
    const double x = half_width_ * std::abs(dt);
    const cplx unit = dt > 0.0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
    std::vector<cplx> c;
    cplx phase = 1.0;
    for (unsigned k = 0;; ++k) {
      const double jk = std::cyl_bessel_j(static_cast<double>(k), x);
      c.push_back((k == 0 ? 1.0 : 2.0) * phase * jk);
      phase *= unit;
      if (k > x && std::abs(jk) < kSeriesCutoff) break;
    }
    cached_dt_ = dt;
    cached_coeffs_ = std::move(c);
    return cached_coeffs_;
  }

  // out = (H - a) / b * in
  void apply_scaled(std::span<const cplx> in, std::span<cplx> out) const {
    h_.apply(in, out);
    const double inv = 1.0 / half_width_;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] - center_ * in[j]) * inv;
  }

  void apply_series(std::span<cplx> psi, const std::vector<cplx>& coeffs, double dt) {
    auto& prev = work_[0];
    auto& curr = work_[1];
    auto& next = work_[2];
    auto& acc = work_[3];
    std::copy(psi.begin(), psi.end(), prev.begin());
    for (std::size_t j = 0; j < psi.size(); ++j) acc[j] = coeffs[0] * prev[j];
    if (coeffs.size() > 1) {
      apply_scaled(prev, curr);
      for (std::size_t j = 0; j < psi.size(); ++j) acc[j] += coeffs[1] * curr[j];
    }
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
      apply_scaled(curr, next);
      for (std::size_t j = 0; j < psi.size(); ++j) {
        next[j] = 2.0 * next[j] - prev[j];
        acc[j] += coeffs[k] * next[j];
      }
      std::swap(prev, curr);
      std::swap(curr, next);
    }
    const cplx shift = std::exp(cplx(0.0, -center_ * dt));
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = shift * acc[j];
  }

  ChainHamiltonian h_;
  double center_ = 0.0;
  double half_width_ = 1.0;
  double cached_dt_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<cplx> cached_coeffs_;
  std::vector<std::vector<cplx>> work_;
};

namespace detail {

inline void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw InvalidArgument("sample times must be finite and non-negative");
    }
    if (i > 0 && times[i] < times[i - 1]) throw InvalidArgument("sample times must be sorted");
  }
}

inline void check_unitarity(const AmplitudeVector& psi, double t) {
  const double drift = std::abs(psi.norm() - 1.0);
  if (!(drift < kNormTolerance)) {
    throw NumericalFailure("norm drift " + std::to_string(drift) + " at t = " + std::to_string(t));
  }
}

}  // namespace detail

/// Calls visit(t, psi(t)) for every sample time, in order. Every sampled
/// state is checked for unit norm.
template <class Visitor>
void propagate_visit(const ChainHamiltonian& h, const AmplitudeVector& psi0,
                     std::span<const double> times, Visitor&& visit) {
  if (psi0.size() != h.size()) {
    throw DimensionMismatch("initial state has " + std::to_string(psi0.size()) +
                            " amplitudes, chain has " + std::to_string(h.size()) + " sites");
  }
  detail::check_times(times);
  ChebyshevPropagator prop(h);
  AmplitudeVector psi = psi0;
  double now = 0.0;
  for (double t : times) {
    prop.advance(psi, t - now);
    now = t;
    detail::check_unitarity(psi, t);
    visit(t, static_cast<const AmplitudeVector&>(psi));
  }
}

inline std::vector<AmplitudeVector> propagate(const ChainHamiltonian& h,
                                              const AmplitudeVector& psi0,
                                              std::span<const double> times) {
  std::vector<AmplitudeVector> out;
  out.reserve(times.size());
  propagate_visit(h, psi0, times, [&](double, const AmplitudeVector& psi) { out.push_back(psi); });
  return out;
}

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// Site occupation n_j or the parity P.
struct Observable {
  enum class Kind { occupation, parity };
  Kind kind = Kind::occupation;
  std::size_t site = 0;
  bool last_site = false;  ///< occupation of site N-1, whatever N is

  [[nodiscard]] std::string name() const {
    if (kind == Kind::parity) return "parity";
    return last_site ? "nlast" : "n" + std::to_string(site);
  }

  [[nodiscard]] double evaluate(const AmplitudeVector& psi) const {
    if (kind == Kind::parity) return specdis::parity(psi);
    return occupation(psi, last_site ? psi.size() - 1 : site);
  }

  /// "n<j>", "nlast" or "parity".
  static Observable parse(const std::string& text) {
    if (text == "parity" || text == "P") return {Kind::parity, 0, false};
    if (text == "nlast") return {Kind::occupation, 0, true};
    if (text.size() > 1 && text[0] == 'n' &&
        text.find_first_not_of("0123456789", 1) == std::string::npos) {
      return {Kind::occupation, static_cast<std::size_t>(std::stoul(text.substr(1))), false};
    }
    throw InvalidArgument("unknown observable '" + text + "' (use n<j>, nlast or parity)");
  }
};

struct PropagationResult {
  std::map<std::string, ObservableSeries> series;
  std::optional<double> boundary_time;  ///< first sample with <n_{N-1}> > kBoundaryThreshold
  double valid_horizon = 0.0;
};

inline PropagationResult simulate(const ChainSpec& spec, const AmplitudeVector& psi0,
                                  std::span<const double> times,
                                  std::span<const Observable> observables) {
  const ChainHamiltonian h = build_chain(spec);
  for (const auto& o : observables) {
    if (o.kind == Observable::Kind::occupation && !o.last_site && o.site >= spec.n_sites) {
      throw InvalidArgument("observable " + o.name() + " outside the chain");
    }
  }
  PropagationResult result;
  result.valid_horizon = valid_horizon(spec);
  for (const auto& o : observables) result.series[o.name()];
  propagate_visit(h, psi0, times, [&](double t, const AmplitudeVector& psi) {
    for (const auto& o : observables) {
      auto& s = result.series[o.name()];
      s.times.push_back(t);
      s.values.push_back(o.evaluate(psi));
    }
    if (!result.boundary_time && occupation(psi, psi.size() - 1) > kBoundaryThreshold) {
      result.boundary_time = t;
    }
  });
  return result;
}

struct OccupationHeatmap {
  std::vector<double> times;
  std::size_t n_sites = 0;
  std::vector<double> occupations;  ///< row-major (time, site)
  std::optional<double> boundary_time;

  [[nodiscard]] double at(std::size_t it, std::size_t site) const {
    return occupations.at(it * n_sites + site);
  }
};

inline OccupationHeatmap occupation_heatmap(const ChainSpec& spec, const AmplitudeVector& psi0,
                                            double t_max, double dt) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  OccupationHeatmap map;
  map.times = time_grid(t_max, dt);
  map.n_sites = spec.n_sites;
  map.occupations.reserve(map.times.size() * spec.n_sites);
  propagate_visit(build_chain(spec), psi0, map.times, [&](double t, const AmplitudeVector& psi) {
    for (std::size_t j = 0; j < psi.size(); ++j) map.occupations.push_back(std::norm(psi[j]));
    if (!map.boundary_time && std::norm(psi[psi.size() - 1]) > kBoundaryThreshold) {
      map.boundary_time = t;
    }
  });
  return map;
}

struct TimeWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Negated least-squares slope of ln(value) against time inside the window.
inline double fit_decay_rate(const ObservableSeries& series, TimeWindow window) {
  if (series.times.size() != series.values.size()) {
    throw DimensionMismatch("series times and values differ in length");
  }
  std::vector<double> t;
  std::vector<double> y;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] < window.lo || series.times[i] > window.hi) continue;
    if (!(series.values[i] > 0.0)) {
      throw InvalidArgument("non-positive value at t = " + std::to_string(series.times[i]));
    }
    t.push_back(series.times[i]);
    y.push_back(std::log(series.values[i]));
  }
  if (t.size() < 5) throw InvalidArgument("decay-rate window holds fewer than 5 samples");
  // centre on the first sample so a constant series gives an exact zero
  double tm = 0.0;
  double ym = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    tm += t[i] - t[0];
    ym += y[i] - y[0];
  }
  tm /= static_cast<double>(t.size());
  ym /= static_cast<double>(t.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dx = t[i] - t[0] - tm;
    sxy += dx * (y[i] - y[0] - ym);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

/// Mean of the series over samples inside the window.
inline double window_average(const ObservableSeries& series, TimeWindow window) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    if (series.times[i] < window.lo || series.times[i] > window.hi) continue;
    sum += series.values[i];
    ++count;
  }
  if (count == 0) throw InvalidArgument("averaging window holds no samples");
  return sum / static_cast<double>(count);
}

}  // namespace specdis
