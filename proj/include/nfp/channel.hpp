#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "nfp/errors.hpp"
#include "nfp/geometry.hpp"
#include "nfp/matrix.hpp"
#include "nfp/units.hpp"

namespace nfp {

/// Air-to-ground propagation constants. Excess losses are in dB.
struct ChannelParams {
  double alpha = 9.61;
  double beta = 0.16;
  double eta_los_db = 1.0;
  double eta_nlos_db = 20.0;
  double carrier_hz = 2e9;
  double pl_exponent = 2.0;
  double light_speed = 2.998e8;

  static ChannelParams urban() { return {}; }

  void validate() const {
    if (!(alpha > 0.0)) throw config_error("channel: alpha must be positive");
    if (!(beta > 0.0)) throw config_error("channel: beta must be positive");
    if (!(eta_los_db >= 0.0) || !(eta_nlos_db >= eta_los_db))
      throw config_error("channel: need 0 <= eta_los_db <= eta_nlos_db");
    if (!(carrier_hz > 0.0)) throw config_error("channel: carrier_hz must be positive");
    if (!(pl_exponent >= 2.0)) throw config_error("channel: pl_exponent must be >= 2");
    if (!(light_speed > 0.0)) throw config_error("channel: light_speed must be positive");
  }
};

struct RadioParams {
  double tx_power_w = 5.0;
  double noise_w = 1e-13;
  double sinr_min_db = -5.0;
  double pl_max_db = 110.0;

  void validate() const {
    if (!(tx_power_w > 0.0)) throw config_error("radio: tx_power_w must be positive");
    if (!(noise_w > 0.0)) throw config_error("radio: noise_w must be positive");
    if (!std::isfinite(sinr_min_db) || !std::isfinite(pl_max_db))
      throw config_error("radio: sinr_min_db and pl_max_db must be finite");
  }
};

/// Per (cell, hub) link quantities. Rows are cells, columns hubs.
struct LinkTable {
  Matrix<double> pl_db;
  Matrix<double> sinr_db;
  Matrix<double> spec_eff;      // bits/s/Hz, log2(1 + SINR)
  Matrix<double> bandwidth_hz;  // demanded rate / spec_eff

  std::size_t n_cells() const { return sinr_db.rows(); }
  std::size_t n_hubs() const { return sinr_db.cols(); }
};

/// Probability of line of sight at elevation angle `theta` (radians, in (0, pi/2]).
inline double p_los(const ChannelParams& params, double theta) {
  if (!(theta > 0.0) || theta > std::numbers::pi / 2.0)
    throw domain_error("p_los: elevation angle outside (0, pi/2]");
  const double degrees = theta * 180.0 / std::numbers::pi;
  return 1.0 / (1.0 + params.alpha * std::exp(-params.beta * (degrees - params.alpha)));
}

inline double p_nlos(const ChannelParams& params, double theta) {
  return 1.0 - p_los(params, theta);
}

/// Free-space term 10 log10((4 pi f d / c)^gamma).
inline double free_space_loss_db(const ChannelParams& params, double distance) {
  return 10.0 * params.pl_exponent *
         std::log10(4.0 * std::numbers::pi * params.carrier_hz * distance / params.light_speed);
}

/// Average path loss for ground horizontal offset `s` and altitude `h`.
inline double path_loss_db(const ChannelParams& params, double s, double h) {
  const double d = std::hypot(h, s);
  if (!(d > 0.0)) throw domain_error("path_loss_db: zero link distance");
  const double theta = s == 0.0 ? std::numbers::pi / 2.0 : std::atan(h / s);
  const double los = p_los(params, theta);
  return free_space_loss_db(params, d) + los * params.eta_los_db +
         (1.0 - los) * params.eta_nlos_db;
}

inline double path_loss_db(const ChannelParams& params, const Point2& cell, const Point3& hub) {
  return path_loss_db(params, horizontal_distance(cell, hub), hub.h);
}

inline double received_power_w(const RadioParams& radio, double pl_db) {
  return radio.tx_power_w * from_db(-pl_db);
}

/// Serving power over co-channel interference from every other hub plus noise.
inline double sinr_linear(const RadioParams& radio, std::span<const double> rx_powers,
                          std::size_t serving) {
  double interference = 0.0;
  for (std::size_t j = 0; j < rx_powers.size(); ++j)
    if (j != serving) interference += rx_powers[j];
  return rx_powers[serving] / (interference + radio.noise_w);
}

inline double spectral_efficiency(double sinr_lin) { return std::log2(1.0 + sinr_lin); }

/// Fills all four matrices. `rates[i]` is the demand of cell i towards every hub.
inline LinkTable build_link_table(const ChannelParams& channel, const RadioParams& radio,
                                  std::span<const Point2> cells, std::span<const bps> rates,
                                  std::span<const Point3> hubs) {
  if (cells.size() != rates.size())
    throw domain_error("build_link_table: cells and rates differ in length");
  const std::size_t n = cells.size();
  const std::size_t m = hubs.size();
  LinkTable t{Matrix<double>(n, m), Matrix<double>(n, m), Matrix<double>(n, m),
              Matrix<double>(n, m)};
  std::vector<double> rx(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      t.pl_db(i, j) = path_loss_db(channel, cells[i], hubs[j]);
      rx[j] = received_power_w(radio, t.pl_db(i, j));
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double sinr = sinr_linear(radio, rx, j);
      t.sinr_db(i, j) = to_db(sinr);
      t.spec_eff(i, j) = spectral_efficiency(sinr);
      t.bandwidth_hz(i, j) = static_cast<double>(rates[i]) / t.spec_eff(i, j);
    }
  }
  return t;
}

/// Horizontal distance at which the average path loss from altitude `h` reaches
/// `pl_max_db`. Bisection on a bracket whose monotonicity is checked first.
inline double coverage_radius(const ChannelParams& params, double h, double pl_max_db) {
  constexpr double kResidualDb = 0.01;
  constexpr double kMaxBracket = 1e7;
  constexpr int kMonotoneSamples = 2000;

  if (!(h > 0.0)) throw domain_error("coverage_radius: altitude must be positive");
  const auto pl = [&](double s) { return path_loss_db(params, s, h); };
  if (pl(0.0) >= pl_max_db)
    throw infeasible_error("coverage_radius: path loss directly below the hub already reaches "
                           "the limit");

  double hi = 10'000.0;
  while (pl(hi) < pl_max_db) {
    hi *= 2.0;
    if (hi > kMaxBracket) throw infeasible_error("coverage_radius: no root below 1e7 m");
  }

  double prev = pl(0.0);
  for (int k = 1; k <= kMonotoneSamples; ++k) {
    const double cur = pl(hi * k / kMonotoneSamples);
    if (!(cur > prev)) throw domain_error("coverage_radius: path loss not increasing on bracket");
    prev = cur;
  }

  double lo = 0.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-9 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (pl(mid) < pl_max_db ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  if (std::abs(pl(root) - pl_max_db) > kResidualDb)
    throw domain_error("coverage_radius: bisection residual above tolerance");
  return root;
}

}  // namespace nfp
