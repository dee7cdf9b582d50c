// SPDX-License-Identifier: Apache-2.0
//
// Degrees-of-freedom estimation: at high SNR the sum rate of every scheme
// here is affine in log2(P), and the slope is the DoF. The estimator
// averages the sum rate over a channel batch at each grid power and fits an
// ordinary least-squares line; a poor fit means the grid is not asymptotic
// or the scheme is broken, and is reported as an error rather than a number.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cpimac/channel.hpp"
#include "cpimac/errors.hpp"
#include "cpimac/rates.hpp"

namespace cpimac {

inline constexpr double kMinGridPointDb = 40.0;
inline constexpr double kMinGridSpanDb = 40.0;
inline constexpr std::size_t kMinGridPoints = 4;
inline constexpr double kMinRSquared = 0.99;

// Rate curves that can be swept: the three achievable schemes plus the
// matching-case converse bound.
enum class RateCurve { Tdm, JointDecoding, Ian, UpperBound };

constexpr std::string_view to_string(RateCurve c) {
  switch (c) {
    case RateCurve::Tdm:
      return "tdm";
    case RateCurve::JointDecoding:
      return "joint";
    case RateCurve::Ian:
      return "ian";
    case RateCurve::UpperBound:
      return "upper_bound";
  }
  return "?";
}

constexpr RateCurve to_curve(Scheme s) {
  switch (s) {
    case Scheme::Tdm:
      return RateCurve::Tdm;
    case Scheme::JointDecoding:
      return RateCurve::JointDecoding;
    case Scheme::Ian:
      return RateCurve::Ian;
  }
  return RateCurve::Tdm;
}

struct DofEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> grid;  // (P_dB, averaged R_sum)
};

// Fits the channel-averaged sum rate against log2(P). `sum_rate` is invoked
// as sum_rate(channel, P) for every channel/power combination.
template <class SumRateFn>
DofEstimate estimate_dof(SumRateFn&& sum_rate,
                         std::span<const ChannelRealization> channels,
                         std::span<const double> grid_db) {
  if (channels.empty()) {
    throw InsufficientGrid("estimate_dof: channel batch is empty");
  }
  if (grid_db.size() < kMinGridPoints) {
    throw InsufficientGrid("estimate_dof: need at least 4 grid points");
  }
  double lo = grid_db[0], hi = grid_db[0];
  for (const double p : grid_db) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (lo < kMinGridPointDb) {
    throw InsufficientGrid("estimate_dof: grid must start at 40 dB or above");
  }
  if (hi - lo < kMinGridSpanDb) {
    throw InsufficientGrid("estimate_dof: grid must span at least 40 dB");
  }

  DofEstimate est;
  est.grid.reserve(grid_db.size());
  for (const double p_db : grid_db) {
    const double p = db_to_linear(p_db);
    double acc = 0.0;
    for (const ChannelRealization& ch : channels) {
      acc += sum_rate(ch, p);
    }
    est.grid.emplace_back(p_db, acc / static_cast<double>(channels.size()));
  }

  // OLS of averaged rate against log2(P).
  const double n = static_cast<double>(est.grid.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [p_db, r] : est.grid) {
    mean_x += std::log2(db_to_linear(p_db));
    mean_y += r;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [p_db, r] : est.grid) {
    const double dx = std::log2(db_to_linear(p_db)) - mean_x;
    const double dy = r - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  est.slope = sxy / sxx;
  est.intercept = mean_y - est.slope * mean_x;
  if (syy <= 0.0) {
    throw PoorFit("estimate_dof: rates do not vary across the grid");
  }
  double ss_res = 0.0;
  for (const auto& [p_db, r] : est.grid) {
    const double fit = est.intercept + est.slope * std::log2(db_to_linear(p_db));
    ss_res += (r - fit) * (r - fit);
  }
  est.r_squared = 1.0 - ss_res / syy;
  if (est.r_squared < kMinRSquared) {
    throw PoorFit("estimate_dof: r_squared " + std::to_string(est.r_squared) +
                  " below 0.99; grid not asymptotic or scheme broken");
  }
  return est;
}

// Tag-dispatched wrapper over the named rate curves.
inline DofEstimate estimate_dof(RateCurve curve, const CognitionCase& kase,
                                std::span<const ChannelRealization> channels,
                                std::span<const double> grid_db,
                                double alpha = 0.5) {
  switch (curve) {
    case RateCurve::Tdm:
    case RateCurve::JointDecoding:
    case RateCurve::Ian: {
      const Scheme scheme = curve == RateCurve::Tdm ? Scheme::Tdm
                            : curve == RateCurve::JointDecoding
                                ? Scheme::JointDecoding
                                : Scheme::Ian;
      return estimate_dof(
          [&kase, scheme, alpha](const ChannelRealization& ch, double p) {
            return rate_for_scheme(kase, scheme, ch, p, alpha).sum();
          },
          channels, grid_db);
    }
    case RateCurve::UpperBound:
      return estimate_dof(
          [&kase](const ChannelRealization& ch, double p) {
            return upper_bound(kase, ch, p);
          },
          channels, grid_db);
  }
  throw std::logic_error("unreachable rate curve");
}

}  // namespace cpimac
