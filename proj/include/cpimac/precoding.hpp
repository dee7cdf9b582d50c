// SPDX-License-Identifier: Apache-2.0
//
// Precoder construction for the cognitive-MAC cases (one MAC transmitter
// knows the point-to-point message). All three users send real-valued
// symbols embedded in the complex plane through 2x1 real precoding vectors:
//
//   X1 = V1*x1,   X2 = V2*x2 + V0*x1,   X3 = V3*x3
//
// V0 and V3 are free directions; V2 and V1 are solved so that
//
//   U21*V2 = U31*V3                       x2 and x3 align at Rx1
//   |h12|*U12*V1 = -|h22|*U22*V0          x1 cancels over the air at Rx2
//
// leaving Rx1 a rank-1 interference subspace to zero-force and Rx2 a clean
// 2D multiple-access channel in x2, x3.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "cpimac/channel.hpp"
#include "cpimac/errors.hpp"
#include "cpimac/linalg.hpp"
#include "cpimac/rng.hpp"

namespace cpimac {

// Receive directions below this (normalized) determinant are treated as
// linearly dependent.
inline constexpr double kIndependenceTol = 1e-9;

// Aligned interference shorter than this has no usable null space.
inline constexpr double kZeroDirectionTol = 1e-12;

// The four 2x1 real precoding vectors plus the per-symbol average powers of
// the real streams x1, x2, x3. x1 is spent twice: on V1 at Tx1 and on V0 at
// the cognitive MAC transmitter.
struct PrecoderSet {
  Vec2 v0, v1, v2, v3;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
};

// Post-precoding geometry at the two receivers:
//   y1 = d1*x1 + i1*(a2*x2 + a3*x3) + z1    (interference aligned on i1)
//   y2 = g2*x2 + g3*x3 + z2                  (x1 neutralized over the air)
struct EffectiveChannels {
  Vec2 d1, i1, g2, g3;
  double a2 = 0.0, a3 = 0.0;
};

namespace detail {

inline void require_nondegenerate(const ChannelRealization& ch) {
  for (int tx = 1; tx <= 3; ++tx) {
    for (int rx = 1; rx <= 2; ++rx) {
      if (ch.mag(tx, rx) < kMagnitudeFloor) {
        throw DegenerateChannel("channel magnitude |h_" + std::to_string(tx) +
                                std::to_string(rx) + "| below floor");
      }
    }
  }
}

}  // namespace detail

// Deterministic core: solves for V2 and V1 given the free directions V0, V3.
// `alpha` is the fraction of the cognitive transmitter's budget reserved for
// relaying x1; the rest goes to its own stream x2.
inline PrecoderSet design_ian_precoders(const ChannelRealization& ch, Vec2 v0,
                                        Vec2 v3, double power, double alpha) {
  detail::require_nondegenerate(ch);
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie strictly inside (0, 1)");
  }
  if (!(power >= 0.0)) {
    throw std::invalid_argument("power must be nonnegative");
  }

  const Mat2& u12 = ch.rot(1, 2).u;
  const Mat2& u21 = ch.rot(2, 1).u;
  const Mat2& u22 = ch.rot(2, 2).u;
  const Mat2& u31 = ch.rot(3, 1).u;

  PrecoderSet pre;
  pre.v0 = v0;
  pre.v3 = v3;
  // Rotations are orthogonal, so the inverses are transposes.
  pre.v2 = transpose(u21) * (u31 * v3);
  pre.v1 = (-ch.mag(2, 2) / ch.mag(1, 2)) * (transpose(u12) * (u22 * v0));

  pre.p3 = power;
  pre.p2 = (1.0 - alpha) * power;
  // x1 is transmitted from both Tx1 (via V1) and the cognitive MAC user
  // (via V0), so its power obeys the tighter of the two budgets.
  pre.p1 = std::min(power / norm_sq(pre.v1), alpha * power);
  return pre;
}

// Draws V0 and V3 uniformly on the unit circle from `seed`, then solves for
// the remaining vectors. Unit-norm free directions keep the power accounting
// trivial: rotations preserve norm, so ||V2|| = 1 and ||V1|| = |h22|/|h12|.
inline PrecoderSet design_ian_precoders(const ChannelRealization& ch,
                                        std::uint64_t seed, double power,
                                        double alpha) {
  Rng rng(seed);
  const auto unit = [&rng]() {
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    return Vec2{std::cos(t), std::sin(t)};
  };
  const Vec2 v0 = unit();
  const Vec2 v3 = unit();
  return design_ian_precoders(ch, v0, v3, power, alpha);
}

// Canonical direction seed for a given channel: a hash of the coefficient
// bits. Every pipeline that needs generic V0/V3 for a channel uses this, so
// the simulate and dof paths agree on the precoders for the same channel.
inline std::uint64_t default_direction_seed(const ChannelRealization& ch) {
  std::uint64_t h = 0x8f1c5a11d0e57ed1ULL;
  for (int tx = 1; tx <= 3; ++tx) {
    for (int rx = 1; rx <= 2; ++rx) {
      const Complex c = ch.coeff(tx, rx);
      h = split_mix64(h ^ std::bit_cast<std::uint64_t>(c.real()));
      h = split_mix64(h ^ std::bit_cast<std::uint64_t>(c.imag()));
    }
  }
  return h;
}

// Residual of the alignment condition U21*V2 = U31*V3, normalized by the
// larger precoder norm; 0 means x2 and x3 land on a common line at Rx1.
inline double verify_alignment(const ChannelRealization& ch,
                               const PrecoderSet& pre) {
  const Vec2 r = ch.rot(2, 1).u * pre.v2 - ch.rot(3, 1).u * pre.v3;
  const double denom = std::max(norm(pre.v2), norm(pre.v3));
  return denom > 0.0 ? norm(r) / denom : 0.0;
}

// Residual of the neutralization condition |h12|*U12*V1 + |h22|*U22*V0 = 0,
// normalized by |h22|*||V0||; 0 means x1 vanishes at Rx2.
inline double verify_neutralization(const ChannelRealization& ch,
                                    const PrecoderSet& pre) {
  const Vec2 r = ch.mag(1, 2) * (ch.rot(1, 2).u * pre.v1) +
                 ch.mag(2, 2) * (ch.rot(2, 2).u * pre.v0);
  const double denom = ch.mag(2, 2) * norm(pre.v0);
  return denom > 0.0 ? norm(r) / denom : 0.0;
}

// Receive-side directions once the precoders satisfy both conditions.
// Throws LinearDependence when a receiver's two directions collapse, which
// has probability zero under random channels and flags an adversarial or
// degenerate input.
inline EffectiveChannels effective_channels(const ChannelRealization& ch,
                                            const PrecoderSet& pre) {
  detail::require_nondegenerate(ch);

  const Mat2& u11 = ch.rot(1, 1).u;
  const Mat2& u12 = ch.rot(1, 2).u;
  const Mat2& u21 = ch.rot(2, 1).u;
  const Mat2& u22 = ch.rot(2, 2).u;
  const Mat2& u31 = ch.rot(3, 1).u;
  const Mat2& u32 = ch.rot(3, 2).u;

  EffectiveChannels eff;
  // x1 at Rx1: the direct path plus the relayed copy through the MAC user.
  eff.d1 = (-ch.mag(1, 1) * ch.mag(2, 2) / ch.mag(1, 2)) *
               (u11 * (transpose(u12) * (u22 * pre.v0))) +
           ch.mag(2, 1) * (u21 * pre.v0);
  eff.i1 = u31 * pre.v3;
  eff.g2 = ch.mag(2, 2) * (u22 * (transpose(u21) * (u31 * pre.v3)));
  eff.g3 = ch.mag(3, 2) * (u32 * pre.v3);
  eff.a2 = ch.mag(2, 1);
  eff.a3 = ch.mag(3, 1);

  if (std::fabs(det(eff.d1, eff.i1)) <=
      kIndependenceTol * norm(eff.d1) * norm(eff.i1)) {
    throw LinearDependence(
        "x1 direction collapses onto the aligned interference at Rx1");
  }
  if (std::fabs(det(eff.g2, eff.g3)) <=
      kIndependenceTol * norm(eff.g2) * norm(eff.g3)) {
    throw LinearDependence("x2 and x3 directions collide at Rx2");
  }
  return eff;
}

// Unit vector orthogonal to the aligned interference i1, signed so that
// q . d1 > 0. Projecting Rx1's signal onto q strips x2 and x3 entirely.
inline Vec2 zero_forcing_direction(const EffectiveChannels& eff) {
  const double len = norm(eff.i1);
  if (len < kZeroDirectionTol) {
    throw ZeroInterferenceDirection(
        "aligned interference direction has zero length");
  }
  Vec2 q = (1.0 / len) * perp(eff.i1);
  const double s = dot(q, eff.d1);
  if (s == 0.0) {
    throw LinearDependence("desired signal lies in the interference line");
  }
  return s < 0.0 ? -q : q;
}

}  // namespace cpimac
