// SPDX-License-Identifier: Apache-2.0
//
// Closed-form achievable rates for the three transmission schemes and the
// matching sum-rate upper bounds. Everything is in bits per complex channel
// use, log base 2 throughout. Squared channel symbols always mean |h|^2.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cpimac/channel.hpp"
#include "cpimac/errors.hpp"
#include "cpimac/precoding.hpp"

namespace cpimac {

enum class Scheme { Tdm, JointDecoding, Ian };

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Tdm:
      return "tdm";
    case Scheme::JointDecoding:
      return "joint";
    case Scheme::Ian:
      return "ian";
  }
  return "?";
}

inline Scheme parse_scheme(std::string_view token) {
  if (token == "tdm") return Scheme::Tdm;
  if (token == "joint") return Scheme::JointDecoding;
  if (token == "ian") return Scheme::Ian;
  throw ConfigError("unknown scheme '" + std::string(token) +
                    "' (expected tdm, joint or ian)");
}

// A rate triple in bits per complex channel use.
struct RatePoint {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  Scheme scheme = Scheme::Tdm;

  double sum() const { return r1 + r2 + r3; }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// log2(1 + x). log1p keeps precision at both ends of the SNR range.
inline double shannon(double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("shannon: SNR argument must be nonnegative");
  }
  return std::numbers::log2e * std::log1p(x);
}

// Time division: Tx1 gets half the slot at power 2P, the MAC pair the other
// half. The MAC half-slot sum is split at the successive-decoding corner
// with x3 decoded first (against x2 as noise), then stripped.
inline RatePoint rate_tdm(const ChannelRealization& ch, double power) {
  if (!(power >= 0.0)) {
    throw std::invalid_argument("power must be nonnegative");
  }
  const double a = ch.mag(1, 1) * ch.mag(1, 1);
  const double b = ch.mag(2, 2) * ch.mag(2, 2);
  const double c = ch.mag(3, 2) * ch.mag(3, 2);

  RatePoint rp;
  rp.scheme = Scheme::Tdm;
  rp.r1 = 0.5 * shannon(2.0 * a * power);
  const double mac_half = 0.5 * shannon(2.0 * power * (b + c));
  rp.r3 = 0.5 * shannon(2.0 * c * power / (1.0 + 2.0 * b * power));
  rp.r2 = std::max(0.0, mac_half - rp.r3);
  return rp;
}

// Every message decoded at both receivers; the sum rate is the MAC sum
// capacity of the weaker receiver. The per-user split is a reporting
// convention: proportional to each transmitter's received power at the
// bottleneck receiver.
inline RatePoint rate_joint_decoding(const ChannelRealization& ch,
                                     double power) {
  if (!(power >= 0.0)) {
    throw std::invalid_argument("power must be nonnegative");
  }
  const auto received_sum = [&ch](int rx) {
    double s = 0.0;
    for (int tx = 1; tx <= 3; ++tx) {
      s += ch.mag(tx, rx) * ch.mag(tx, rx);
    }
    return s;
  };
  const double s1 = received_sum(1);
  const double s2 = received_sum(2);
  const int bottleneck = s1 <= s2 ? 1 : 2;
  const double s = std::min(s1, s2);

  RatePoint rp;
  rp.scheme = Scheme::JointDecoding;
  const double sum = shannon(power * s);
  rp.r1 = sum * ch.mag(1, bottleneck) * ch.mag(1, bottleneck) / s;
  rp.r2 = sum * ch.mag(2, bottleneck) * ch.mag(2, bottleneck) / s;
  rp.r3 = sum * ch.mag(3, bottleneck) * ch.mag(3, bottleneck) / s;
  return rp;
}

// Rates of the alignment-plus-neutralization scheme. Rx1 zero-forces the
// aligned interference and decodes the real symbol x1 over a scalar channel
// with noise variance 1/2; Rx2 sees a clean 2D real MAC in x2, x3 with noise
// covariance (1/2)I. The leading 1/2 everywhere is the real-signaling cost
// per complex channel use; the factor 2 inside is the 1/(1/2) noise scaling.
inline RatePoint rate_ian(const ChannelRealization& /*ch*/,
                          const PrecoderSet& pre, const EffectiveChannels& eff,
                          double power) {
  if (!(power >= 0.0)) {
    throw std::invalid_argument("power must be nonnegative");
  }
  if (std::fabs(pre.p3 - power) > 1e-9 * std::max(1.0, power)) {
    throw std::invalid_argument(
        "precoder powers were derived for a different P");
  }

  const Vec2 q = zero_forcing_direction(eff);
  const double gain = dot(q, eff.d1);

  RatePoint rp;
  rp.scheme = Scheme::Ian;
  rp.r1 = 0.5 * shannon(2.0 * gain * gain * pre.p1);

  // det(I + 2 [g2 g3] diag(p2,p3) [g2 g3]^T) expanded through the Gram
  // identity; every term is nonnegative, so no cancellation at high SNR.
  const double g22 = norm_sq(eff.g2);
  const double g33 = norm_sq(eff.g3);
  const double cross = det(eff.g2, eff.g3);
  const double det_a = 1.0 + 2.0 * pre.p2 * g22 + 2.0 * pre.p3 * g33 +
                       4.0 * pre.p2 * pre.p3 * cross * cross;
  const double sum23 = 0.5 * std::log2(det_a);
  rp.r2 = 0.5 * shannon(2.0 * pre.p2 * g22);
  rp.r3 = std::max(0.0, sum23 - rp.r2);
  return rp;
}

// Worst-case input correlations for the converse bounds. A cognitive
// transmitter can correlate its signal with the message it knows; a valid
// bound over all codebooks takes Re[rho] at +1.
struct UpperBoundParams {
  CognitionCase kase;
  Complex rho12{1.0, 0.0};
  Complex rho13{1.0, 0.0};

  UpperBoundParams(const CognitionCase& c, Complex r12, Complex r13)
      : kase(c), rho12(r12), rho13(r13) {
    if (std::abs(r12) > 1.0 + 1e-12 || std::abs(r13) > 1.0 + 1e-12) {
      throw std::invalid_argument("correlation coefficients must have |rho| <= 1");
    }
  }

  static UpperBoundParams worst_case(const CognitionCase& c) {
    return UpperBoundParams(c, Complex{1.0, 0.0}, Complex{1.0, 0.0});
  }
};

// Sum-rate upper bound in bits per complex channel use.
//
// Cases 1 and 2: every signal resolved at Rx2, plus what Rx1 still learns
// about m1 once Rx2's observation is handed over:
//   C(P(|h12|^2+|h22|^2+|h32|^2)) + C(|h11|^2 P / (1+|h12|^2 P)).
// Case 2 differs only by correlations that never change the slope, so it
// reuses the case-1 closed form.
//
// Cases 3 and 4: half the sum of three pairwise bounds. The (1,2) pair sees
// both signals at Rx1 with correlation rho12, then the residual of m2 at
// Rx2; the (1,3) pair is its mirror image; the (2,3) pair is resolved
// entirely at Rx2 and leaves no residual term.
inline double upper_bound(const UpperBoundParams& params,
                          const ChannelRealization& ch, double power) {
  if (!(power >= 0.0)) {
    throw std::invalid_argument("power must be nonnegative");
  }
  const auto m2 = [&ch](int tx, int rx) {
    return ch.mag(tx, rx) * ch.mag(tx, rx);
  };

  switch (params.kase.tag()) {
    case CognitionCase::Tag::Case1:
    case CognitionCase::Tag::Case2:
      return shannon(power * (m2(1, 2) + m2(2, 2) + m2(3, 2))) +
             shannon(m2(1, 1) * power / (1.0 + m2(1, 2) * power));
    case CognitionCase::Tag::Case3:
    case CognitionCase::Tag::Case4: {
      const double b12 =
          shannon(power * (m2(1, 1) + m2(2, 1) +
                           2.0 * ch.mag(1, 1) * ch.mag(2, 1) *
                               params.rho12.real())) +
          shannon(m2(2, 2) * power / (1.0 + m2(2, 1) * power));
      const double b13 =
          shannon(power * (m2(1, 1) + m2(3, 1) +
                           2.0 * ch.mag(1, 1) * ch.mag(3, 1) *
                               params.rho13.real())) +
          shannon(m2(3, 2) * power / (1.0 + m2(3, 1) * power));
      const double b23 = shannon(power * (m2(2, 2) + m2(3, 2)));
      return 0.5 * (b12 + b13 + b23);
    }
  }
  throw std::logic_error("unreachable cognition case");
}

inline double upper_bound(const CognitionCase& kase,
                          const ChannelRealization& ch, double power) {
  return upper_bound(UpperBoundParams::worst_case(kase), ch, power);
}

// Case-aware scheme dispatch. The alignment scheme is built for a cognitive
// Tx2; a cognitive Tx3 runs the identical construction with the MAC users
// relabeled and the rates swapped back. Case 4 ignores the second cognitive
// link and reuses the case-3 pipeline unchanged.
inline RatePoint rate_for_scheme(const CognitionCase& kase, Scheme scheme,
                                 const ChannelRealization& ch, double power,
                                 double alpha = 0.5) {
  switch (scheme) {
    case Scheme::Tdm:
      return rate_tdm(ch, power);
    case Scheme::JointDecoding:
      return rate_joint_decoding(ch, power);
    case Scheme::Ian: {
      const bool case3 = kase.tag() == CognitionCase::Tag::Case3;
      if (!case3 && kase.tag() != CognitionCase::Tag::Case4) {
        throw ConfigError(
            "the alignment scheme requires a cognitive MAC transmitter "
            "(case 3 or 4)");
      }
      const bool relabel =
          case3 && kase.cognitive_mac_user() == CognitionCase::MacUser::Tx3;
      const ChannelRealization work = relabel ? swap_mac_users(ch) : ch;
      const PrecoderSet pre = design_ian_precoders(
          work, default_direction_seed(work), power, alpha);
      const EffectiveChannels eff = effective_channels(work, pre);
      RatePoint rp = rate_ian(work, pre, eff, power);
      if (relabel) {
        std::swap(rp.r2, rp.r3);
      }
      return rp;
    }
  }
  throw std::logic_error("unreachable scheme");
}

}  // namespace cpimac
