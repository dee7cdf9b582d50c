// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cpimac/errors.hpp"
#include "cpimac/linalg.hpp"
#include "cpimac/rng.hpp"

namespace cpimac {

using Complex = std::complex<double>;

// Sampled coefficients with magnitude below this floor are redrawn, and the
// precoder construction rejects channels below it: the scheme divides by
// |h12| and relatives, so the floor keeps conditioning sane without changing
// measure-one behaviour.
inline constexpr double kMagnitudeFloor = 1e-6;

// [Re; Im] form of a complex scalar.
constexpr Vec2 to_real_vec(Complex x) { return {x.real(), x.imag()}; }
constexpr Complex from_real_vec(Vec2 v) { return {v.x, v.y}; }

// h = magnitude * e^{i*angle}, with U the planar rotation by `angle`:
// to_real_vec(h * x) == magnitude * (U * to_real_vec(x)) for every complex x.
struct RotationDecomposition {
  double magnitude = 0.0;
  double angle = 0.0;  // radians in (-pi, pi]
  Mat2 u = Mat2::identity();
};

inline RotationDecomposition decompose(Complex h) {
  const double mag = std::abs(h);
  if (mag == 0.0) {
    throw DegenerateChannel("decompose: zero channel coefficient");
  }
  double ang = std::atan2(h.imag(), h.real());
  if (ang <= -std::numbers::pi) {
    ang = std::numbers::pi;  // atan2 may return -pi; fold onto (-pi, pi]
  }
  const double c = std::cos(ang);
  const double s = std::sin(ang);
  return {mag, ang, Mat2{c, -s, s, c}};
}

// The six coefficients h_kj of the network: transmitter k in {1,2,3} to
// receiver j in {1,2}. Tx1 -> Rx1 is the point-to-point pair; Tx2 and Tx3
// form the MAC towards Rx2; the cross links are interference. Immutable, and
// every magnitude is strictly positive by construction.
class ChannelRealization {
 public:
  explicit ChannelRealization(const std::array<Complex, 6>& coeffs) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const Complex h = coeffs[i];
      if (!std::isfinite(h.real()) || !std::isfinite(h.imag())) {
        throw DegenerateChannel("channel coefficient " + std::to_string(i) +
                                " is not finite");
      }
      coeffs_[i] = h;
      rots_[i] = decompose(h);  // rejects zero magnitude
    }
  }

  // 1-based domain indices: tx in 1..3, rx in 1..2.
  Complex coeff(int tx, int rx) const { return coeffs_[index(tx, rx)]; }
  const RotationDecomposition& rot(int tx, int rx) const {
    return rots_[index(tx, rx)];
  }
  double mag(int tx, int rx) const { return rots_[index(tx, rx)].magnitude; }

  friend bool operator==(const ChannelRealization& lhs,
                         const ChannelRealization& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

 private:
  static std::size_t index(int tx, int rx) {
    if (tx < 1 || tx > 3 || rx < 1 || rx > 2) {
      throw std::out_of_range("channel index (tx " + std::to_string(tx) +
                              ", rx " + std::to_string(rx) + ")");
    }
    return static_cast<std::size_t>((tx - 1) * 2 + (rx - 1));
  }

  std::array<Complex, 6> coeffs_{};
  std::array<RotationDecomposition, 6> rots_{};
};

// Six i.i.d. CN(0,1) draws, deterministic given the seed. Coefficients with
// magnitude below the floor are redrawn; 100 consecutive near-zero draws can
// only mean the RNG is broken.
inline ChannelRealization sample_channel(std::uint64_t seed) {
  Rng rng(seed);
  std::array<Complex, 6> h{};
  for (auto& c : h) {
    int attempts = 0;
    do {
      if (++attempts > 100) {
        throw Error("sample_channel: 100 consecutive near-zero draws");
      }
      c = rng.complex_gaussian();
    } while (std::abs(c) < kMagnitudeFloor);
  }
  return ChannelRealization(h);
}

// Relabels the MAC transmitters (Tx2 <-> Tx3). The achievability pipeline is
// written for a cognitive Tx2; a cognitive Tx3 is handled by relabeling the
// MAC users, running the same construction, and swapping the rates back.
inline ChannelRealization swap_mac_users(const ChannelRealization& ch) {
  return ChannelRealization({ch.coeff(1, 1), ch.coeff(1, 2),  //
                             ch.coeff(3, 1), ch.coeff(3, 2),  //
                             ch.coeff(2, 1), ch.coeff(2, 2)});
}

// Which transmitters know other transmitters' messages ahead of time.
//   Case 1: nobody is cognitive.
//   Case 2: Tx1 knows m2, m3, or both.
//   Case 3: exactly one MAC transmitter (Tx2 or Tx3) knows m1.
//   Case 4: both MAC transmitters know m1.
class CognitionCase {
 public:
  enum class Tag { Case1, Case2, Case3, Case4 };
  enum class MacUser { Tx2, Tx3 };

  static CognitionCase case1() { return CognitionCase(Tag::Case1); }

  static CognitionCase case2(bool tx1_knows_m2, bool tx1_knows_m3) {
    if (!tx1_knows_m2 && !tx1_knows_m3) {
      throw ConfigError("case 2 requires Tx1 to know at least one MAC message");
    }
    CognitionCase c(Tag::Case2);
    c.tx1_knows_m2_ = tx1_knows_m2;
    c.tx1_knows_m3_ = tx1_knows_m3;
    return c;
  }

  static CognitionCase case3(MacUser cognitive) {
    CognitionCase c(Tag::Case3);
    c.cognitive_ = cognitive;
    return c;
  }

  static CognitionCase case4() { return CognitionCase(Tag::Case4); }

  Tag tag() const { return tag_; }

  MacUser cognitive_mac_user() const {
    if (tag_ != Tag::Case3) {
      throw std::logic_error("cognitive_mac_user is only defined for case 3");
    }
    return cognitive_;
  }

  bool tx1_knows_m2() const { return tag_ == Tag::Case2 && tx1_knows_m2_; }
  bool tx1_knows_m3() const { return tag_ == Tag::Case2 && tx1_knows_m3_; }

  // CLI / CSV token: "1", "2", "3a" (Tx2 cognitive), "3b" (Tx3), "4".
  std::string_view token() const {
    switch (tag_) {
      case Tag::Case1:
        return "1";
      case Tag::Case2:
        return "2";
      case Tag::Case3:
        return cognitive_ == MacUser::Tx2 ? "3a" : "3b";
      case Tag::Case4:
        return "4";
    }
    return "?";
  }

  static CognitionCase parse(std::string_view token) {
    if (token == "1") return case1();
    if (token == "2") return case2(true, true);
    if (token == "3a") return case3(MacUser::Tx2);
    if (token == "3b") return case3(MacUser::Tx3);
    if (token == "4") return case4();
    throw ConfigError("unknown case '" + std::string(token) +
                      "' (expected 1, 2, 3a, 3b or 4)");
  }

  friend bool operator==(const CognitionCase& lhs, const CognitionCase& rhs) {
    return lhs.tag_ == rhs.tag_ && lhs.cognitive_ == rhs.cognitive_ &&
           lhs.tx1_knows_m2_ == rhs.tx1_knows_m2_ &&
           lhs.tx1_knows_m3_ == rhs.tx1_knows_m3_;
  }

 private:
  explicit CognitionCase(Tag tag) : tag_(tag) {}

  Tag tag_;
  MacUser cognitive_ = MacUser::Tx2;
  bool tx1_knows_m2_ = false;
  bool tx1_knows_m3_ = false;
};

// Circularly symmetric complex noise, CN(0,1): unit variance per complex
// dimension, so 1/2 per real dimension. Rates are closed-form and never
// sample noise; sampling exists for the signal-level transmission checks.
struct NoiseModel {
  static constexpr double kComplexVariance = 1.0;
  static constexpr double kRealVariance = 0.5;

  static Complex sample(Rng& rng) {
    const double s = std::sqrt(kRealVariance);
    return {s * rng.gaussian(), s * rng.gaussian()};
  }
};

}  // namespace cpimac
