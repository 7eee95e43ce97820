// Copyright 2026 The qcerase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Two-term pure-state decompositions of a rank-2 state operator
//
//   rho = r |1><1| + (1 - r) |2><2|,   0 < r <= 1/2.
//
// Every pure state in the range of rho, written up to phase as
//
//   |phi> = p |1> + sqrt(1 - p^2) e^{i theta} |2>,
//
// appears in exactly one two-term decomposition
//
//   rho = w |phi><phi| + (1 - w) |phi_c><phi_c|
//
// with w = r(1-r) / (p^2 (1-r) + (1-p^2) r). The weight runs monotonically
// from r (p = 1) to 1 - r (p = 0). When r = 1/2 every decomposition is
// orthogonal and w = 1/2 regardless of (p, theta). Note that w = 1/2 is
// reached at p = sqrt(r) for r < 1/2.

#include "qcerase/core_states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcerase {

/// Counter-state radicands below this value signal inconsistent inputs;
/// anything above it is rounding noise and is clamped to 0.
inline constexpr double kRadicandFail = -1e-9;
/// Eigenvalues below this count as negative in overweight checks.
inline constexpr double kNegativeEigenvalue = -1e-9;

/// Rank-2 state operator in spectral form, smaller eigenvalue r in (0, 1/2].
class MinimalMixture {
 public:
  explicit MinimalMixture(double r)
      : MinimalMixture(r, StateVector::basis(0), StateVector::basis(1)) {}

  /// Explicit eigenbasis; `first` carries the weight r.
  MinimalMixture(double r, const StateVector& first, const StateVector& second)
      : r_(r), first_(first), second_(second) {
    if (!std::isfinite(r) || r <= 0.0 || r > 0.5) {
      throw std::invalid_argument("mixture weight r must lie in (0, 1/2], got " +
                                  std::to_string(r));
    }
    if (std::abs(inner(first, second)) > kNormTol) {
      throw std::invalid_argument("mixture eigenbasis is not orthogonal");
    }
  }

  double r() const { return r_; }
  double r_complement() const { return 1.0 - r_; }
  bool degenerate() const { return r_ == 0.5; }
  const StateVector& first() const { return first_; }
  const StateVector& second() const { return second_; }

  /// Vector with coordinates (c1, c2) in the eigenbasis.
  StateVector compose(Complex c1, Complex c2) const {
    return StateVector({c1 * first_[0] + c2 * second_[0], c1 * first_[1] + c2 * second_[1]});
  }

  /// Coordinates of `v` in the eigenbasis.
  std::array<Complex, 2> coordinates(const StateVector& v) const {
    return {inner(first_, v), inner(second_, v)};
  }

  Operator2 matrix() const {
    return r_ * Operator2::projector(first_) + (1.0 - r_) * Operator2::projector(second_);
  }

 private:
  double r_;
  StateVector first_;
  StateVector second_;
};

/// (p, theta) label of a pure state in the range of a mixture.
/// theta is kept in [0, 2pi) and forced to 0 when p is 0 or 1. The
/// complementary amplitude sqrt(1 - p^2) is stored alongside p so that values
/// near p = 1 keep full relative precision.
class RangeState {
 public:
  RangeState(double p, double theta) {
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
      throw std::invalid_argument("p must lie in [0, 1], got " + std::to_string(p));
    }
    init(p, std::sqrt(std::max(0.0, (1.0 - p) * (1.0 + p))), theta);
  }

  /// From an unnormalized amplitude pair (p, sqrt(1 - p^2)), both >= 0.
  static RangeState from_amplitudes(double p, double p_complement, double theta) {
    if (!std::isfinite(p) || !std::isfinite(p_complement) || p < 0.0 || p_complement < 0.0) {
      throw std::invalid_argument("range-state amplitudes must be finite and non-negative");
    }
    const double n = std::hypot(p, p_complement);
    if (!(n > 0.0)) throw std::invalid_argument("range-state amplitudes are both zero");
    RangeState rs;
    rs.init(std::min(1.0, p / n), std::min(1.0, p_complement / n), theta);
    return rs;
  }

  double p() const { return p_; }
  double theta() const { return theta_; }
  double p_complement() const { return p_complement_; }

 private:
  RangeState() = default;

  void init(double p, double p_complement, double theta) {
    p_ = p_complement == 0.0 ? 1.0 : p;
    p_complement_ = p == 0.0 ? 1.0 : p_complement;
    theta_ = (p_ == 0.0 || p_complement_ == 0.0) ? 0.0 : wrap_angle(theta);
  }

  double p_ = 1.0;
  double p_complement_ = 0.0;
  double theta_ = 0.0;
};

/// rho = w |phi><phi| + (1 - w) |phi_c><phi_c|.
struct PairDecomposition {
  double w;
  StateVector phi;
  StateVector phi_c;

  Operator2 matrix() const {
    return w * Operator2::projector(phi) + (1.0 - w) * Operator2::projector(phi_c);
  }
};

inline StateVector range_state_vector(const MinimalMixture& rho, const RangeState& rs) {
  return rho.compose(rs.p(), std::polar(rs.p_complement(), rs.theta()));
}

/// Recovers the (p, theta) label of a state in the range of rho, discarding
/// the global phase. Components below 1e-14 are treated as exact zeros.
inline RangeState as_range_state(const MinimalMixture& rho, const StateVector& v) {
  auto [c1, c2] = rho.coordinates(v);
  const double m1 = std::abs(c1);
  const double m2 = std::abs(c2);
  if (std::fabs(m1 * m1 + m2 * m2 - 1.0) > kNormTol) {
    throw std::invalid_argument("state is not in the range of the mixture");
  }
  constexpr double kZero = 1e-14;
  if (m2 < kZero) return RangeState(1.0, 0.0);
  if (m1 < kZero) return RangeState(0.0, 0.0);
  return RangeState::from_amplitudes(m1, m2, std::arg(c2) - std::arg(c1));
}

/// w = r(1-r) / (p^2 (1-r) + (1-p^2) r), clamped into [r, 1-r].
inline double weight_for(const MinimalMixture& rho, const RangeState& rs) {
  if (rho.degenerate()) return 0.5;
  const double r = rho.r();
  const double p2 = rs.p() * rs.p();
  const double pc2 = rs.p_complement() * rs.p_complement();
  const double w = r * (1.0 - r) / (p2 * (1.0 - r) + pc2 * r);
  return std::clamp(w, r, 1.0 - r);
}

namespace detail {

inline double checked_radicand(double value, const char* which) {
  if (value < kRadicandFail) {
    throw std::domain_error(std::string("counter state radicand ") + which +
                            " is negative: " + std::to_string(value));
  }
  return std::max(0.0, value);
}

}  // namespace detail

/// The unique decomposition of rho containing |phi(p, theta)>.
inline PairDecomposition counter_state(const MinimalMixture& rho, const RangeState& rs) {
  const double r = rho.r();
  const double w = weight_for(rho, rs);
  const double p2 = rs.p() * rs.p();
  const double pc2 = rs.p_complement() * rs.p_complement();
  detail::checked_radicand((r - w * p2) / (1.0 - w), "(first)");
  detail::checked_radicand(((1.0 - r) - w * pc2) / (1.0 - w), "(second)");
  // With w substituted the radicands are r^2 p'^2 / N^2 and (1-r)^2 p^2 / N^2,
  // N^2 = (1-r)^2 p^2 + r^2 p'^2. This form has no cancellation near p = 0, 1.
  const double a1 = r * rs.p_complement();
  const double a2 = (1.0 - r) * rs.p();
  const double n = std::hypot(a1, a2);
  const StateVector phi_c =
      rho.compose(a1 / n, std::polar(a2 / n, rs.theta() + kPi));
  return {w, range_state_vector(rho, rs), phi_c};
}

/// Inverse of weight_for on [r, 1-r]; undefined when r = 1/2.
inline double p_for_weight(const MinimalMixture& rho, double w) {
  if (rho.degenerate()) {
    throw std::domain_error("p is not determined by w when r = 1/2");
  }
  const double r = rho.r();
  if (!std::isfinite(w) || w < r - kIdentityTol || w > 1.0 - r + kIdentityTol) {
    throw std::domain_error("w must lie in [r, 1 - r] = [" + std::to_string(r) + ", " +
                            std::to_string(1.0 - r) + "], got " + std::to_string(w));
  }
  const double p2 = r * (1.0 - r - w) / (w * (1.0 - 2.0 * r));
  return std::sqrt(std::clamp(p2, 0.0, 1.0));
}

/// (rho - weight |phi><phi|) / (1 - weight): the state that would have to
/// complete |phi> at the given weight.
inline Operator2 candidate_residual(const MinimalMixture& rho, const RangeState& rs,
                                    double weight) {
  if (!(weight < 1.0)) throw std::domain_error("candidate weight must be below 1");
  const StateVector phi = range_state_vector(rho, rs);
  return (rho.matrix() - weight * Operator2::projector(phi)) / (1.0 - weight);
}

/// For 0 < s <= 1, the mixed remainder rho' with rho = ws|phi><phi| + (1-ws) rho'.
inline Operator2 lemma_a1_residual(const MinimalMixture& rho, const RangeState& rs, double s) {
  if (!std::isfinite(s) || s <= 0.0 || s > 1.0) {
    throw std::domain_error("s must lie in (0, 1], got " + std::to_string(s));
  }
  const PairDecomposition d = counter_state(rho, rs);
  const double ws = d.w * s;
  return ((d.w - ws) / (1.0 - ws)) * Operator2::projector(d.phi) +
         ((1.0 - d.w) / (1.0 - ws)) * Operator2::projector(d.phi_c);
}

/// For s > 1, true iff the would-be remainder (rho - ws|phi><phi|)/(1-ws) is
/// not positive semidefinite, i.e. |phi> cannot carry more than weight w.
inline bool verify_no_overweight(const MinimalMixture& rho, const RangeState& rs, double s) {
  if (!std::isfinite(s) || s <= 1.0) {
    throw std::domain_error("s must exceed 1, got " + std::to_string(s));
  }
  const double ws = weight_for(rho, rs) * s;
  if (ws >= 1.0) {
    throw std::domain_error("ws must stay below 1, got " + std::to_string(ws));
  }
  return candidate_residual(rho, rs, ws).min_eigenvalue() < kNegativeEigenvalue;
}

}  // namespace qcerase
