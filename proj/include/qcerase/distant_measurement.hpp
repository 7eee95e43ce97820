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

// Realizing decompositions by measurement on a purifying partner.
//
// A mixture rho = r|1><1| + (1-r)|2><2| is purified as
//
//   |omega> = sqrt(r) |1>_o |1> + sqrt(1-r) |2>_o |2>.
//
// A yes-no measurement on the opposite side with eigenvectors
//
//   |mu1> = q |1>_o + sqrt(1-q^2) e^{i lambda} |2>_o
//   |mu2> = sqrt(1-q^2) |1>_o - q e^{i lambda} |2>_o
//
// leaves the subsystem in |phi> with probability w or in |phi_c> with
// probability 1 - w, where (p, theta) and (q, lambda) are related by
//
//   q = sqrt(w/r) p,   lambda = 2pi - theta,   w = (2r-1) q^2 + (1-r).
//
// The induced decomposition is orthogonal (a distant measurement) iff the
// observable commutes with the opposite reduced state.

#include "qcerase/core_states.hpp"
#include "qcerase/decomposition.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcerase {

/// Branch probabilities below this leave the conditional state undefined.
inline constexpr double kMinBranchProbability = 1e-14;

/// Schmidt-form purification of a MinimalMixture on the 2x2 composite.
class SchmidtState {
 public:
  SchmidtState(const MinimalMixture& rho, const StateVector& opposite_first,
               const StateVector& opposite_second)
      : rho_(rho), o1_(opposite_first), o2_(opposite_second), composite_(build(rho, o1_, o2_)) {
    if (std::abs(inner(o1_, o2_)) > kNormTol) {
      throw std::invalid_argument("opposite Schmidt basis is not orthogonal");
    }
  }

  double r() const { return rho_.r(); }
  const MinimalMixture& mixture() const { return rho_; }
  const StateVector& opposite_first() const { return o1_; }
  const StateVector& opposite_second() const { return o2_; }
  const CompositeVector& composite() const { return composite_; }

 private:
  static CompositeVector build(const MinimalMixture& rho, const StateVector& o1,
                               const StateVector& o2) {
    const double a = std::sqrt(rho.r());
    const double b = std::sqrt(1.0 - rho.r());
    const CompositeVector t1 = tensor(o1, rho.first());
    const CompositeVector t2 = tensor(o2, rho.second());
    CompositeVector::Amplitudes amps{};
    for (std::size_t i = 0; i < 4; ++i) amps[i] = a * t1[i] + b * t2[i];
    return CompositeVector::normalized(amps);
  }

  MinimalMixture rho_;
  StateVector o1_;
  StateVector o2_;
  CompositeVector composite_;
};

/// Canonical purification with opposite basis (e1, e2).
inline SchmidtState purify(const MinimalMixture& rho) {
  return SchmidtState(rho, StateVector::basis(0), StateVector::basis(1));
}

inline SchmidtState purify(const MinimalMixture& rho, const StateVector& opposite_first,
                           const StateVector& opposite_second) {
  return SchmidtState(rho, opposite_first, opposite_second);
}

/// Opposite-side yes-no observable labelled by (q, lambda). Eigenvalue labels
/// carry no physics; observable() uses 1 and 2.
class YesNoMeasurement {
 public:
  YesNoMeasurement(double q, double lambda) {
    if (!std::isfinite(q) || q < 0.0 || q > 1.0) {
      throw std::invalid_argument("q must lie in [0, 1], got " + std::to_string(q));
    }
    init(q, std::sqrt(std::max(0.0, (1.0 - q) * (1.0 + q))), lambda);
  }

  /// From an unnormalized amplitude pair (q, sqrt(1 - q^2)), both >= 0.
  static YesNoMeasurement from_amplitudes(double q, double q_complement, double lambda) {
    if (!std::isfinite(q) || !std::isfinite(q_complement) || q < 0.0 || q_complement < 0.0) {
      throw std::invalid_argument("measurement amplitudes must be finite and non-negative");
    }
    const double n = std::hypot(q, q_complement);
    if (!(n > 0.0)) throw std::invalid_argument("measurement amplitudes are both zero");
    YesNoMeasurement m;
    m.init(std::min(1.0, q / n), std::min(1.0, q_complement / n), lambda);
    return m;
  }

  double q() const { return q_; }
  double lambda() const { return lambda_; }
  double q_complement() const { return q_complement_; }

  /// Coordinates of |mu1> in the opposite Schmidt basis.
  std::array<Complex, 2> mu1_coordinates() const {
    return {q_, std::polar(q_complement(), lambda_)};
  }
  /// Coordinates of |mu2> in the opposite Schmidt basis.
  std::array<Complex, 2> mu2_coordinates() const {
    return {q_complement(), -std::polar(q_, lambda_)};
  }

  StateVector mu1(const SchmidtState& omega) const { return in_basis(omega, mu1_coordinates()); }
  StateVector mu2(const SchmidtState& omega) const { return in_basis(omega, mu2_coordinates()); }

  /// A_o = 1 |mu1><mu1| + 2 |mu2><mu2| on the opposite space.
  Operator2 observable(const SchmidtState& omega, double a1 = 1.0, double a2 = 2.0) const {
    return a1 * Operator2::projector(mu1(omega)) + a2 * Operator2::projector(mu2(omega));
  }

 private:
  static StateVector in_basis(const SchmidtState& omega, const std::array<Complex, 2>& c) {
    const auto& o1 = omega.opposite_first();
    const auto& o2 = omega.opposite_second();
    return StateVector::normalized({c[0] * o1[0] + c[1] * o2[0], c[0] * o1[1] + c[1] * o2[1]});
  }

  YesNoMeasurement() = default;

  void init(double q, double q_complement, double lambda) {
    q_ = q_complement == 0.0 ? 1.0 : q;
    q_complement_ = q == 0.0 ? 1.0 : q_complement;
    lambda_ = (q_ == 0.0 || q_complement_ == 0.0) ? 0.0 : wrap_angle(lambda);
  }

  double q_ = 1.0;
  double q_complement_ = 0.0;
  double lambda_ = 0.0;
};

enum class Branch { Mu1, Mu2 };

inline std::string_view to_string(Branch b) { return b == Branch::Mu1 ? "mu1" : "mu2"; }

struct MeasurementOutcome {
  Branch branch;
  double probability;
  StateVector conditional_state;
};

/// The decomposition a measurement induces: |phi(p, theta)> with weight w.
struct InducedDecomposition {
  RangeState range_state;
  double w;
};

/// The only (q, lambda) measurement on |omega> that prepares the
/// (p, theta) decomposition.
inline YesNoMeasurement measurement_for_decomposition(const MinimalMixture& rho,
                                                      const RangeState& rs) {
  // q = sqrt(w/r) p and, from the norm relation (1-r)(1-q^2) = w(1-p^2),
  // sqrt(1-q^2) = sqrt(w/(1-r)) sqrt(1-p^2).
  const double w = weight_for(rho, rs);
  const double q = std::sqrt(w / rho.r()) * rs.p();
  const double qc = std::sqrt(w / (1.0 - rho.r())) * rs.p_complement();
  return YesNoMeasurement::from_amplitudes(q, qc, wrap_angle(kTwoPi - rs.theta()));
}

inline InducedDecomposition decomposition_for_measurement(const MinimalMixture& rho,
                                                          const YesNoMeasurement& m) {
  const double r = rho.r();
  const double w = (2.0 * r - 1.0) * m.q() * m.q() + (1.0 - r);
  const double p = std::sqrt(r / w) * m.q();
  const double pc = std::sqrt((1.0 - r) / w) * m.q_complement();
  return {RangeState::from_amplitudes(p, pc, wrap_angle(kTwoPi - m.lambda())), w};
}

namespace detail {

// Unnormalized |phi'> = (<mu| (x) 1)|omega>.
inline std::array<Complex, 2> partial_project(const SchmidtState& omega, const StateVector& mu) {
  const CompositeVector& v = omega.composite();
  std::array<Complex, 2> out{};
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t o = 0; o < 2; ++o) out[s] += std::conj(mu[o]) * v.at(o, s);
  return out;
}

}  // namespace detail

/// Selective ideal measurement: project onto |mu_branch> (x) 1 and renormalize.
/// The returned state keeps whatever phase the projection produces.
inline MeasurementOutcome luders_select(const SchmidtState& omega, const YesNoMeasurement& m,
                                        Branch branch) {
  const StateVector mu = branch == Branch::Mu1 ? m.mu1(omega) : m.mu2(omega);
  auto amps = detail::partial_project(omega, mu);
  const double prob = std::norm(amps[0]) + std::norm(amps[1]);
  if (prob < kMinBranchProbability) {
    throw std::domain_error("branch " + std::string(to_string(branch)) +
                            " has vanishing probability; conditional state undefined");
  }
  const double n = std::sqrt(prob);
  return {branch, prob, StateVector({amps[0] / n, amps[1] / n})};
}

/// Non-selective measurement: sum_i P(i) |mu_i><mu_i| (x) |phi_i><phi_i|.
/// Branches with vanishing probability contribute nothing.
inline Operator4 nonselective_measure(const SchmidtState& omega, const YesNoMeasurement& m) {
  Operator4 out;
  for (Branch b : {Branch::Mu1, Branch::Mu2}) {
    const StateVector mu = b == Branch::Mu1 ? m.mu1(omega) : m.mu2(omega);
    auto amps = detail::partial_project(omega, mu);
    Operator2 branch_part;
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) branch_part(j, k) = amps[j] * std::conj(amps[k]);
    out += kron(Operator2::projector(mu), branch_part);
  }
  return out;
}

/// Max-norm of [A_o, rho_o].
inline double commutator_norm(const SchmidtState& omega, const YesNoMeasurement& m) {
  const Operator2 rho_o = partial_trace_subsystem(omega.composite());
  return commutator(m.observable(omega), rho_o).max_norm();
}

/// True iff the measurement is a distant measurement, i.e. [A_o, rho_o] = 0
/// within 1e-12. Equivalent to orthogonality of the induced decomposition.
inline bool is_distant_measurement(const SchmidtState& omega, const YesNoMeasurement& m) {
  return commutator_norm(omega, m) <= kIdentityTol;
}

}  // namespace qcerase
