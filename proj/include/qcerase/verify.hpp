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

// Grid sweep of the decomposition and distant-measurement identities.
//
// r runs over {0.5 k / steps : k = 1..steps}, p and q over {j / steps :
// j = 0..steps}, theta and lambda over multiples of pi/4.

#include "qcerase/core_states.hpp"
#include "qcerase/decomposition.hpp"
#include "qcerase/distant_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcerase {

struct InvariantCheck {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  std::size_t cases = 0;

  bool passed() const { return max_residual <= threshold; }
  void record(double residual) {
    // NaN must fail the check.
    max_residual = std::isnan(residual) ? std::numeric_limits<double>::infinity()
                                        : std::max(max_residual, residual);
    ++cases;
  }
};

struct VerifyReport {
  std::size_t grid_steps = 0;
  std::vector<InvariantCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed(); });
  }
  const InvariantCheck& at(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no invariant check named " + name);
  }
};

inline VerifyReport verify_invariants(std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("grid steps must be at least 1");
  const double n = static_cast<double>(steps);

  InvariantCheck reconstruction{"reconstruction", 0, kIdentityTol};
  InvariantCheck bounds{"weight_bounds", 0, 0.0};
  InvariantCheck monotone{"weight_monotonicity", 0, 0.0};
  InvariantCheck degenerate{"degenerate_orthogonality", 0, kIdentityTol};
  InvariantCheck involution{"counter_involution", 0, kIdentityTol};
  InvariantCheck forward_roundtrip{"roundtrip_p_theta", 0, kIdentityTol};
  InvariantCheck reverse_roundtrip{"roundtrip_q_lambda", 0, kIdentityTol};
  InvariantCheck three_way{"weight_three_routes", 0, kIdentityTol};
  InvariantCheck branch_states{"luders_branch_states", 0, kIdentityTol};
  InvariantCheck orthonormal{"mu_orthonormality", 0, kIdentityTol};
  InvariantCheck nonselective{"nonselective_reduced_state", 0, kIdentityTol};
  InvariantCheck distant{"distant_criterion_disagreements", 0, 0.0};

  for (std::size_t k = 1; k <= steps; ++k) {
    const MinimalMixture rho(0.5 * static_cast<double>(k) / n);
    const Operator2 target = rho.matrix();
    const SchmidtState omega = purify(rho);
    double previous_w = -1.0;
    for (std::size_t j = 0; j <= steps; ++j) {
      const double p = static_cast<double>(j) / n;
      for (int t = 0; t < 8; ++t) {
        const double angle = t * kPi / 4.0;
        const RangeState rs(p, angle);
        const PairDecomposition d = counter_state(rho, rs);
        reconstruction.record(max_abs_diff(d.matrix(), target));

        const double w = weight_for(rho, rs);
        bounds.record(std::max({0.0, rho.r() - w, w - (1.0 - rho.r())}));
        if (rho.degenerate()) degenerate.record(std::abs(inner(d.phi, d.phi_c)));

        // The counter state of the counter state is phi again.
        const PairDecomposition back = counter_state(rho, as_range_state(rho, d.phi_c));
        involution.record(1.0 - std::abs(inner(back.phi_c, d.phi)));

        const YesNoMeasurement m = measurement_for_decomposition(rho, rs);
        const InducedDecomposition induced = decomposition_for_measurement(rho, m);
        forward_roundtrip.record(std::max(std::fabs(induced.range_state.p() - rs.p()),
                                          angle_distance(induced.range_state.theta(), rs.theta())));

        const MeasurementOutcome o1 = luders_select(omega, m, Branch::Mu1);
        const MeasurementOutcome o2 = luders_select(omega, m, Branch::Mu2);
        three_way.record(std::max(std::fabs(w - induced.w), std::fabs(w - o1.probability)));
        branch_states.record(std::max(1.0 - std::abs(inner(o1.conditional_state, d.phi)),
                                      1.0 - std::abs(inner(o2.conditional_state, d.phi_c))));
      }
      if (!rho.degenerate()) {
        // w strictly decreases in p on the grid.
        const double w = weight_for(rho, RangeState(p, 0.0));
        if (j > 0) monotone.record(w < previous_w ? 0.0 : 1.0);
        previous_w = w;
      }
    }
    for (std::size_t j = 0; j <= steps; ++j) {
      const double q = static_cast<double>(j) / n;
      for (int t = 0; t < 8; ++t) {
        const YesNoMeasurement m(q, t * kPi / 4.0);
        const InducedDecomposition induced = decomposition_for_measurement(rho, m);
        const YesNoMeasurement back = measurement_for_decomposition(rho, induced.range_state);
        reverse_roundtrip.record(
            std::max(std::fabs(back.q() - m.q()), angle_distance(back.lambda(), m.lambda())));

        const StateVector mu1 = m.mu1(omega);
        const StateVector mu2 = m.mu2(omega);
        orthonormal.record(std::abs(inner(mu1, mu2)));

        const Operator4 after = nonselective_measure(omega, m);
        nonselective.record(max_abs_diff(partial_trace_opposite(after), target));

        const PairDecomposition d = counter_state(rho, induced.range_state);
        const bool orthogonal = std::abs(inner(d.phi, d.phi_c)) <= 1e-9;
        distant.record(orthogonal == is_distant_measurement(omega, m) ? 0.0 : 1.0);
      }
    }
  }

  VerifyReport report;
  report.grid_steps = steps;
  report.checks = {reconstruction, bounds,      monotone,      degenerate,
                   involution,     forward_roundtrip, reverse_roundtrip, three_way,
                   branch_states,  orthonormal, nonselective,  distant};
  return report;
}

}  // namespace qcerase
