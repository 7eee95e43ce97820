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

// JSON encodings of library values (nlohmann/json).
//
// SimReport schema:
//   {seed, generator, n,
//    branches: [{label, count, weight, stderr, analytic_weight}],
//    histograms?: {x_min, x_max, bins, counts: {mu1: [...], mu2: [...]}}}

#include "qcerase/core_states.hpp"
#include "qcerase/decomposition.hpp"
#include "qcerase/distant_measurement.hpp"
#include "qcerase/ensemble_sim.hpp"

#include <json.hpp>

#include <string>

namespace qcerase {

/// Complex numbers encode as [re, im].
inline nlohmann::json to_json(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

template <std::size_t N>
nlohmann::json to_json(const Ket<N>& v) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < N; ++i) out.push_back(to_json(v[i]));
  return out;
}

/// Row-major nested arrays of [re, im].
template <std::size_t N>
nlohmann::json to_json(const Operator<N>& m) {
  auto out = nlohmann::json::array();
  for (std::size_t j = 0; j < N; ++j) {
    auto row = nlohmann::json::array();
    for (std::size_t k = 0; k < N; ++k) row.push_back(to_json(m(j, k)));
    out.push_back(std::move(row));
  }
  return out;
}

inline nlohmann::json to_json(const RangeState& rs) {
  return {{"p", rs.p()}, {"theta", rs.theta()}};
}

inline nlohmann::json to_json(const YesNoMeasurement& m) {
  return {{"q", m.q()}, {"lambda", m.lambda()}};
}

inline nlohmann::json to_json(const PairDecomposition& d) {
  return {{"w", d.w}, {"phi", to_json(d.phi)}, {"phi_c", to_json(d.phi_c)}};
}

inline nlohmann::json to_json(const MeasurementOutcome& o) {
  return {{"branch", std::string(to_string(o.branch))},
          {"probability", o.probability},
          {"conditional_state", to_json(o.conditional_state)}};
}

inline nlohmann::json to_json(const SimReport& report) {
  nlohmann::json out;
  out["seed"] = report.seed;
  out["generator"] = report.generator;
  out["n"] = report.n;
  out["branches"] = nlohmann::json::array();
  for (const auto& b : report.branches) {
    out["branches"].push_back({{"label", std::string(to_string(b.branch))},
                               {"count", b.count},
                               {"weight", b.weight},
                               {"stderr", b.standard_error},
                               {"analytic_weight", b.analytic_weight}});
  }
  if (report.histograms && report.histogram_spec) {
    const auto& spec = *report.histogram_spec;
    out["histograms"] = {{"x_min", spec.x_min},
                         {"x_max", spec.x_max},
                         {"bins", spec.bins},
                         {"counts", {{"mu1", (*report.histograms)[0]}, {"mu2", (*report.histograms)[1]}}}};
  }
  return out;
}

}  // namespace qcerase
