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

// Monte Carlo splitting of an ensemble by a distant yes-no measurement.
//
// Each photon draws its branch with the Lueders probability of that branch
// and, when slit waves are supplied, a screen position from the branch's
// conditional density. Photon i consumes its own substream of a counter-based
// SplitMix64 generator, so results depend only on the seed, never on thread
// count or scheduling.

#include "qcerase/core_states.hpp"
#include "qcerase/decomposition.hpp"
#include "qcerase/distant_measurement.hpp"
#include "qcerase/interference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qcerase {

/// SplitMix64 (Steele, Lea, Flood 2014) with one substream per photon.
/// Substream i of seed s starts from state mix(s + mix(i + 1)).
class PhotonStream {
 public:
  static constexpr const char* kName = "splitmix64-substream-v1";

  PhotonStream(std::uint64_t seed, std::uint64_t index) : state_(mix(seed + mix(index + 1))) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

/// Inverse-CDF sampling of a density tabulated on a grid. The CDF is the
/// cumulative trapezoid, linear between grid points.
class InverseCdfSampler {
 public:
  InverseCdfSampler(const ScreenGrid& grid, std::span<const double> density)
      : grid_(grid), cdf_(grid.size(), 0.0) {
    if (density.size() != grid.size()) throw std::invalid_argument("density does not match grid");
    const double h = grid.spacing();
    for (std::size_t i = 1; i < cdf_.size(); ++i) {
      const double a = std::max(0.0, density[i - 1]);
      const double b = std::max(0.0, density[i]);
      cdf_[i] = cdf_[i - 1] + 0.5 * h * (a + b);
    }
    total_ = cdf_.back();
    if (!(total_ > 0.0)) throw std::domain_error("density has zero mass on the grid");
  }

  double total() const { return total_; }

  double sample(double u) const {
    const double target = u * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.begin()) return grid_.x_min();
    if (it == cdf_.end()) return grid_.x_max();
    const std::size_t hi = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t lo = hi - 1;
    const double frac = (target - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
    return grid_.x(lo) + frac * grid_.spacing();
  }

  /// Normalized CDF at x.
  double cdf(double x) const {
    if (x <= grid_.x_min()) return 0.0;
    if (x >= grid_.x_max()) return 1.0;
    const double t = (x - grid_.x_min()) / grid_.spacing();
    const std::size_t lo = std::min(static_cast<std::size_t>(t), cdf_.size() - 2);
    const double frac = t - static_cast<double>(lo);
    return (cdf_[lo] + frac * (cdf_[lo + 1] - cdf_[lo])) / total_;
  }

 private:
  ScreenGrid grid_;
  std::vector<double> cdf_;
  double total_ = 0.0;
};

/// Equal-width bins over [x_min, x_max].
struct HistogramSpec {
  double x_min;
  double x_max;
  std::size_t bins;

  double bin_width() const { return (x_max - x_min) / static_cast<double>(bins); }
  std::size_t bin_of(double x) const {
    const double t = std::floor((x - x_min) / bin_width());
    if (t <= 0.0) return 0;
    return std::min(bins - 1, static_cast<std::size_t>(t));
  }
  friend bool operator==(const HistogramSpec&, const HistogramSpec&) = default;
};

/// Bin probabilities of a grid density under the sampler's piecewise-linear CDF.
inline std::vector<double> bin_probabilities(const ScreenGrid& grid, std::span<const double> density,
                                             const HistogramSpec& spec) {
  const InverseCdfSampler sampler(grid, density);
  std::vector<double> probs(spec.bins);
  for (std::size_t b = 0; b < spec.bins; ++b) {
    const double lo = spec.x_min + static_cast<double>(b) * spec.bin_width();
    const double hi = b + 1 == spec.bins ? spec.x_max : lo + spec.bin_width();
    probs[b] = sampler.cdf(hi) - sampler.cdf(lo);
  }
  return probs;
}

struct SimConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_photons = 1;
  MinimalMixture mixture{0.5};
  YesNoMeasurement measurement{1.0, 0.0};
  std::optional<SlitWavePair> pair;
  std::size_t bins = 64;
  unsigned threads = 1;
};

struct BranchTally {
  Branch branch;
  std::uint64_t count = 0;
  double weight = 0.0;          // empirical fraction
  double standard_error = 0.0;  // sqrt(f (1 - f) / N)
  double analytic_weight = 0.0;

  friend bool operator==(const BranchTally&, const BranchTally&) = default;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::string generator;
  std::uint64_t n = 0;
  std::array<BranchTally, 2> branches{};
  std::optional<HistogramSpec> histogram_spec;
  /// Per-branch position counts, present when screen sampling was enabled.
  std::optional<std::array<std::vector<std::uint64_t>, 2>> histograms;

  std::vector<std::uint64_t> merged_histogram() const {
    if (!histograms) throw std::logic_error("report has no histograms");
    std::vector<std::uint64_t> out((*histograms)[0].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*histograms)[0][i] + (*histograms)[1][i];
    return out;
  }

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

namespace detail {

struct Tally {
  std::array<std::uint64_t, 2> counts{};
  std::array<std::vector<std::uint64_t>, 2> hist;
};

}  // namespace detail

/// Runs the ensemble. Deterministic in the config (thread count included).
inline SimReport run(const SimConfig& config) {
  if (config.n_photons < 1) throw std::invalid_argument("n_photons must be at least 1");
  if (config.pair && config.bins < 1) throw std::invalid_argument("bins must be at least 1");
  const SchmidtState omega = purify(config.mixture);

  // Branch probabilities and conditional states come straight from the
  // Lueders projection; a vanishing branch is never drawn.
  std::array<std::optional<MeasurementOutcome>, 2> outcomes;
  std::array<double, 2> probs{};
  for (Branch b : {Branch::Mu1, Branch::Mu2}) {
    const auto i = static_cast<std::size_t>(b);
    try {
      outcomes[i] = luders_select(omega, config.measurement, b);
      probs[i] = outcomes[i]->probability;
    } catch (const std::domain_error&) {
      probs[i] = 0.0;
    }
  }
  const double p_mu1 = probs[0] / (probs[0] + probs[1]);

  std::array<std::optional<InverseCdfSampler>, 2> samplers;
  std::optional<HistogramSpec> spec;
  if (config.pair) {
    const auto& pair = *config.pair;
    spec = HistogramSpec{pair.grid().x_min(), pair.grid().x_max(), config.bins};
    for (std::size_t i = 0; i < 2; ++i) {
      if (!outcomes[i]) continue;
      const auto& other = outcomes[1 - i] ? outcomes[1 - i]->conditional_state
                                          : outcomes[i]->conditional_state;
      const PatternSet ps = branch_patterns(pair, config.mixture, outcomes[i]->conditional_state, other);
      samplers[i].emplace(pair.grid(), ps.p_interference);
    }
  }

  const auto simulate = [&](std::uint64_t begin, std::uint64_t end) {
    detail::Tally t;
    if (spec) t.hist = {std::vector<std::uint64_t>(spec->bins), std::vector<std::uint64_t>(spec->bins)};
    for (std::uint64_t k = begin; k < end; ++k) {
      PhotonStream rng(config.seed, k);
      const std::size_t b = rng.uniform() < p_mu1 ? 0 : 1;
      ++t.counts[b];
      if (spec) {
        const double x = samplers[b]->sample(rng.uniform());
        ++t.hist[b][spec->bin_of(x)];
      }
    }
    return t;
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, 256));
  std::vector<detail::Tally> partial(threads);
  if (threads == 1) {
    partial[0] = simulate(0, config.n_photons);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (config.n_photons + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min<std::uint64_t>(config.n_photons, t * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(config.n_photons, begin + chunk);
      pool.emplace_back([&, t, begin, end] { partial[t] = simulate(begin, end); });
    }
    for (auto& th : pool) th.join();
  }

  SimReport report;
  report.seed = config.seed;
  report.generator = PhotonStream::kName;
  report.n = config.n_photons;
  report.histogram_spec = spec;
  if (spec) {
    report.histograms = std::array<std::vector<std::uint64_t>, 2>{
        std::vector<std::uint64_t>(spec->bins), std::vector<std::uint64_t>(spec->bins)};
  }
  for (const auto& t : partial) {
    for (std::size_t i = 0; i < 2; ++i) {
      report.branches[i].count += t.counts[i];
      if (spec && !t.hist[i].empty()) {
        for (std::size_t b = 0; b < spec->bins; ++b) (*report.histograms)[i][b] += t.hist[i][b];
      }
    }
  }
  const double n = static_cast<double>(config.n_photons);
  for (std::size_t i = 0; i < 2; ++i) {
    auto& br = report.branches[i];
    br.branch = i == 0 ? Branch::Mu1 : Branch::Mu2;
    br.weight = static_cast<double>(br.count) / n;
    br.standard_error = std::sqrt(br.weight * (1.0 - br.weight) / n);
    br.analytic_weight = i == 0 ? p_mu1 : 1.0 - p_mu1;
  }
  return report;
}

struct ChiSquared {
  double statistic = 0.0;
  std::size_t dof = 0;
  std::size_t bins_used = 0;

  double per_dof() const { return dof == 0 ? 0.0 : statistic / static_cast<double>(dof); }
};

/// Pearson statistic over bins whose expected count reaches `min_expected`;
/// dof = bins used - 1.
inline ChiSquared pearson_chi_squared(std::span<const std::uint64_t> observed,
                                      std::span<const double> expected,
                                      double min_expected = 5.0) {
  if (observed.size() != expected.size()) throw std::invalid_argument("bin count mismatch");
  ChiSquared out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < min_expected) continue;
    const double d = static_cast<double>(observed[i]) - expected[i];
    out.statistic += d * d / expected[i];
    ++out.bins_used;
  }
  out.dof = out.bins_used > 0 ? out.bins_used - 1 : 0;
  return out;
}

struct ChiSquaredReport {
  ChiSquared mu1;
  ChiSquared mu2;
  ChiSquared merged;
};

/// Compares the report's histograms with analytic densities: branch Mu1
/// against p_interference, Mu2 against p_counter and the merged histogram
/// against p_incoherent.
inline ChiSquaredReport chi_squared_against(const SimReport& report, const PatternSet& analytic) {
  if (!report.histograms || !report.histogram_spec) {
    throw std::invalid_argument("report has no position histograms");
  }
  const HistogramSpec& spec = *report.histogram_spec;
  if (spec.x_min != analytic.grid.x_min() || spec.x_max != analytic.grid.x_max()) {
    throw std::invalid_argument("histogram range does not match the analytic grid");
  }
  const auto expected = [&](std::span<const double> density, std::uint64_t count) {
    auto probs = bin_probabilities(analytic.grid, density, spec);
    for (auto& p : probs) p *= static_cast<double>(count);
    return probs;
  };
  ChiSquaredReport out;
  out.mu1 = pearson_chi_squared((*report.histograms)[0],
                                expected(analytic.p_interference, report.branches[0].count));
  out.mu2 = pearson_chi_squared((*report.histograms)[1],
                                expected(analytic.p_counter, report.branches[1].count));
  out.merged = pearson_chi_squared(report.merged_histogram(),
                                   expected(analytic.p_incoherent, report.n));
  return out;
}

}  // namespace qcerase
