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

// Sampled two-slit wavefunctions on a 1D screen and the three localization
// densities they produce:
//
//   p_i   = |psi1 + psi2|^2 / 2     (interference)
//   p_i^c = |psi1 - psi2|^2 / 2     (counter interference)
//   p     = (|psi1|^2 + |psi2|^2)/2 (incoherent mixture) = (p_i + p_i^c)/2
//
// All integrals use the trapezoidal rule on the grid. Densities are per unit
// length.

#include "qcerase/core_states.hpp"
#include "qcerase/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcerase {

/// Normalization tolerance for sampled waves and densities.
inline constexpr double kGridNormTol = 1e-8;

/// Uniform sampling of [x_min, x_max] with n >= 2 points, endpoints included.
class ScreenGrid {
 public:
  ScreenGrid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
      throw std::invalid_argument("screen grid needs x_min < x_max");
    }
    if (n < 2) throw std::invalid_argument("screen grid needs at least 2 points");
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_; }
  double spacing() const { return (x_max_ - x_min_) / static_cast<double>(n_ - 1); }
  double x(std::size_t i) const {
    return i + 1 == n_ ? x_max_ : x_min_ + static_cast<double>(i) * spacing();
  }

  friend bool operator==(const ScreenGrid&, const ScreenGrid&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

/// Trapezoidal integral of samples on the grid.
inline double integrate(const ScreenGrid& grid, std::span<const double> f) {
  if (f.size() != grid.size()) throw std::invalid_argument("sample count does not match grid");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double weight = (i == 0 || i + 1 == f.size()) ? 0.5 : 1.0;
    s += weight * f[i];
  }
  return s * grid.spacing();
}

/// Trapezoidal <a|b>.
inline Complex grid_inner(const ScreenGrid& grid, std::span<const Complex> a,
                          std::span<const Complex> b) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw std::invalid_argument("sample count does not match grid");
  }
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double weight = (i == 0 || i + 1 == a.size()) ? 0.5 : 1.0;
    s += weight * std::conj(a[i]) * b[i];
  }
  return s * grid.spacing();
}

inline std::vector<double> abs_squared(std::span<const Complex> a) {
  std::vector<double> out(a.size());
  std::transform(a.begin(), a.end(), out.begin(), [](const Complex& z) { return std::norm(z); });
  return out;
}

/// A wavefunction sampled on a grid, normalized under the trapezoidal rule.
struct SampledWave {
  ScreenGrid grid;
  std::vector<Complex> amps;

  double norm_squared() const { return grid_inner(grid, amps, amps).real(); }
  std::vector<double> density() const { return abs_squared(amps); }
};

namespace detail {

inline std::vector<Complex> grid_normalized(const ScreenGrid& grid, std::vector<Complex> amps,
                                            const char* what) {
  const double n2 = grid_inner(grid, amps, amps).real();
  if (!(n2 > 1e-300) || !std::isfinite(n2)) {
    throw std::domain_error(std::string(what) + " has zero norm on the grid");
  }
  const double n = std::sqrt(n2);
  for (auto& a : amps) a /= n;
  return amps;
}

}  // namespace detail

/// psi1 and psi2 on a common grid, each grid-normalized within kGridNormTol.
class SlitWavePair {
 public:
  SlitWavePair(ScreenGrid grid, std::vector<Complex> psi1, std::vector<Complex> psi2)
      : grid_(grid), psi1_(std::move(psi1)), psi2_(std::move(psi2)) {
    if (psi1_.size() != grid_.size() || psi2_.size() != grid_.size()) {
      throw std::invalid_argument("slit waves must have one sample per grid point");
    }
    for (const auto* w : {&psi1_, &psi2_}) {
      for (const auto& z : *w)
        if (!is_finite(z)) throw std::invalid_argument("slit wave sample is not finite");
      const double n2 = grid_inner(grid_, *w, *w).real();
      if (std::fabs(n2 - 1.0) > kGridNormTol) {
        throw std::invalid_argument("slit wave is not grid-normalized (norm^2 = " +
                                    std::to_string(n2) + ")");
      }
    }
  }

  const ScreenGrid& grid() const { return grid_; }
  const std::vector<Complex>& psi1() const { return psi1_; }
  const std::vector<Complex>& psi2() const { return psi2_; }

  /// <psi1|psi2> under the grid rule; zero for ideal slit states.
  Complex overlap() const { return grid_inner(grid_, psi1_, psi2_); }

  /// Samples of c1 psi1 + c2 psi2.
  std::vector<Complex> combine(Complex c1, Complex c2) const {
    std::vector<Complex> out(grid_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c1 * psi1_[i] + c2 * psi2_[i];
    return out;
  }

 private:
  ScreenGrid grid_;
  std::vector<Complex> psi1_;
  std::vector<Complex> psi2_;
};

/// Gaussian envelopes with |psi|^2 standard deviation `width`, centered at
/// -separation/2 (psi1) and +separation/2 (psi2), with opposite phase
/// gradients -tilt*x/2 and +tilt*x/2 so the relative phase is tilt*x.
inline SlitWavePair gaussian_two_slit(const ScreenGrid& grid, double separation, double width,
                                      double tilt) {
  if (!std::isfinite(width) || width <= 0.0) throw std::invalid_argument("width must be positive");
  if (!std::isfinite(separation) || !std::isfinite(tilt)) {
    throw std::invalid_argument("separation and tilt must be finite");
  }
  std::vector<Complex> psi1(grid.size());
  std::vector<Complex> psi2(grid.size());
  const double denom = 4.0 * width * width;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double d1 = x + 0.5 * separation;
    const double d2 = x - 0.5 * separation;
    psi1[i] = std::polar(std::exp(-d1 * d1 / denom), -0.5 * tilt * x);
    psi2[i] = std::polar(std::exp(-d2 * d2 / denom), 0.5 * tilt * x);
  }
  psi1 = detail::grid_normalized(grid, std::move(psi1), "psi1");
  psi2 = detail::grid_normalized(grid, std::move(psi2), "psi2");
  return SlitWavePair(grid, std::move(psi1), std::move(psi2));
}

/// Default screen used by the CLI and the acceptance suite.
struct GaussianPreset {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 2048;
  double separation = 4.0;
  double width = 1.5;
  double tilt = 6.0;

  SlitWavePair make() const {
    return gaussian_two_slit(ScreenGrid(x_min, x_max, n), separation, width, tilt);
  }
};

enum class Sign { Plus, Minus };

/// (psi1 +- psi2)/sqrt(2), renormalized on the grid since sampled slit states
/// are only approximately orthogonal.
inline SampledWave superpose(const SlitWavePair& pair, Sign sign) {
  const double h = 1.0 / std::sqrt(2.0);
  auto amps = pair.combine(h, sign == Sign::Plus ? h : -h);
  return {pair.grid(), detail::grid_normalized(pair.grid(), std::move(amps), "superposition")};
}

/// Interference, counter-interference and incoherent densities on one grid.
struct PatternSet {
  ScreenGrid grid;
  std::vector<double> p_interference;
  std::vector<double> p_counter;
  std::vector<double> p_incoherent;
  /// <psi1|psi2> of the pair the patterns came from.
  Complex overlap;
};

/// Densities in the expanded form
///   p_i   = (|psi1|^2 + |psi2|^2 + 2 Re(psi1* psi2)) / 2
///   p_i^c = (|psi1|^2 + |psi2|^2 - 2 Re(psi1* psi2)) / 2.
/// They integrate to 1 +- Re<psi1|psi2>.
inline PatternSet patterns(const SlitWavePair& pair) {
  const std::size_t n = pair.grid().size();
  PatternSet out{pair.grid(), std::vector<double>(n), std::vector<double>(n),
                 std::vector<double>(n), pair.overlap()};
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = pair.psi1()[i];
    const Complex b = pair.psi2()[i];
    const double incoherent = 0.5 * (std::norm(a) + std::norm(b));
    const double cross = (std::conj(a) * b).real();
    out.p_interference[i] = std::max(0.0, incoherent + cross);
    out.p_counter[i] = std::max(0.0, incoherent - cross);
    out.p_incoherent[i] = incoherent;
  }
  return out;
}

/// Screen densities of the two conditional states of a measurement, with
/// psi1, psi2 realizing the mixture's eigenbasis. p_interference holds
/// |<x|phi>|^2, p_counter |<x|phi_c>|^2 and p_incoherent <x|rho|x>.
/// For r = 1/2 and the 45 degree measurement this reduces to patterns().
inline PatternSet branch_patterns(const SlitWavePair& pair, const MinimalMixture& rho,
                                  const StateVector& phi, const StateVector& phi_c) {
  const auto density_of = [&](const StateVector& v) {
    const auto [c1, c2] = rho.coordinates(v);
    const auto amps = detail::grid_normalized(pair.grid(), pair.combine(c1, c2), "branch state");
    return abs_squared(amps);
  };
  const std::size_t n = pair.grid().size();
  PatternSet out{pair.grid(), density_of(phi), density_of(phi_c), std::vector<double>(n),
                 pair.overlap()};
  const double r = rho.r();
  for (std::size_t i = 0; i < n; ++i) {
    out.p_incoherent[i] = r * std::norm(pair.psi1()[i]) + (1.0 - r) * std::norm(pair.psi2()[i]);
  }
  return out;
}

/// (max - min) / (max + min) of `density` restricted to [x_lo, x_hi].
inline double fringe_visibility(const ScreenGrid& grid, std::span<const double> density,
                                double x_lo, double x_hi) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    if (x < x_lo || x > x_hi) continue;
    lo = std::min(lo, density[i]);
    hi = std::max(hi, density[i]);
  }
  if (!(hi > 0.0)) throw std::domain_error("no positive density in the visibility window");
  return (hi - lo) / (hi + lo);
}

}  // namespace qcerase
