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

// Test-only reference computations. None of these call the closed forms they
// are used to check.

#include "qcerase/core_states.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

namespace qcerase::oracle {

/// Ascending eigenvalues by Eigen's iterative Hermitian solver.
template <std::size_t N>
std::array<double, N> eigenvalues(const Operator<N>& m) {
  Eigen::Matrix<std::complex<double>, N, N> a;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k) a(j, k) = m(j, k);
  Eigen::SelfAdjointEigenSolver<decltype(a)> solver(a, Eigen::EigenvaluesOnly);
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

/// Matrix of w|phi><phi| + (1-w)|phic><phic| in the canonical basis, with
/// |phi> = (p, sqrt(1-p^2) e^{i theta}) and |phic> built so the diagonal
/// matches diag(r, 1-r) (non-negative first amplitude, second amplitude with
/// phase theta + pi). Built entry by entry, without the library.
inline std::array<std::array<Complex, 2>, 2> two_term_matrix(double r, double p, double theta,
                                                             double w) {
  const double pc = std::sqrt(1.0 - p * p);
  const double c1 = std::sqrt(std::max(0.0, (r - w * p * p) / (1.0 - w)));
  const double c2 = std::sqrt(std::max(0.0, ((1.0 - r) - w * pc * pc) / (1.0 - w)));
  const Complex phi[2] = {p, std::polar(pc, theta)};
  const Complex phic[2] = {c1, std::polar(c2, theta + std::numbers::pi)};
  std::array<std::array<Complex, 2>, 2> m{};
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      m[j][k] = w * phi[j] * std::conj(phi[k]) + (1.0 - w) * phic[j] * std::conj(phic[k]);
  return m;
}

/// Solves for the weight w in (r, 1-r) that cancels the off-diagonal entry of
/// two_term_matrix, by bisection on the sign of its real part divided by the
/// common phase.
inline double weight_by_bisection(double r, double p) {
  const auto offdiag = [&](double w) {
    const auto m = two_term_matrix(r, p, 0.0, w);
    return m[0][1].real();
  };
  double lo = r + 1e-15;
  double hi = 1.0 - r - 1e-15;
  double flo = offdiag(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = offdiag(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Probability of the mu-outcome from explicit sums over the composite
/// amplitudes sqrt(r)|11> + sqrt(1-r)|22>.
inline double branch_probability(double r, Complex mu_first, Complex mu_second) {
  const Complex a1 = std::conj(mu_first) * std::sqrt(r);
  const Complex a2 = std::conj(mu_second) * std::sqrt(1.0 - r);
  return std::norm(a1) + std::norm(a2);
}

/// Simple deterministic random source for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  StateVector state() {
    std::normal_distribution<double> n;
    return StateVector::normalized({Complex(n(gen_), n(gen_)), Complex(n(gen_), n(gen_))});
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qcerase::oracle
