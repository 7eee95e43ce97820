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

// Fixed-dimension complex linear algebra for two-level subsystems and their
// 2x2 composite: kets, operators, tensor products and partial traces.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcerase {

using Complex = std::complex<double>;

/// Tolerance for validating inputs (norms, Hermiticity, PSD, trace).
inline constexpr double kNormTol = 1e-10;
/// Tolerance for identities that hold up to rounding in dimension <= 4.
inline constexpr double kIdentityTol = 1e-12;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps any finite angle into [0, 2pi).
inline double wrap_angle(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("angle must be finite");
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Shortest distance between two angles on the circle.
inline double angle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Normalized state vector of fixed dimension N. Construction rejects
/// non-finite amplitudes and norms off by more than kNormTol.
template <std::size_t N>
class Ket {
 public:
  static_assert(N >= 1);
  static constexpr std::size_t kDim = N;
  using Amplitudes = std::array<Complex, N>;

  explicit Ket(const Amplitudes& amps) : amps_(amps) {
    for (const auto& a : amps_) {
      if (!is_finite(a)) throw std::invalid_argument("state amplitude is not finite");
    }
    const double n = squared_norm(amps_);
    if (std::fabs(n - 1.0) > kNormTol) {
      throw std::invalid_argument("state vector is not normalized (|v|^2 = " +
                                  std::to_string(n) + ")");
    }
  }

  /// Normalizes `amps` first; fails for the zero vector.
  static Ket normalized(Amplitudes amps) {
    const double n = std::sqrt(squared_norm(amps));
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw std::domain_error("cannot normalize a zero or non-finite vector");
    }
    for (auto& a : amps) a /= n;
    return Ket(amps);
  }

  static Ket basis(std::size_t k) {
    if (k >= N) throw std::out_of_range("basis index out of range");
    Amplitudes amps{};
    amps[k] = 1.0;
    return Ket(amps);
  }

  constexpr std::size_t dim() const { return N; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const Amplitudes& amps() const { return amps_; }

  /// Amplitude at (opposite index o, subsystem index s) of a 2x2 composite.
  const Complex& at(std::size_t o, std::size_t s) const
    requires(N == 4)
  {
    return amps_[2 * o + s];
  }

  /// Same state with a global phase factor applied.
  Ket with_phase(double phase) const {
    Amplitudes amps = amps_;
    const Complex f = std::polar(1.0, phase);
    for (auto& a : amps) a *= f;
    return Ket(amps);
  }

 private:
  static double squared_norm(const Amplitudes& amps) {
    double n = 0.0;
    for (const auto& a : amps) n += std::norm(a);
    return n;
  }

  Amplitudes amps_;
};

using StateVector = Ket<2>;
using CompositeVector = Ket<4>;

/// <a|b>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Ket<N>& a, const Ket<N>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Dense N x N complex matrix, row-major.
template <std::size_t N>
class Operator {
 public:
  static constexpr std::size_t kDim = N;
  using Entries = std::array<Complex, N * N>;

  Operator() : entries_{} {}
  explicit Operator(const Entries& entries) : entries_(entries) {
    for (const auto& e : entries_) {
      if (!is_finite(e)) throw std::invalid_argument("operator entry is not finite");
    }
  }

  static Operator identity() {
    Operator id;
    for (std::size_t i = 0; i < N; ++i) id(i, i) = 1.0;
    return id;
  }

  static Operator diagonal(const std::array<double, N>& d) {
    Operator m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |a><b|
  static Operator outer(const Ket<N>& a, const Ket<N>& b) {
    Operator m;
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k) m(j, k) = a[j] * std::conj(b[k]);
    return m;
  }

  static Operator projector(const Ket<N>& v) { return outer(v, v); }

  constexpr std::size_t dim() const { return N; }
  Complex& operator()(std::size_t j, std::size_t k) { return entries_[j * N + k]; }
  const Complex& operator()(std::size_t j, std::size_t k) const { return entries_[j * N + k]; }
  const Entries& entries() const { return entries_; }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Operator adjoint() const {
    Operator m;
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k) m(j, k) = std::conj((*this)(k, j));
    return m;
  }

  Operator& operator+=(const Operator& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  Operator& operator-=(const Operator& o) {
    for (std::size_t i = 0; i < N * N; ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  Operator& operator*=(Complex c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, Complex c) { return a *= c; }
  friend Operator operator*(Complex c, Operator a) { return a *= c; }
  friend Operator operator*(double c, Operator a) { return a *= Complex(c); }
  friend Operator operator*(Operator a, double c) { return a *= Complex(c); }
  friend Operator operator/(Operator a, double c) { return a *= Complex(1.0 / c); }

  friend Operator operator*(const Operator& a, const Operator& b) {
    Operator m;
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t l = 0; l < N; ++l) {
        const Complex ajl = a(j, l);
        for (std::size_t k = 0; k < N; ++k) m(j, k) += ajl * b(l, k);
      }
    return m;
  }

  /// Largest absolute entry.
  double max_norm() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
  }

  bool is_hermitian(double tol = kNormTol) const {
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = j; k < N; ++k)
        if (std::abs((*this)(j, k) - std::conj((*this)(k, j))) > tol) return false;
    return true;
  }

  /// Ascending eigenvalues of the Hermitian part. Closed form for N = 2.
  std::array<double, N> eigenvalues() const {
    std::array<double, N> out{};
    if constexpr (N == 2) {
      const double a = (*this)(0, 0).real();
      const double d = (*this)(1, 1).real();
      const Complex b = 0.5 * ((*this)(0, 1) + std::conj((*this)(1, 0)));
      const double mean = 0.5 * (a + d);
      const double radius = std::hypot(0.5 * (a - d), std::abs(b));
      out = {mean - radius, mean + radius};
    } else {
      Eigen::Matrix<std::complex<double>, N, N> m;
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k)
          m(j, k) = 0.5 * ((*this)(j, k) + std::conj((*this)(k, j)));
      Eigen::SelfAdjointEigenSolver<decltype(m)> solver(m, Eigen::EigenvaluesOnly);
      for (std::size_t i = 0; i < N; ++i) out[i] = solver.eigenvalues()(i);
    }
    return out;
  }

  double min_eigenvalue() const { return eigenvalues()[0]; }

  bool is_psd(double tol = kNormTol) const { return min_eigenvalue() >= -tol; }

  /// Hermitian, positive semidefinite and unit trace, each within `tol`.
  bool is_state(double tol = kNormTol) const {
    return is_hermitian(tol) && std::abs(trace() - 1.0) <= tol && is_psd(tol);
  }

  /// True when the state has a single nonzero eigenvalue (up to `tol`).
  bool is_pure_state(double tol = kNormTol) const {
    const auto ev = eigenvalues();
    return is_state(tol) && std::fabs(ev[N - 1] - 1.0) <= tol;
  }

 private:
  Entries entries_;
};

using Operator2 = Operator<2>;
using Operator4 = Operator<4>;

template <std::size_t N>
Operator<N> commutator(const Operator<N>& a, const Operator<N>& b) {
  return a * b - b * a;
}

template <std::size_t N>
double max_abs_diff(const Operator<N>& a, const Operator<N>& b) {
  return (a - b).max_norm();
}

/// Throws unless `op` is a valid state operator within kNormTol.
template <std::size_t N>
const Operator<N>& require_state(const Operator<N>& op, const char* what = "operator") {
  if (!op.is_hermitian()) throw std::invalid_argument(std::string(what) + " is not Hermitian");
  if (std::abs(op.trace() - 1.0) > kNormTol)
    throw std::invalid_argument(std::string(what) + " does not have unit trace");
  if (!op.is_psd()) throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
  return op;
}

/// a (x) b with composite index 2*o + s.
inline CompositeVector tensor(const StateVector& a, const StateVector& b) {
  CompositeVector::Amplitudes amps{};
  for (std::size_t o = 0; o < 2; ++o)
    for (std::size_t s = 0; s < 2; ++s) amps[2 * o + s] = a[o] * b[s];
  return CompositeVector(amps);
}

/// Kronecker product of opposite-side and subsystem operators.
inline Operator4 kron(const Operator2& a, const Operator2& b) {
  Operator4 m;
  for (std::size_t o1 = 0; o1 < 2; ++o1)
    for (std::size_t s1 = 0; s1 < 2; ++s1)
      for (std::size_t o2 = 0; o2 < 2; ++o2)
        for (std::size_t s2 = 0; s2 < 2; ++s2)
          m(2 * o1 + s1, 2 * o2 + s2) = a(o1, o2) * b(s1, s2);
  return m;
}

/// Tr_o |v><v|: the reduced state of the subsystem.
inline Operator2 partial_trace_opposite(const CompositeVector& v) {
  Operator2 rho;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t o = 0; o < 2; ++o) rho(j, k) += v.at(o, j) * std::conj(v.at(o, k));
  return rho;
}

/// Tr_s |v><v|: the reduced state of the opposite subsystem.
inline Operator2 partial_trace_subsystem(const CompositeVector& v) {
  Operator2 rho;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t s = 0; s < 2; ++s) rho(j, k) += v.at(j, s) * std::conj(v.at(k, s));
  return rho;
}

inline Operator2 partial_trace_opposite(const Operator4& m) {
  Operator2 rho;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t o = 0; o < 2; ++o) rho(j, k) += m(2 * o + j, 2 * o + k);
  return rho;
}

inline Operator2 partial_trace_subsystem(const Operator4& m) {
  Operator2 rho;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t s = 0; s < 2; ++s) rho(j, k) += m(2 * j + s, 2 * k + s);
  return rho;
}

/// |<a|b>| >= 1 - tol, i.e. equal as rays.
template <std::size_t N>
bool states_equal_up_to_phase(const Ket<N>& a, const Ket<N>& b, double tol = kIdentityTol) {
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

/// Amplitude-exact comparison.
template <std::size_t N>
bool states_equal_exact(const Ket<N>& a, const Ket<N>& b, double tol = kIdentityTol) {
  for (std::size_t i = 0; i < N; ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace qcerase
