// Copyright 2026 The qdelete Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file qlinalg.hpp
 * Small fixed-size complex linear algebra for the deletion machine's joint
 * space: two qubits and a three-level ancilla, 2 x 2 x 3 = 12 amplitudes.
 *
 * Flat index of the joint basis vector |q1>|q2>|anc> is 6*q1 + 3*q2 + anc.
 * The ancilla basis {e_Q, e_A0, e_A1} holds the machine's |Q>, |A0>, |A1>.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace qdelete {

template <typename Scalar> using Complex = std::complex<Scalar>;

template <typename Scalar> using QubitVec = Eigen::Matrix<Complex<Scalar>, 2, 1>;
template <typename Scalar> using AncillaVec = Eigen::Matrix<Complex<Scalar>, 3, 1>;
template <typename Scalar> using JointState = Eigen::Matrix<Complex<Scalar>, 12, 1>;
template <typename Scalar> using DensityMatrix2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;

/// Ancilla basis labels.
enum Ancilla : int { kAncQ = 0, kAncA0 = 1, kAncA1 = 2 };

inline constexpr int kJointDim = 12;

constexpr int joint_index(int q1, int q2, int anc) { return 6 * q1 + 3 * q2 + anc; }

/// Default absolute tolerances: algebraic identities and chained computations.
template <typename Scalar> struct Tolerances {
  Scalar algebraic = Scalar(1e-12);
  Scalar chained = Scalar(1e-9);
};

template <typename Scalar> QubitVec<Scalar> ket0() { return QubitVec<Scalar>(Scalar(1), Scalar(0)); }
template <typename Scalar> QubitVec<Scalar> ket1() { return QubitVec<Scalar>(Scalar(0), Scalar(1)); }

template <typename Scalar> AncillaVec<Scalar> ancilla_basis(Ancilla which) {
  AncillaVec<Scalar> v = AncillaVec<Scalar>::Zero();
  v(which) = Scalar(1);
  return v;
}

/// |q1> (x) |q2> (x) |anc>.
template <typename Scalar>
JointState<Scalar> tensor3(const QubitVec<Scalar>& q1, const QubitVec<Scalar>& q2,
                           const AncillaVec<Scalar>& anc) {
  JointState<Scalar> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 3; ++k) out(joint_index(i, j, k)) = q1(i) * q2(j) * anc(k);
  return out;
}

/// Reduced state of the first qubit (traces out qubit 2 and the ancilla).
template <typename Scalar> DensityMatrix2<Scalar> partial_trace_mode1(const JointState<Scalar>& s) {
  DensityMatrix2<Scalar> rho = DensityMatrix2<Scalar>::Zero();
  for (int i = 0; i < 2; ++i)
    for (int ip = 0; ip < 2; ++ip)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 3; ++k)
          rho(i, ip) += s(joint_index(i, j, k)) * std::conj(s(joint_index(ip, j, k)));
  return rho;
}

/// Reduced state of the second qubit (traces out qubit 1 and the ancilla).
template <typename Scalar> DensityMatrix2<Scalar> partial_trace_mode2(const JointState<Scalar>& s) {
  DensityMatrix2<Scalar> rho = DensityMatrix2<Scalar>::Zero();
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp)
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 3; ++k)
          rho(j, jp) += s(joint_index(i, j, k)) * std::conj(s(joint_index(i, jp, k)));
  return rho;
}

/// |v><v|
template <typename Scalar> DensityMatrix2<Scalar> projector(const QubitVec<Scalar>& v) {
  return v * v.adjoint();
}

/// Squared Hilbert-Schmidt distance Tr[(a - b)^2] for Hermitian a, b.
template <typename Scalar>
Scalar hs_distance_sq(const DensityMatrix2<Scalar>& a, const DensityMatrix2<Scalar>& b) {
  // For Hermitian Delta, Tr[Delta^2] = sum |Delta_ij|^2, which is real and >= 0 by construction.
  return (a - b).squaredNorm();
}

/// <v|rho|v>, real part (the imaginary part vanishes for Hermitian rho).
template <typename Scalar>
Scalar expectation(const DensityMatrix2<Scalar>& rho, const QubitVec<Scalar>& v) {
  return std::real(v.dot(rho * v));
}

template <typename Scalar> Scalar hermiticity_defect(const DensityMatrix2<Scalar>& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

/// Smallest eigenvalue of the Hermitian part of rho, in closed form.
template <typename Scalar> Scalar min_eigenvalue(const DensityMatrix2<Scalar>& rho) {
  const Scalar a = std::real(rho(0, 0));
  const Scalar d = std::real(rho(1, 1));
  const Complex<Scalar> b = (rho(0, 1) + std::conj(rho(1, 0))) / Scalar(2);
  const Scalar half_gap = std::hypot((a - d) / Scalar(2), std::abs(b));
  return (a + d) / Scalar(2) - half_gap;
}

template <typename Scalar> bool all_finite(const JointState<Scalar>& s) {
  return std::all_of(s.data(), s.data() + s.size(),
                     [](const Complex<Scalar>& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

}  // namespace qdelete
