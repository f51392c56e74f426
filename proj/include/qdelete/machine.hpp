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
 * @file machine.hpp
 * The generalized input-dependent deleting machine, held as an isometry from
 * span{|00>,|01>,|10>,|11>} (x) |Q> into the 12-dimensional joint space:
 *
 *   |00>|Q> -> |0>|S>|A0>
 *   |01>|Q> -> (a0|01> + b0|10> + c0|00> + d0|11>)|Q>
 *   |10>|Q> -> (a1|01> + b1|10> + c1|00> + d1|11>)|Q>
 *   |11>|Q> -> |1>|S>|A1>
 *
 * where |S> = m1p|0> + sqrt(1 - m1p^2)|1> is the blank state.
 */

#include "qdelete/qlinalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdelete {

/// Default tolerance used by validate() and by the oracle-based metrics.
inline constexpr double kDefaultValidationTol = 1e-10;

/// Real blank state |S>, parameterized by m1p = <S|0>.
template <typename Scalar> class BlankState {
 public:
  BlankState() = default;
  explicit BlankState(Scalar m1p) : m1p_(m1p) {
    if (!std::isfinite(m1p) || m1p < Scalar(-1) || m1p > Scalar(1))
      throw std::invalid_argument("blank state: m1p must lie in [-1, 1]");
  }

  Scalar m1p() const { return m1p_; }
  /// sqrt(1 - m1p^2), the |1> amplitude.
  Scalar m1p_complement() const { return std::sqrt(std::max(Scalar(0), Scalar(1) - m1p_ * m1p_)); }
  QubitVec<Scalar> ket() const { return QubitVec<Scalar>(m1p_, m1p_complement()); }

 private:
  Scalar m1p_ = Scalar(1);
};

/// Machine amplitudes. Each row is (a, b, c, d) for the |01> resp. |10> input.
template <typename Scalar> struct MachineParams {
  using Row = Eigen::Matrix<Complex<Scalar>, 4, 1>;

  Row row0 = Row::Zero();
  Row row1 = Row::Zero();
  BlankState<Scalar> sigma;

  Complex<Scalar>& a0() { return row0(0); }
  Complex<Scalar>& b0() { return row0(1); }
  Complex<Scalar>& c0() { return row0(2); }
  Complex<Scalar>& d0() { return row0(3); }
  Complex<Scalar>& a1() { return row1(0); }
  Complex<Scalar>& b1() { return row1(1); }
  Complex<Scalar>& c1() { return row1(2); }
  Complex<Scalar>& d1() { return row1(3); }
  const Complex<Scalar>& a0() const { return row0(0); }
  const Complex<Scalar>& b0() const { return row0(1); }
  const Complex<Scalar>& c0() const { return row0(2); }
  const Complex<Scalar>& d0() const { return row0(3); }
  const Complex<Scalar>& a1() const { return row1(0); }
  const Complex<Scalar>& b1() const { return row1(1); }
  const Complex<Scalar>& c1() const { return row1(2); }
  const Complex<Scalar>& d1() const { return row1(3); }
};

/// g = a0 + a1, h = b0 + b1, e = c0 + c1, f = d0 + d1.
template <typename Scalar> struct Couplings {
  Complex<Scalar> g{}, h{}, e{}, f{};

  Scalar norm_sq() const { return std::norm(g) + std::norm(h) + std::norm(e) + std::norm(f); }
};

template <typename Scalar> Couplings<Scalar> couplings(const MachineParams<Scalar>& p) {
  const auto s = (p.row0 + p.row1).eval();
  return {s(0), s(1), s(2), s(3)};
}

/// Image of |i>|j>|Q> under the machine.
template <typename Scalar> JointState<Scalar> apply_basis(const MachineParams<Scalar>& p, int i, int j) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1)) throw std::invalid_argument("apply_basis: bits must be 0 or 1");
  if (i == j) {
    const QubitVec<Scalar> q1 = i == 0 ? ket0<Scalar>() : ket1<Scalar>();
    return tensor3<Scalar>(q1, p.sigma.ket(), ancilla_basis<Scalar>(i == 0 ? kAncA0 : kAncA1));
  }
  const auto& row = i == 0 ? p.row0 : p.row1;
  JointState<Scalar> out = JointState<Scalar>::Zero();
  out(joint_index(0, 1, kAncQ)) = row(0);
  out(joint_index(1, 0, kAncQ)) = row(1);
  out(joint_index(0, 0, kAncQ)) = row(2);
  out(joint_index(1, 1, kAncQ)) = row(3);
  return out;
}

/// 12 x 4 isometry whose columns are the images of |00>, |01>, |10>, |11>.
template <typename Scalar> Eigen::Matrix<Complex<Scalar>, 12, 4> isometry(const MachineParams<Scalar>& p) {
  Eigen::Matrix<Complex<Scalar>, 12, 4> v;
  v.col(0) = apply_basis(p, 0, 0);
  v.col(1) = apply_basis(p, 0, 1);
  v.col(2) = apply_basis(p, 1, 0);
  v.col(3) = apply_basis(p, 1, 1);
  return v;
}

template <typename Scalar> struct ValidationReport {
  Scalar row0_norm_defect{};
  Scalar row1_norm_defect{};
  Scalar orthogonality_defect{};
  /// Gram matrix of the four basis images; I_4 for a valid machine.
  Eigen::Matrix<Complex<Scalar>, 4, 4> gram;
  Scalar gram_defect{};
  bool is_valid = false;
};

/// Checks row normalization and orthogonality, plus the Gram matrix of the images.
template <typename Scalar>
ValidationReport<Scalar> validate(const MachineParams<Scalar>& p, Scalar tol = Scalar(kDefaultValidationTol)) {
  if (!(tol > Scalar(0))) throw std::invalid_argument("validate: tolerance must be positive");
  ValidationReport<Scalar> r;
  r.row0_norm_defect = std::abs(p.row0.squaredNorm() - Scalar(1));
  r.row1_norm_defect = std::abs(p.row1.squaredNorm() - Scalar(1));
  // a0 a1* + b0 b1* + c0 c1* + d0 d1*
  r.orthogonality_defect = std::abs(p.row1.dot(p.row0));
  const auto v = isometry(p);
  r.gram = v.adjoint() * v;
  r.gram_defect = (r.gram - Eigen::Matrix<Complex<Scalar>, 4, 4>::Identity()).cwiseAbs().maxCoeff();
  r.is_valid = r.row0_norm_defect <= tol && r.row1_norm_defect <= tol && r.orthogonality_defect <= tol &&
               r.gram_defect <= tol;
  return r;
}

/// Throws std::domain_error unless p passes validate at tol.
template <typename Scalar> void require_valid(const MachineParams<Scalar>& p, Scalar tol = Scalar(kDefaultValidationTol)) {
  if (!validate(p, tol).is_valid) throw std::domain_error("machine violates the unitarity conditions");
}

template <typename Scalar> void require_unit_interval(Scalar x, const char* what) {
  if (!(x >= Scalar(0) && x <= Scalar(1))) throw std::domain_error(std::string(what) + " must lie in [0, 1]");
}

/// U |psi>|psi>|Q> for |psi> = alpha|0> + beta|1>, beta = +sqrt(1 - alpha^2).
template <typename Scalar> JointState<Scalar> apply(const MachineParams<Scalar>& p, Scalar alpha) {
  require_unit_interval(alpha, "alpha");
  const Scalar beta = std::sqrt(std::max(Scalar(0), Scalar(1) - alpha * alpha));
  return (alpha * alpha) * apply_basis(p, 0, 0) + (alpha * beta) * (apply_basis(p, 0, 1) + apply_basis(p, 1, 0)) +
         (beta * beta) * apply_basis(p, 1, 1);
}

}  // namespace qdelete
