// Copyright 2026 The sio-enhance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sio/core.hpp"

namespace sio {

template <std::floating_point Real>
class DensityMatrix;

template <std::floating_point Real>
DensityMatrix<Real> validate_density(const ComplexMatrix<Real>& m, Real tol = Real(kDefaultTol));

namespace detail {
template <std::floating_point Real>
DensityMatrix<Real> validate_with(const ComplexMatrix<Real>& m, Real check_tol, Real stored_tol);
}  // namespace detail

/// A validated quantum state: Hermitian, unit trace and positive semidefinite
/// to within `tol()`. Immutable; only `validate_density` can produce one.
template <std::floating_point Real = double>
class DensityMatrix {
 public:
  using Scalar = Complex<Real>;

  Index dim() const noexcept { return entries_.rows(); }
  Real tol() const noexcept { return tol_; }
  const ComplexMatrix<Real>& matrix() const noexcept { return entries_; }
  Scalar operator()(Index i, Index j) const { return entries_(i, j); }

  /// Real diagonal entry; the imaginary part is below tol by validation.
  Real population(Index i) const { return entries_(i, i).real(); }

  /// True iff index i carries population above the zero threshold.
  bool supported(Index i) const { return population(i) > tol_; }

 private:
  DensityMatrix(ComplexMatrix<Real> entries, Real tol) : entries_(std::move(entries)), tol_(tol) {}

  friend DensityMatrix detail::validate_with<Real>(const ComplexMatrix<Real>&, Real, Real);

  ComplexMatrix<Real> entries_;
  Real tol_;
};

namespace detail {

template <std::floating_point Real>
std::string describe(const char* what, Real magnitude) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (worst offending magnitude " << magnitude << ")";
  return os.str();
}

}  // namespace detail

namespace detail {

// Checks the invariants at check_tol; the returned state carries stored_tol as
// its zero threshold. Used when renormalization amplifies roundoff.
template <std::floating_point Real>
DensityMatrix<Real> validate_with(const ComplexMatrix<Real>& m, Real check_tol, Real stored_tol) {
  const Real tol = check_tol;
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::NotSquare, os.str());
  }
  const Index d = m.rows();

  Real worst_herm = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j)
      worst_herm = std::max(worst_herm, std::abs(m(i, j) - std::conj(m(j, i))));
  if (worst_herm > tol)
    throw Error(ErrorCode::NotHermitian,
                detail::describe("|rho_ij - conj(rho_ji)| exceeds tolerance", worst_herm));

  const Real trace_dev = std::abs(m.trace() - Complex<Real>(1));
  if (trace_dev > tol)
    throw Error(ErrorCode::NotUnitTrace, detail::describe("|Tr(rho) - 1| exceeds tolerance", trace_dev));

  // Eigenvalues of the Hermitian part; the anti-Hermitian residue is below tol.
  const ComplexMatrix<Real> herm = (m + m.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(herm, Eigen::EigenvaluesOnly);
  const Real min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol)
    throw Error(ErrorCode::NotPSD, detail::describe("negative eigenvalue below -tol", -min_eig));

  return DensityMatrix<Real>(m, stored_tol);
}

}  // namespace detail

template <std::floating_point Real>
DensityMatrix<Real> validate_density(const ComplexMatrix<Real>& m, Real tol) {
  return detail::validate_with(m, tol, tol);
}

/// l1 norm of coherence: sum of moduli of the off-diagonal entries.
template <std::floating_point Real>
Real l1_coherence(const DensityMatrix<Real>& rho) {
  Real sum = 0;
  const Index d = rho.dim();
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      if (i != j) sum += std::abs(rho(i, j));
  return sum;
}

/// Entrywise modulus |rho|, returned as a (real-valued) complex matrix.
template <std::floating_point Real>
ComplexMatrix<Real> abs_matrix(const DensityMatrix<Real>& rho) {
  return rho.matrix().cwiseAbs().template cast<Complex<Real>>();
}

/// Diagonal part of rho.
template <std::floating_point Real>
ComplexMatrix<Real> dephase(const DensityMatrix<Real>& rho) {
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(rho.dim(), rho.dim());
  out.diagonal() = rho.matrix().diagonal();
  return out;
}

/// Pseudo-inverse square root of the dephased state: rho_ii^{-1/2} on supported
/// indices, exactly 0 elsewhere.
template <std::floating_point Real>
ComplexMatrix<Real> inv_sqrt_dephased(const DensityMatrix<Real>& rho) {
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(rho.dim(), rho.dim());
  for (Index i = 0; i < rho.dim(); ++i)
    if (rho.supported(i)) out(i, i) = Real(1) / std::sqrt(rho.population(i));
  return out;
}

/// The real nonnegative symmetric matrix D^{-1/2} |rho| D^{-1/2}, with D the
/// dephased state. Unsupported rows and columns are identically zero.
template <std::floating_point Real = double>
struct ComparisonMatrix {
  RealMatrix<Real> entries;
  std::vector<bool> support;

  Index dim() const noexcept { return entries.rows(); }
};

template <std::floating_point Real>
ComparisonMatrix<Real> comparison_matrix(const DensityMatrix<Real>& rho) {
  const Index d = rho.dim();
  ComparisonMatrix<Real> a{RealMatrix<Real>::Zero(d, d), std::vector<bool>(static_cast<std::size_t>(d))};
  RealVector<Real> scale = RealVector<Real>::Zero(d);
  for (Index i = 0; i < d; ++i) {
    a.support[static_cast<std::size_t>(i)] = rho.supported(i);
    if (rho.supported(i)) scale(i) = Real(1) / std::sqrt(rho.population(i));
  }
  for (Index i = 0; i < d; ++i) {
    if (scale(i) == 0) continue;
    a.entries(i, i) = 1;
    for (Index j = i + 1; j < d; ++j) {
      if (scale(j) == 0) continue;
      const Real v = std::abs(rho(i, j)) * scale(i) * scale(j);
      a.entries(i, j) = v;
      a.entries(j, i) = v;
    }
  }
  return a;
}

}  // namespace sio
