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
#include "sio/state.hpp"

namespace sio {

/// A square Kraus operator. Whether it is strictly incoherent is a query, not
/// a construction requirement, so general operators can be represented too.
template <std::floating_point Real = double>
class KrausOperator {
 public:
  explicit KrausOperator(ComplexMatrix<Real> entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
      throw Error(ErrorCode::NotSquare, "Kraus operator must be a non-empty square matrix");
  }

  Index dim() const noexcept { return entries_.rows(); }
  const ComplexMatrix<Real>& matrix() const noexcept { return entries_; }
  Complex<Real> operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  ComplexMatrix<Real> entries_;
};

/// At most one entry with modulus above tol in every row and every column.
template <std::floating_point Real>
bool is_strictly_incoherent(const KrausOperator<Real>& k, Real tol = Real(kDefaultTol)) {
  const Index d = k.dim();
  std::vector<int> row_count(static_cast<std::size_t>(d), 0);
  std::vector<int> col_count(static_cast<std::size_t>(d), 0);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (std::abs(k(i, j)) > tol) {
        if (++row_count[static_cast<std::size_t>(i)] > 1) return false;
        if (++col_count[static_cast<std::size_t>(j)] > 1) return false;
      }
    }
  }
  return true;
}

/// Sum of K^dagger K over a list of operators.
template <std::floating_point Real>
ComplexMatrix<Real> gram_sum(const std::vector<KrausOperator<Real>>& ops, Index d) {
  ComplexMatrix<Real> s = ComplexMatrix<Real>::Zero(d, d);
  for (const auto& k : ops) s.noalias() += k.matrix().adjoint() * k.matrix();
  return s;
}

/// Ordered Kraus operators with sum K^dagger K <= I (largest eigenvalue at most 1 + tol).
template <std::floating_point Real = double>
class KrausSet {
 public:
  explicit KrausSet(std::vector<KrausOperator<Real>> ops, Real tol = Real(kDefaultTol))
      : ops_(std::move(ops)) {
    if (ops_.empty()) throw Error(ErrorCode::DimensionMismatch, "Kraus set must hold at least one operator");
    dim_ = ops_.front().dim();
    for (const auto& k : ops_)
      if (k.dim() != dim_) throw Error(ErrorCode::DimensionMismatch, "Kraus operators differ in dimension");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(gram_sum(ops_, dim_), Eigen::EigenvaluesOnly);
    const Real top = solver.eigenvalues().maxCoeff();
    if (top > Real(1) + tol) {
      std::ostringstream os;
      os.precision(17);
      os << "largest eigenvalue of sum K^dagger K is " << top;
      throw Error(ErrorCode::NotSubnormalized, os.str());
    }
  }

  Index dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ops_.size(); }
  const std::vector<KrausOperator<Real>>& operators() const noexcept { return ops_; }
  const KrausOperator<Real>& operator[](std::size_t n) const { return ops_[n]; }

  ComplexMatrix<Real> gram() const { return gram_sum(ops_, dim_); }

  bool strictly_incoherent(Real tol = Real(kDefaultTol)) const {
    return std::all_of(ops_.begin(), ops_.end(),
                       [tol](const auto& k) { return is_strictly_incoherent(k, tol); });
  }

 private:
  std::vector<KrausOperator<Real>> ops_;
  Index dim_ = 0;
};

template <std::floating_point Real = double>
struct SelectiveOutcome {
  std::size_t index;  // position of the operator in the Kraus set
  Real probability;
  DensityMatrix<Real> state;
};

template <std::floating_point Real = double>
struct StochasticOutcome {
  Real probability;
  DensityMatrix<Real> state;
};

namespace detail {

template <std::floating_point Real>
void check_dims(const DensityMatrix<Real>& rho, const KrausSet<Real>& ks) {
  if (rho.dim() != ks.dim()) {
    std::ostringstream os;
    os << "state has dimension " << rho.dim() << ", Kraus set has " << ks.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

// Renormalized outputs are Hermitian by construction up to roundoff; symmetrize
// before revalidating. Dividing by p scales roundoff by 1/p, so the check
// tolerance scales with it.
template <std::floating_point Real>
DensityMatrix<Real> renormalize(const ComplexMatrix<Real>& unnormalized, Real p, Real tol) {
  ComplexMatrix<Real> m = unnormalized / p;
  m = ((m + m.adjoint()) / Real(2)).eval();
  return validate_with(m, tol * std::max(Real(1), Real(1) / p), tol);
}

}  // namespace detail

/// Selective application: one renormalized outcome per operator whose
/// probability Tr(K rho K^dagger) exceeds tol.
template <std::floating_point Real>
std::vector<SelectiveOutcome<Real>> apply_selective(const DensityMatrix<Real>& rho, const KrausSet<Real>& ks) {
  detail::check_dims(rho, ks);
  std::vector<SelectiveOutcome<Real>> out;
  for (std::size_t n = 0; n < ks.size(); ++n) {
    const ComplexMatrix<Real> branch = ks[n].matrix() * rho.matrix() * ks[n].matrix().adjoint();
    const Real p = branch.trace().real();
    if (p <= rho.tol()) continue;
    out.push_back({n, p, detail::renormalize(branch, p, rho.tol())});
  }
  return out;
}

/// Stochastic operation: sum_n K_n rho K_n^dagger renormalized by its trace,
/// returned with the success probability.
template <std::floating_point Real>
StochasticOutcome<Real> apply_stochastic(const DensityMatrix<Real>& rho, const KrausSet<Real>& ks) {
  detail::check_dims(rho, ks);
  ComplexMatrix<Real> sum = ComplexMatrix<Real>::Zero(rho.dim(), rho.dim());
  for (const auto& k : ks.operators()) sum.noalias() += k.matrix() * rho.matrix() * k.matrix().adjoint();
  const Real p = sum.trace().real();
  if (p <= rho.tol()) {
    std::ostringstream os;
    os.precision(17);
    os << "success probability " << p << " is not above tolerance";
    throw Error(ErrorCode::ZeroProbability, os.str());
  }
  return {p, detail::renormalize(sum, p, rho.tol())};
}

/// Principal square root of a Hermitian PSD matrix; tiny negative eigenvalues
/// from roundoff are clamped to zero.
template <std::floating_point Real>
ComplexMatrix<Real> psd_sqrt(const ComplexMatrix<Real>& m, Real tol) {
  const Index d = m.rows();
  const Real off = (m - ComplexMatrix<Real>(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (off <= tol) {
    ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(d, d);
    for (Index i = 0; i < d; ++i) out(i, i) = std::sqrt(std::max(m(i, i).real(), Real(0)));
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver((m + m.adjoint()) / Real(2));
  const RealVector<Real> roots = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  return solver.eigenvectors() * roots.template cast<Complex<Real>>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

/// Appends F = (I - sum K^dagger K)^{1/2} so the set becomes trace preserving.
/// The original operators keep their positions; F is last.
template <std::floating_point Real>
KrausSet<Real> complete_instrument(const KrausSet<Real>& ks, Real tol = Real(kDefaultTol)) {
  const Index d = ks.dim();
  const ComplexMatrix<Real> deficit = ComplexMatrix<Real>::Identity(d, d) - ks.gram();
  std::vector<KrausOperator<Real>> ops = ks.operators();
  ops.emplace_back(psd_sqrt(deficit, tol));
  return KrausSet<Real>(std::move(ops), tol);
}

/// Largest deviation of sum K^dagger K from the identity, in max-entry norm.
template <std::floating_point Real>
Real completeness_defect(const KrausSet<Real>& ks) {
  return (ks.gram() - ComplexMatrix<Real>::Identity(ks.dim(), ks.dim())).cwiseAbs().maxCoeff();
}

}  // namespace sio
