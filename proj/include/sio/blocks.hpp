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
#include <vector>

#include "sio/core.hpp"
#include "sio/state.hpp"

namespace sio {

/// One irreducible direct summand of a state: rho restricted to `indices`
/// equals weight * state.
template <std::floating_point Real = double>
struct Block {
  Real weight;
  std::vector<Index> indices;  // ascending original indices
  DensityMatrix<Real> state;

  Index dim() const noexcept { return static_cast<Index>(indices.size()); }
};

/// Permutation of a state into p_1 rho_1 (+) ... (+) p_n rho_n (+) 0.
template <std::floating_point Real = double>
struct BlockDecomposition {
  Index dim = 0;
  std::vector<Index> permutation;  // permutation[k] is the original index placed at position k
  std::vector<Block<Real>> blocks;
  std::vector<Index> zero_sector;

  /// The direct sum mapped back to the original index order.
  ComplexMatrix<Real> reassemble() const {
    ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(dim, dim);
    for (const auto& b : blocks)
      for (Index r = 0; r < b.dim(); ++r)
        for (Index c = 0; c < b.dim(); ++c)
          out(b.indices[r], b.indices[c]) = b.weight * b.state(r, c);
    return out;
  }
};

/// Connected components of the graph on the vertices where `keep` is true, with
/// an edge (i, j) whenever |m_ij| > tol. Components are listed by smallest
/// member; members ascend.
template <typename Derived, std::floating_point Real>
std::vector<std::vector<Index>> support_components(const Eigen::MatrixBase<Derived>& m,
                                                   const std::vector<bool>& keep, Real tol) {
  const Index d = m.rows();
  std::vector<std::vector<Index>> comps;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (Index root = 0; root < d; ++root) {
    if (!keep[static_cast<std::size_t>(root)] || seen[static_cast<std::size_t>(root)]) continue;
    std::vector<Index> comp{root};
    seen[static_cast<std::size_t>(root)] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      const Index i = comp[head];
      for (Index j = 0; j < d; ++j) {
        if (seen[static_cast<std::size_t>(j)] || !keep[static_cast<std::size_t>(j)]) continue;
        if (std::abs(m(i, j)) > tol || std::abs(m(j, i)) > tol) {
          seen[static_cast<std::size_t>(j)] = true;
          comp.push_back(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

/// True iff the support graph of m (all vertices) is connected.
template <typename Derived, std::floating_point Real>
bool is_irreducible(const Eigen::MatrixBase<Derived>& m, Real tol) {
  return support_components(m, std::vector<bool>(static_cast<std::size_t>(m.rows()), true), tol).size() == 1;
}

template <std::floating_point Real>
ComplexMatrix<Real> principal_submatrix(const ComplexMatrix<Real>& m, const std::vector<Index>& idx) {
  const Index n = static_cast<Index>(idx.size());
  ComplexMatrix<Real> out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = m(idx[r], idx[c]);
  return out;
}

template <std::floating_point Real>
BlockDecomposition<Real> block_decompose(const DensityMatrix<Real>& rho) {
  const Index d = rho.dim();
  const Real tol = rho.tol();
  std::vector<bool> support(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) support[static_cast<std::size_t>(i)] = rho.supported(i);

  BlockDecomposition<Real> out;
  out.dim = d;
  for (auto& comp : support_components(rho.matrix(), support, tol)) {
    Real weight = 0;
    for (Index i : comp) weight += rho.population(i);
    ComplexMatrix<Real> sub = principal_submatrix(rho.matrix(), comp) / weight;
    sub = ((sub + sub.adjoint()) / Real(2)).eval();
    auto state = detail::validate_with(sub, tol * std::max(Real(1), Real(1) / weight), tol);
    out.permutation.insert(out.permutation.end(), comp.begin(), comp.end());
    out.blocks.push_back({weight, std::move(comp), std::move(state)});
  }
  for (Index i = 0; i < d; ++i)
    if (!support[static_cast<std::size_t>(i)]) out.zero_sector.push_back(i);
  out.permutation.insert(out.permutation.end(), out.zero_sector.begin(), out.zero_sector.end());
  return out;
}

}  // namespace sio
