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
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "sio/channel.hpp"
#include "sio/core.hpp"
#include "sio/enhance.hpp"
#include "sio/state.hpp"

namespace sio {

// Seeding contract: every random quantity is drawn from an mt19937_64 whose
// state is derived from (seed, stream) through std::seed_seq. Work split into
// batches uses the batch index as the stream, so results do not depend on the
// order in which batches run.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <std::floating_point Real = double>
ComplexMatrix<Real> ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<Real> normal(0, 1);
  ComplexMatrix<Real> g(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(r, c) = {re, im};
    }
  return g;
}

/// G G^dagger / Tr(G G^dagger) for a d x rank complex Gaussian G.
template <std::floating_point Real = double>
ComplexMatrix<Real> random_density_matrix(Index d, Index rank, Rng& rng) {
  const ComplexMatrix<Real> g = ginibre<Real>(d, rank, rng);
  ComplexMatrix<Real> m = g * g.adjoint();
  m /= m.trace().real();
  return (m + m.adjoint()) / Real(2);
}

template <std::floating_point Real = double>
DensityMatrix<Real> random_density(Index d, Index rank, std::uint64_t seed, Real tol = Real(kDefaultTol)) {
  if (d < 1 || rank < 1 || rank > d) {
    std::ostringstream os;
    os << "need 1 <= rank <= d, got d=" << d << " rank=" << rank;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  Rng rng = make_rng(seed);
  return validate_density(random_density_matrix<Real>(d, rank, rng), tol);
}

inline std::vector<Index> random_permutation(Index d, Rng& rng) {
  std::vector<Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// M m M^T for the permutation matrix M with (M m M^T)_{ij} = m_{perm[i], perm[j]}.
template <std::floating_point Real>
ComplexMatrix<Real> permute(const ComplexMatrix<Real>& m, const std::vector<Index>& perm) {
  const Index d = m.rows();
  ComplexMatrix<Real> out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i, j) = m(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return out;
}

/// A randomly scrambled direct sum p_1 rho_1 (+) ... (+) p_n rho_n (+) 0 with
/// random block sizes, ranks and weights, and a zero sector of random size.
template <std::floating_point Real = double>
DensityMatrix<Real> random_block_state(Index d, std::uint64_t seed, Real tol = Real(kDefaultTol)) {
  Rng rng = make_rng(seed);
  const Index zeros = std::uniform_int_distribution<Index>(0, d - 1)(rng);
  Index remaining = d - zeros;
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(d, d);
  std::exponential_distribution<Real> expo(1);
  Index offset = 0;
  Real total = 0;
  while (remaining > 0) {
    const Index size = std::uniform_int_distribution<Index>(1, remaining)(rng);
    const Index rank = std::uniform_int_distribution<Index>(1, size)(rng);
    const Real weight = expo(rng) + Real(0.05);
    m.block(offset, offset, size, size) = weight * random_density_matrix<Real>(size, rank, rng);
    total += weight;
    offset += size;
    remaining -= size;
  }
  m /= total;
  return validate_density(permute(m, random_permutation(d, rng)), tol);
}

/// Random complete strictly incoherent instrument with `count` operators. Each
/// operator is a permutation times a complex diagonal (some entries zeroed
/// after the first operator); a common right factor S^{-1/2} makes
/// sum K^dagger K = I exactly up to roundoff.
template <std::floating_point Real = double>
KrausSet<Real> random_sio_instrument(Index d, std::size_t count, std::uint64_t seed, Real tol = Real(kDefaultTol)) {
  Rng rng = make_rng(seed);
  std::normal_distribution<Real> normal(0, 1);
  std::bernoulli_distribution drop(0.25);
  std::vector<ComplexMatrix<Real>> raw;
  RealVector<Real> s = RealVector<Real>::Zero(d);
  for (std::size_t n = 0; n < count; ++n) {
    const auto perm = random_permutation(d, rng);
    ComplexMatrix<Real> k = ComplexMatrix<Real>::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
      const Complex<Real> z(normal(rng), normal(rng));
      if (n > 0 && drop(rng)) continue;
      k(perm[static_cast<std::size_t>(j)], j) = z;
      s(j) += std::norm(z);
    }
    raw.push_back(std::move(k));
  }
  std::vector<KrausOperator<Real>> ops;
  for (auto& k : raw) {
    for (Index j = 0; j < d; ++j) k.col(j) /= std::sqrt(s(j));
    ops.emplace_back(std::move(k));
  }
  return KrausSet<Real>(std::move(ops), tol);
}

template <std::floating_point Real = double>
struct SearchReport {
  Real best_coherence = 0;
  RealVector<Real> best_diagonal;  // moduli |a_i|, unit Euclidean norm
  std::size_t samples = 0;         // random samples, excluding the deterministic candidates
  std::uint64_t seed = 0;
};

/// l1 coherence of K rho K^dagger / Tr for K = diag(a), evaluated directly
/// from the entries of rho: sum_{i!=j} a_i a_j |rho_ij| / sum_i a_i^2 rho_ii.
/// Returns a negative value when the output would have zero trace.
template <std::floating_point Real>
Real diagonal_kraus_coherence(const DensityMatrix<Real>& rho, const RealVector<Real>& a) {
  const Index d = rho.dim();
  Real num = 0;
  Real den = 0;
  for (Index i = 0; i < d; ++i) {
    den += a(i) * a(i) * rho.population(i);
    for (Index j = 0; j < d; ++j)
      if (i != j) num += a(i) * a(j) * std::abs(rho(i, j));
  }
  if (den <= rho.tol() * a.squaredNorm()) return Real(-1);
  return num / den;
}

/// Random search over strictly incoherent diagonal Kraus operators. Squared
/// moduli are drawn uniformly from the simplex; the uniform vector and the
/// optimizer's own diagonal are always evaluated as well.
template <std::floating_point Real>
SearchReport<Real> brute_force_max_coherence(const DensityMatrix<Real>& rho, std::size_t samples, std::uint64_t seed) {
  constexpr std::size_t kBatch = 4096;
  const Index d = rho.dim();
  SearchReport<Real> rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.best_coherence = -1;

  auto consider = [&](RealVector<Real> a) {
    const Real norm = a.norm();
    if (!(norm > 0)) return;
    a /= norm;
    const Real c = diagonal_kraus_coherence(rho, a);
    if (c > rep.best_coherence) {
      rep.best_coherence = c;
      rep.best_diagonal = std::move(a);
    }
  };

  consider(RealVector<Real>::Ones(d));
  consider(optimal_kraus(rho).kraus.matrix().diagonal().cwiseAbs());

  std::exponential_distribution<Real> expo(1);
  RealVector<Real> a(d);
  for (std::size_t batch = 0; batch * kBatch < samples; ++batch) {
    Rng rng = make_rng(seed, batch);
    const std::size_t end = std::min(samples, (batch + 1) * kBatch);
    for (std::size_t s = batch * kBatch; s < end; ++s) {
      for (Index i = 0; i < d; ++i) a(i) = std::sqrt(expo(rng));
      consider(a);
    }
  }
  return rep;
}

struct TrialReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_p = 0;
  double std_error = 0;
  std::uint64_t seed = 0;
};

/// Samples outcomes of a complete instrument on rho; an outcome is a success
/// when it is one of the first `success_ops` operators (the sub-channel before
/// completion).
template <std::floating_point Real>
TrialReport monte_carlo_success(const DensityMatrix<Real>& rho, const KrausSet<Real>& instrument,
                                std::size_t success_ops, std::size_t trials, std::uint64_t seed) {
  constexpr std::size_t kBatch = 1 << 16;
  const Real defect = completeness_defect(instrument);
  if (defect > rho.tol()) {
    std::ostringstream os;
    os.precision(17);
    os << "sum K^dagger K deviates from identity by " << defect;
    throw Error(ErrorCode::IncompleteInstrument, os.str());
  }
  if (rho.dim() != instrument.dim()) throw Error(ErrorCode::DimensionMismatch, "state and instrument dimensions differ");
  if (trials == 0) throw Error(ErrorCode::OutOfRange, "trials must be at least 1");

  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& k : instrument.operators()) {
    const Real p = (k.matrix() * rho.matrix() * k.matrix().adjoint()).trace().real();
    acc += static_cast<double>(std::max(p, Real(0)));
    cumulative.push_back(acc);
  }
  for (auto& c : cumulative) c /= acc;
  cumulative.back() = 1.0;

  TrialReport rep;
  rep.trials = trials;
  rep.seed = seed;
  for (std::size_t batch = 0; batch * kBatch < trials; ++batch) {
    Rng rng = make_rng(seed, batch);
    const std::size_t end = std::min(trials, (batch + 1) * kBatch);
    for (std::size_t t = batch * kBatch; t < end; ++t) {
      const double u = uniform01(rng);
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      if (static_cast<std::size_t>(it - cumulative.begin()) < success_ops) ++rep.successes;
    }
  }
  rep.empirical_p = static_cast<double>(rep.successes) / static_cast<double>(trials);
  rep.std_error = std::sqrt(rep.empirical_p * (1 - rep.empirical_p) / static_cast<double>(trials));
  return rep;
}

/// Checks on a comparison matrix that a row of ones forces every entry to be
/// one. Vacuously true when no row is all ones.
template <std::floating_point Real>
bool all_ones_propagation_check(const ComparisonMatrix<Real>& a, Real tol = Real(kDefaultTol)) {
  const auto near_one = [tol](Real v) { return std::abs(v - Real(1)) <= tol; };
  bool has_ones_row = false;
  for (Index i = 0; i < a.dim() && !has_ones_row; ++i) {
    bool row = true;
    for (Index j = 0; j < a.dim() && row; ++j) row = near_one(a.entries(i, j));
    has_ones_row = row;
  }
  if (!has_ones_row) return true;
  return a.entries.unaryExpr(near_one).all();
}

}  // namespace sio
