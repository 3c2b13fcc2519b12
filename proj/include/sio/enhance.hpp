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
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "sio/blocks.hpp"
#include "sio/channel.hpp"
#include "sio/core.hpp"
#include "sio/perron.hpp"
#include "sio/state.hpp"

namespace sio {

template <std::floating_point Real = double>
struct EnhanceOptions {
  PerronOptions<Real> perron{};
  /// Blocks whose Perron root is within degeneracy * lambda_max of the largest
  /// count as winning.
  Real degeneracy = Real(1e-9);
};

template <std::floating_point Real = double>
struct BlockReport {
  std::vector<Index> indices;
  Real weight = 0;
  Real lambda = 0;
  RealVector<Real> phi;
  Real block_p_max = 0;  // min_i rho^a_ii / phi_i^2 for the renormalized block state
  Index argmin = 0;      // original index attaining block_p_max, smallest on ties
  bool winning = false;
  long iterations = 0;
  Real residual = 0;
};

/// Everything the optimizer knows about a state: the Perron data of each
/// irreducible block and which blocks attain the global Perron root.
template <std::floating_point Real = double>
struct BlockSpectrum {
  BlockDecomposition<Real> decomposition;
  std::vector<BlockReport<Real>> reports;
  Real lambda_max = 0;
};

template <std::floating_point Real = double>
struct EnhancementResult {
  Real c_input = 0;
  Real c_max = 0;
  Real p_max = 0;
  Real lambda_max = 0;
  std::vector<BlockReport<Real>> blocks;
  std::vector<std::size_t> winning_blocks;
  std::vector<Index> zero_sector;
  KrausOperator<Real> optimal_kraus;
  KrausOperator<Real> failure_kraus;
};

template <std::floating_point Real>
BlockSpectrum<Real> block_spectrum(const DensityMatrix<Real>& rho, const EnhanceOptions<Real>& opts = {}) {
  BlockSpectrum<Real> out{block_decompose(rho), {}, 0};
  if (out.decomposition.blocks.empty())
    throw Error(ErrorCode::OutOfRange, "state has no diagonal entry above tolerance");

  // Blocks are solved independently and reduced in index order.
  for (const auto& b : out.decomposition.blocks) {
    const RealMatrix<Real> a = comparison_matrix(b.state).entries;
    const PerronData<Real> pd = perron(a, opts.perron);
    BlockReport<Real> rep;
    rep.indices = b.indices;
    rep.weight = b.weight;
    rep.lambda = pd.lambda_max;
    rep.phi = pd.vector;
    rep.iterations = pd.iterations;
    rep.residual = pd.residual;
    rep.block_p_max = std::numeric_limits<Real>::infinity();
    for (Index r = 0; r < b.dim(); ++r) {
      const Real ratio = b.state.population(r) / (pd.vector(r) * pd.vector(r));
      if (ratio < rep.block_p_max) {
        rep.block_p_max = ratio;
        rep.argmin = b.indices[static_cast<std::size_t>(r)];
      }
    }
    out.lambda_max = std::max(out.lambda_max, rep.lambda);
    out.reports.push_back(std::move(rep));
  }
  for (auto& rep : out.reports) rep.winning = rep.lambda >= out.lambda_max * (Real(1) - opts.degeneracy);
  return out;
}

/// Largest l1 coherence reachable from rho by a stochastic strictly incoherent
/// operation: lambda_max(A) - 1 with A the comparison matrix.
template <std::floating_point Real>
Real max_enhanced_coherence(const DensityMatrix<Real>& rho, const EnhanceOptions<Real>& opts = {}) {
  return block_spectrum(rho, opts).lambda_max - Real(1);
}

template <std::floating_point Real>
Real max_probability(const BlockSpectrum<Real>& spec) {
  Real p = 0;
  for (const auto& rep : spec.reports)
    if (rep.winning) p += rep.weight * rep.block_p_max;
  return p;
}

/// Largest success probability with which the maximal coherence is reached.
template <std::floating_point Real>
Real max_probability(const DensityMatrix<Real>& rho, const EnhanceOptions<Real>& opts = {}) {
  return max_probability(block_spectrum(rho, opts));
}

template <std::floating_point Real = double>
struct OptimalKraus {
  KrausOperator<Real> kraus;
  KrausOperator<Real> failure;
};

template <std::floating_point Real>
OptimalKraus<Real> optimal_kraus(const BlockSpectrum<Real>& spec, Real tol) {
  const auto& dec = spec.decomposition;
  ComplexMatrix<Real> k = ComplexMatrix<Real>::Zero(dec.dim, dec.dim);
  for (std::size_t a = 0; a < dec.blocks.size(); ++a) {
    const auto& rep = spec.reports[a];
    if (!rep.winning) continue;
    const auto& b = dec.blocks[a];
    const Real scale = std::sqrt(rep.block_p_max);
    for (Index r = 0; r < b.dim(); ++r)
      k(b.indices[static_cast<std::size_t>(r)], b.indices[static_cast<std::size_t>(r)]) =
          scale * rep.phi(r) / std::sqrt(b.state.population(r));
  }
  KrausSet<Real> completed = complete_instrument(KrausSet<Real>({KrausOperator<Real>(k)}, tol), tol);
  return {completed[0], completed[1]};
}

/// Diagonal optimal Kraus operator K' (incoherent unitary fixed to identity)
/// and its completion F = (I - K'^dagger K')^{1/2}.
template <std::floating_point Real>
OptimalKraus<Real> optimal_kraus(const DensityMatrix<Real>& rho, const EnhanceOptions<Real>& opts = {}) {
  return optimal_kraus(block_spectrum(rho, opts), rho.tol());
}

template <std::floating_point Real>
EnhancementResult<Real> analyze(const DensityMatrix<Real>& rho, const EnhanceOptions<Real>& opts = {}) {
  const BlockSpectrum<Real> spec = block_spectrum(rho, opts);
  OptimalKraus<Real> ops = optimal_kraus(spec, rho.tol());
  EnhancementResult<Real> out{l1_coherence(rho),
                              spec.lambda_max - Real(1),
                              max_probability(spec),
                              spec.lambda_max,
                              spec.reports,
                              {},
                              spec.decomposition.zero_sector,
                              std::move(ops.kraus),
                              std::move(ops.failure)};
  for (std::size_t a = 0; a < spec.reports.size(); ++a)
    if (spec.reports[a].winning) out.winning_blocks.push_back(a);
  return out;
}

template <std::floating_point Real = double>
struct PureStateReport {
  Index support = 0;  // number of components with |phi_i|^2 above tolerance
  Real c_max = 0;
  Real p_max = 0;
  bool reaches_maximal = false;  // every component nonzero
};

/// Fast path for pure states |phi><phi|: the comparison matrix is all-ones on
/// the support, so the Perron root equals the support size.
template <std::floating_point Real>
PureStateReport<Real> pure_state_analysis(const ComplexVector<Real>& amplitudes, Real tol = Real(kDefaultTol)) {
  const Real norm = amplitudes.norm();
  if (amplitudes.size() == 0 || std::abs(norm - Real(1)) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "amplitude vector must have unit norm, got " << norm;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  PureStateReport<Real> out;
  const Index d = amplitudes.size();
  Real min_pop = std::numeric_limits<Real>::infinity();
  for (Index i = 0; i < d; ++i) {
    const Real pop = std::norm(amplitudes(i));
    if (pop > tol) {
      ++out.support;
      min_pop = std::min(min_pop, pop);
    }
  }
  out.c_max = Real(out.support - 1);
  out.reaches_maximal = out.support == d;
  if (out.reaches_maximal) {
    out.p_max = Real(d) * min_pop;
  } else {
    const ComplexMatrix<Real> rho = amplitudes * amplitudes.adjoint();
    out.p_max = max_probability(validate_density(rho, tol));
  }
  return out;
}

template <std::floating_point Real = double>
struct QubitClosedForm {
  Real c_input;
  Real c_max;
  Real p_max;
};

namespace detail {

template <std::floating_point Real>
void check_qubit_params(Real r, Real theta) {
  if (!(r > 0 && r <= 1)) {
    std::ostringstream os;
    os.precision(17);
    os << "r must lie in (0, 1], got " << r;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  if (!(theta > 0 && theta < std::numbers::pi_v<Real>)) {
    std::ostringstream os;
    os.precision(17);
    os << "theta must lie in (0, pi), got " << theta;
    throw Error(ErrorCode::OutOfRange, os.str());
  }
}

}  // namespace detail

/// Bloch-parameterized qubit (1 + r cos t, e^{-i phase} r sin t; e^{i phase} r sin t, 1 - r cos t) / 2.
template <std::floating_point Real>
DensityMatrix<Real> qubit_state(Real r, Real theta, Real phase = 0, Real tol = Real(kDefaultTol)) {
  detail::check_qubit_params(r, theta);
  ComplexMatrix<Real> m(2, 2);
  const Real c = r * std::cos(theta);
  const Real s = r * std::sin(theta);
  m(0, 0) = (1 + c) / 2;
  m(1, 1) = (1 - c) / 2;
  m(0, 1) = std::polar(s / 2, -phase);
  m(1, 0) = std::polar(s / 2, phase);
  return validate_density(m, tol);
}

template <std::floating_point Real>
QubitClosedForm<Real> qubit_closed_form(Real r, Real theta) {
  detail::check_qubit_params(r, theta);
  const Real s = r * std::abs(std::sin(theta));
  const Real c = r * std::abs(std::cos(theta));
  return {s, s / std::sqrt(1 - c * c), 1 - c};
}

}  // namespace sio
