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

#include <cmath>
#include <sstream>

#include "sio/core.hpp"

namespace sio {

template <std::floating_point Real = double>
struct PerronData {
  Real lambda_max = 0;
  RealVector<Real> vector;  // unit Euclidean norm, componentwise >= 0
  long iterations = 0;
  Real residual = 0;  // ||A v - lambda v||
};

template <std::floating_point Real = double>
struct PerronOptions {
  Real tolerance = Real(1e-12);  // relative: residual <= tolerance * lambda
  long max_iterations = 100000;
};

/// Dominant eigenpair of a symmetric nonnegative irreducible matrix with unit
/// diagonal, by power iteration from the uniform vector.
///
/// A unit diagonal makes an irreducible nonnegative matrix primitive, so the
/// Perron root strictly dominates every other eigenvalue in modulus and the
/// iteration converges. Starting from a positive vector keeps every iterate
/// positive, so no sign fixing is needed.
template <std::floating_point Real>
PerronData<Real> perron(const RealMatrix<Real>& a, PerronOptions<Real> opts = {}) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorCode::NotSquare, "Perron solve needs a non-empty square matrix");
  const Index n = a.rows();

  PerronData<Real> out;
  RealVector<Real> x = RealVector<Real>::Constant(n, Real(1) / std::sqrt(Real(n)));
  RealVector<Real> y(n);
  for (long it = 1; it <= opts.max_iterations; ++it) {
    y.noalias() = a * x;
    const Real lambda = x.dot(y);
    const Real residual = (y - lambda * x).norm();
    if (residual <= opts.tolerance * lambda) {
      out.lambda_max = lambda;
      out.vector = x;
      out.iterations = it;
      out.residual = residual;
      return out;
    }
    const Real norm = y.norm();
    if (!(norm > 0)) break;
    x = y / norm;
    out.residual = residual;
  }
  std::ostringstream os;
  os.precision(17);
  os << "power iteration did not converge in " << opts.max_iterations
     << " iterations (residual " << out.residual << ")";
  throw Error(ErrorCode::NoConvergence, os.str());
}

}  // namespace sio
