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
#include <string>
#include <vector>

#include "json.hpp"

#include "sio/channel.hpp"
#include "sio/core.hpp"
#include "sio/enhance.hpp"
#include "sio/oracle.hpp"
#include "sio/state.hpp"

// File formats
//
//   state:  {"dim": d, "entries": [[[re, im], ...], ...]}   row-major d x d
//   kraus:  {"dim": d, "operators": [<d x d entries>, ...]}
//
// Reals are written with round-trip precision (up to 17 significant digits),
// so parse(serialize(x)) is bit-identical.

namespace sio::io {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) fail("expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

inline Index read_dim(const json& obj) {
  const json& d = require(obj, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) fail("\"dim\" must be a positive integer");
  return static_cast<Index>(d.get<long long>());
}

inline double read_real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + ": non-finite number");
  return x;
}

inline ComplexMatrix<double> read_matrix(const json& rows, Index d, const std::string& where) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != d) fail(where + ": expected " + std::to_string(d) + " rows");
  ComplexMatrix<double> m(d, d);
  for (Index i = 0; i < d; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      fail(where + ": row " + std::to_string(i) + " must have " + std::to_string(d) + " entries");
    for (Index j = 0; j < d; ++j) {
      const json& z = row[static_cast<std::size_t>(j)];
      const std::string at = where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!z.is_array() || z.size() != 2) fail(at + ": expected a [re, im] pair");
      m(i, j) = {read_real(z[0], at), read_real(z[1], at)};
    }
  }
  return m;
}

}  // namespace detail

inline json matrix_to_json(const ComplexMatrix<double>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json real_vector_to_json(const RealVector<double>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

/// Parses the state format; the result still needs validate_density.
inline ComplexMatrix<double> state_from_json(const json& j) {
  const Index d = detail::read_dim(j);
  return detail::read_matrix(detail::require(j, "entries"), d, "entries");
}

inline json state_to_json(const ComplexMatrix<double>& m) {
  return {{"dim", m.rows()}, {"entries", matrix_to_json(m)}};
}

inline std::vector<ComplexMatrix<double>> kraus_from_json(const json& j) {
  const Index d = detail::read_dim(j);
  const json& ops = detail::require(j, "operators");
  if (!ops.is_array() || ops.empty()) detail::fail("\"operators\" must be a non-empty array");
  std::vector<ComplexMatrix<double>> out;
  for (std::size_t n = 0; n < ops.size(); ++n)
    out.push_back(detail::read_matrix(ops[n], d, "operators[" + std::to_string(n) + "]"));
  return out;
}

inline json kraus_to_json(const std::vector<ComplexMatrix<double>>& ops) {
  json arr = json::array();
  for (const auto& k : ops) arr.push_back(matrix_to_json(k));
  return {{"dim", ops.empty() ? Index{0} : ops.front().rows()}, {"operators", std::move(arr)}};
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    detail::fail(std::string("malformed JSON: ") + e.what());
  }
}

inline json to_json(const EnhancementResult<double>& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"indices", b.indices},
                      {"weight", b.weight},
                      {"lambda", b.lambda},
                      {"phi", real_vector_to_json(b.phi)},
                      {"blockPMax", b.block_p_max},
                      {"argmin", b.argmin},
                      {"winning", b.winning},
                      {"iterations", b.iterations},
                      {"residual", b.residual}});
  }
  return {{"cInput", r.c_input},
          {"cMax", r.c_max},
          {"pMax", r.p_max},
          {"lambdaMax", r.lambda_max},
          {"blocks", std::move(blocks)},
          {"winningBlocks", r.winning_blocks},
          {"zeroSector", r.zero_sector},
          {"kraus", state_to_json(r.optimal_kraus.matrix())},
          {"failure", state_to_json(r.failure_kraus.matrix())}};
}

inline json to_json(const TrialReport& t) {
  return {{"trials", t.trials},
          {"successes", t.successes},
          {"empiricalP", t.empirical_p},
          {"stdError", t.std_error},
          {"seed", t.seed}};
}

inline json to_json(const SearchReport<double>& s) {
  return {{"bestCoherence", s.best_coherence},
          {"bestDiagonal", real_vector_to_json(s.best_diagonal)},
          {"samples", s.samples},
          {"seed", s.seed}};
}

inline std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// One row per block; the scalar summary is repeated on every row.
inline std::string to_csv(const EnhancementResult<double>& r) {
  std::ostringstream os;
  os << "cInput,cMax,pMax,block,indices,weight,lambda,blockPMax,winning,phi\n";
  for (std::size_t a = 0; a < r.blocks.size(); ++a) {
    const auto& b = r.blocks[a];
    os << format_real(r.c_input) << ',' << format_real(r.c_max) << ',' << format_real(r.p_max) << ',' << a << ",\"";
    for (std::size_t k = 0; k < b.indices.size(); ++k) os << (k ? " " : "") << b.indices[k];
    os << "\"," << format_real(b.weight) << ',' << format_real(b.lambda) << ',' << format_real(b.block_p_max) << ','
       << (b.winning ? 1 : 0) << ",\"";
    for (Index k = 0; k < b.phi.size(); ++k) os << (k ? " " : "") << format_real(b.phi(k));
    os << "\"\n";
  }
  return os.str();
}

}  // namespace sio::io
