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

// Command-line front end: analyze, enhance, simulate, verify, qubit.
//
// Exit codes: 0 ok, 1 property failure, 2 input error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sio/sio.hpp"

namespace {

using sio::io::json;

enum class Format { Json, Csv };

struct RunConfig {
  std::string input;
  std::string kraus;
  double tol = sio::kDefaultTol;
  std::size_t trials = 100000;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  Format format = Format::Json;
  double r = 0;
  double theta = 0;
};

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;
constexpr int kNumericalFailure = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sio::Error(sio::ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sio::DensityMatrix<double> load_state(const RunConfig& cfg) {
  const json j = sio::io::parse_text(read_file(cfg.input));
  return sio::validate_density(sio::io::state_from_json(j), cfg.tol);
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_analyze(const RunConfig& cfg) {
  const auto rho = load_state(cfg);
  const auto result = sio::analyze(rho);
  if (cfg.format == Format::Csv)
    std::cout << sio::io::to_csv(result);
  else
    emit(sio::io::to_json(result));
  return kOk;
}

int cmd_enhance(const RunConfig& cfg) {
  const auto rho = load_state(cfg);
  std::vector<sio::KrausOperator<double>> ops;
  if (cfg.kraus.empty()) {
    ops.push_back(sio::optimal_kraus(rho).kraus);
  } else {
    for (auto& m : sio::io::kraus_from_json(sio::io::parse_text(read_file(cfg.kraus))))
      ops.emplace_back(std::move(m));
  }
  const sio::KrausSet<double> ks(std::move(ops), cfg.tol);
  const auto out = sio::apply_stochastic(rho, ks);
  const double c_in = sio::l1_coherence(rho);
  const double c_out = sio::l1_coherence(out.state);
  if (cfg.format == Format::Csv) {
    std::cout << "probability,cInput,cOutput,strictlyIncoherent\n"
              << sio::io::format_real(out.probability) << ',' << sio::io::format_real(c_in) << ','
              << sio::io::format_real(c_out) << ',' << (ks.strictly_incoherent(cfg.tol) ? 1 : 0) << '\n';
  } else {
    emit({{"probability", out.probability},
          {"cInput", c_in},
          {"cOutput", c_out},
          {"strictlyIncoherent", ks.strictly_incoherent(cfg.tol)},
          {"state", sio::io::state_to_json(out.state.matrix())}});
  }
  return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const auto rho = load_state(cfg);
  const auto spec = sio::block_spectrum(rho);
  const double p_max = sio::max_probability(spec);
  const auto ops = sio::optimal_kraus(spec, rho.tol());
  const sio::KrausSet<double> instrument({ops.kraus, ops.failure}, cfg.tol);
  const auto rep = sio::monte_carlo_success(rho, instrument, 1, cfg.trials, cfg.seed);
  const double dev = std::abs(rep.empirical_p - p_max);
  if (cfg.format == Format::Csv) {
    std::cout << "trials,successes,empiricalP,stdError,pMax,absDeviation,seed\n"
              << rep.trials << ',' << rep.successes << ',' << sio::io::format_real(rep.empirical_p) << ','
              << sio::io::format_real(rep.std_error) << ',' << sio::io::format_real(p_max) << ','
              << sio::io::format_real(dev) << ',' << rep.seed << '\n';
  } else {
    json j = sio::io::to_json(rep);
    j["pMax"] = p_max;
    j["absDeviation"] = dev;
    emit(j);
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  const sio::CampaignConfig cc{cfg.samples, cfg.trials, cfg.seed};
  const auto results = sio::run_campaigns(cc);
  bool all = true;
  json arr = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
    json j = {{"name", r.name},
              {"passed", r.passed},
              {"cases", r.cases},
              {"metric", r.metric},
              {"worstMargin", r.worst_margin}};
    if (r.failing_seed) j["failingSeed"] = *r.failing_seed;
    arr.push_back(std::move(j));
  }
  if (cfg.format == Format::Csv) {
    std::cout << "property,status,cases,worstMargin,failingSeed\n";
    for (const auto& r : results)
      std::cout << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ',' << r.cases << ','
                << sio::io::format_real(r.worst_margin) << ',' << (r.failing_seed ? std::to_string(*r.failing_seed) : "")
                << '\n';
  } else {
    emit({{"seed", cfg.seed},
          {"samples", cfg.samples},
          {"trials", cfg.trials},
          {"properties", std::move(arr)},
          {"allPassed", all}});
  }
  return all ? kOk : kPropertyFailure;
}

int cmd_qubit(const RunConfig& cfg) {
  const auto closed = sio::qubit_closed_form(cfg.r, cfg.theta);
  const auto rho = sio::qubit_state(cfg.r, cfg.theta, 0.0, cfg.tol);
  const auto general = sio::analyze(rho);
  const double disagreement = std::max({std::abs(closed.c_input - general.c_input),
                                        std::abs(closed.c_max - general.c_max),
                                        std::abs(closed.p_max - general.p_max)});
  const bool agree = disagreement <= 1e-9;
  if (!agree) std::cerr << "closed form and general pipeline disagree by " << disagreement << '\n';
  if (cfg.format == Format::Csv) {
    std::cout << "path,cInput,cMax,pMax\n"
              << "closedForm," << sio::io::format_real(closed.c_input) << ',' << sio::io::format_real(closed.c_max)
              << ',' << sio::io::format_real(closed.p_max) << '\n'
              << "general," << sio::io::format_real(general.c_input) << ',' << sio::io::format_real(general.c_max)
              << ',' << sio::io::format_real(general.p_max) << '\n';
  } else {
    emit({{"r", cfg.r},
          {"theta", cfg.theta},
          {"closedForm", {{"cInput", closed.c_input}, {"cMax", closed.c_max}, {"pMax", closed.p_max}}},
          {"general", {{"cInput", general.c_input}, {"cMax", general.c_max}, {"pMax", general.p_max}}},
          {"maxDisagreement", disagreement},
          {"agree", agree}});
  }
  return agree ? kOk : kPropertyFailure;
}

int exit_code_for(sio::ErrorCode code) {
  return code == sio::ErrorCode::NoConvergence ? kNumericalFailure : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence enhancement by stochastic strictly incoherent operations"};
  app.require_subcommand(1);

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Validation tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Output format (json|csv)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  auto needs_input = [&](CLI::App* sub) { sub->add_option("--input", cfg.input, "State JSON file")->required(); };

  auto* analyze = app.add_subcommand("analyze", "Maximal enhanced coherence, probability and optimal Kraus operator");
  common(analyze);
  needs_input(analyze);

  auto* enhance = app.add_subcommand("enhance", "Apply the optimal (or a given) stochastic operation to a state");
  common(enhance);
  needs_input(enhance);
  enhance->add_option("--kraus", cfg.kraus, "Kraus set JSON file (default: the optimal operator)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo sampling of the optimal operation's success");
  common(simulate);
  needs_input(simulate);
  simulate->add_option("--trials", cfg.trials, "Number of trials")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "RNG seed");

  auto* verify = app.add_subcommand("verify", "Run the randomized verification campaigns");
  common(verify);
  verify->add_option("--trials", cfg.trials, "Monte Carlo trials per state")->check(CLI::PositiveNumber);
  verify->add_option("--samples", cfg.samples, "Brute-force samples per state")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "RNG seed");

  auto* qubit = app.add_subcommand("qubit", "Closed-form qubit values against the general pipeline");
  common(qubit);
  qubit->add_option("--r", cfg.r, "Bloch radius in (0, 1]")->required();
  qubit->add_option("--theta", cfg.theta, "Polar angle in (0, pi)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) return cmd_analyze(cfg);
    if (*enhance) return cmd_enhance(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*qubit) return cmd_qubit(cfg);
  } catch (const sio::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kInputError;
}
