// Copyright 2026 The qgas Authors
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

// JSON form of GasConfig and GasTrace. Layout is documented in
// docs/formats.md; keys are emitted in a fixed order.

#pragma once

#include <string>

#include "json.hpp"
#include "qgas/gas.hpp"

namespace qgas {

using Json = nlohmann::ordered_json;

inline Json to_json(const GasConfig& c) {
  Json j;
  j["m"] = c.m;
  j["real_precision_bits"] = c.real_precision_bits;
  j["lambda"] = c.lambda;
  j["max_oracle_queries"] = c.max_oracle_queries;
  j["rng_seed"] = c.rng_seed;
  j["initial_threshold_strategy"] = c.initial_threshold_strategy.to_string();
  j["approximate_solution"] =
      c.approximate_solution ? Json(*c.approximate_solution) : Json(nullptr);
  j["dicke_weight"] = c.dicke_weight ? Json(*c.dicke_weight) : Json(nullptr);
  j["stall_rounds"] = c.stall_rounds;
  j["backend"] = to_string(c.backend);
  return j;
}

inline GasConfig gas_config_from_json(const Json& j) {
  GasConfig c;
  c.m = j.at("m").get<unsigned>();
  c.real_precision_bits = j.at("real_precision_bits").get<unsigned>();
  c.lambda = j.at("lambda").get<double>();
  c.max_oracle_queries = j.at("max_oracle_queries").get<std::uint64_t>();
  c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  c.initial_threshold_strategy =
      ThresholdStrategy::parse(j.at("initial_threshold_strategy").get<std::string>());
  if (!j.at("approximate_solution").is_null()) {
    c.approximate_solution = j.at("approximate_solution").get<Assignment>();
  }
  if (!j.at("dicke_weight").is_null()) c.dicke_weight = j.at("dicke_weight").get<unsigned>();
  c.stall_rounds = j.at("stall_rounds").get<unsigned>();
  c.backend = parse_backend(j.at("backend").get<std::string>());
  return c;
}

inline Json to_json(const GasTrace& t) {
  Json j;
  j["config"] = to_json(t.config);
  j["encoding"] = {{"m", t.encoding.m}, {"scale", t.encoding.scale}};
  j["initial_threshold"] = t.initial_threshold;
  j["initial_assignment"] = t.initial_assignment;
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back({{"threshold", r.threshold},
                      {"rotation_count", r.rotation_count},
                      {"measured_assignment", r.measured_assignment},
                      {"measured_cost", r.measured_cost},
                      {"accepted", r.accepted},
                      {"cumulative_queries", r.cumulative_queries}});
  }
  j["rounds"] = std::move(rounds);
  j["total_oracle_queries"] = t.total_oracle_queries;
  j["best_assignment"] = t.best_assignment;
  j["best_cost"] = t.best_cost;
  j["converged"] = t.converged;
  return j;
}

}  // namespace qgas
