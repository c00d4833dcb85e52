// Copyright 2026 The mpsq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpsq/serialize.hpp"

#include <ostream>

namespace mpsq {

using nlohmann::json;

json to_json(const magic::ValidationReport& report) {
  json out = json::object();
  for (const auto& [name, result] : report.checks)
    out[name] = {{"pass", result.pass}, {"max_residual", result.max_residual}};
  return out;
}

json to_json(const magic::RoundDistribution& dist) {
  json out = json::object();
  for (const auto& [outcome, prob] : dist)
    out[outcome.alice.str() + "," + outcome.bob.str()] = prob;
  return out;
}

json to_json(const magic::DetGameStrategy& strategy) {
  json alice = json::array();
  json bob = json::array();
  for (int i = 0; i < 3; ++i) {
    alice.push_back(strategy.alice_rows[static_cast<std::size_t>(i)].str());
    bob.push_back(strategy.bob_cols[static_cast<std::size_t>(i)].str());
  }
  return {{"alice_rows", alice}, {"bob_cols", bob}};
}

json to_json(const pomdp::TrajectoryRecord& record) {
  json out{{"seed", record.seed},
           {"kernel", record.kernel_id},
           {"alice", record.alice_id},
           {"bob", record.bob_id},
           {"steps", record.steps.size()},
           {"average", record.average()}};
  if (record.steps.size() > 2) out["average_from_step_2"] = record.average_from(2);
  return out;
}

void write_csv(std::ostream& os, const pomdp::TrajectoryRecord& record) {
  os << "n,x,y,u,v,r,running_avg\n";
  for (const pomdp::StepRecord& rec : record.steps) {
    os << rec.n << ',' << rec.state.x << ',' << rec.state.y << ','
       << rec.u.triple().str() << ',' << rec.v.triple().str() << ',' << rec.reward
       << ',' << rec.running_avg << '\n';
  }
}

json kernel_to_json(const pomdp::Kernel& kernel) {
  json table = json::object();
  for (int si = 0; si < pomdp::kStateCount; ++si) {
    const pomdp::State s = pomdp::State::from_index(si);
    json by_u = json::object();
    for (const pomdp::ActionU& u : pomdp::action_set_u()) {
      json by_v = json::object();
      for (const pomdp::ActionV& v : pomdp::action_set_v())
        by_v[v.triple().str()] = kernel.row(s, u, v);
      by_u[u.triple().str()] = std::move(by_v);
    }
    table[s.str()] = std::move(by_u);
  }
  return {{"id", kernel.id()},
          {"declared_delta", kernel.declared_delta()},
          {"table", std::move(table)}};
}

pomdp::Kernel kernel_from_json(const json& j) {
  std::vector<pomdp::Kernel::Row> rows(pomdp::kStateCount * 16);
  const json& table = j.at("table");
  for (int si = 0; si < pomdp::kStateCount; ++si) {
    const pomdp::State s = pomdp::State::from_index(si);
    const json& by_u = table.at(s.str());
    for (int ui = 0; ui < 4; ++ui) {
      const json& by_v =
          by_u.at(pomdp::action_set_u()[static_cast<std::size_t>(ui)].triple().str());
      for (int vi = 0; vi < 4; ++vi) {
        const json& row =
            by_v.at(pomdp::action_set_v()[static_cast<std::size_t>(vi)].triple().str());
        if (!row.is_array() || row.size() != pomdp::kStateCount)
          throw std::invalid_argument("kernel_from_json: bad probability row");
        pomdp::Kernel::Row& dst = rows[static_cast<std::size_t>(si * 16 + ui * 4 + vi)];
        for (int t = 0; t < pomdp::kStateCount; ++t)
          dst[static_cast<std::size_t>(t)] = row[static_cast<std::size_t>(t)].get<double>();
      }
    }
  }
  return pomdp::Kernel(j.value("id", std::string("custom")), std::move(rows),
                       j.at("declared_delta").get<double>());
}

}  // namespace mpsq
