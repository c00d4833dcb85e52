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

#ifndef MPSQ_SERIALIZE_HPP
#define MPSQ_SERIALIZE_HPP

#include <iosfwd>

#include <json.hpp>

#include "mpsq/magic_square.hpp"
#include "mpsq/pomdp.hpp"

namespace mpsq {

// {check_name: {"pass": bool, "max_residual": float}}
nlohmann::json to_json(const magic::ValidationReport& report);

// Triples encoded "+--"; keys are "<alice>,<bob>".
nlohmann::json to_json(const magic::RoundDistribution& dist);

nlohmann::json to_json(const magic::DetGameStrategy& strategy);

// Summary only; the per-step table goes to CSV.
nlohmann::json to_json(const pomdp::TrajectoryRecord& record);

// Per-step rows: n,x,y,u,v,r,running_avg.
void write_csv(std::ostream& os, const pomdp::TrajectoryRecord& record);

// Kernel table with states keyed "x,y" and actions keyed by sign strings;
// the 9 probabilities per row are in row-major state order.
nlohmann::json kernel_to_json(const pomdp::Kernel& kernel);
pomdp::Kernel kernel_from_json(const nlohmann::json& j);

}  // namespace mpsq

#endif  // MPSQ_SERIALIZE_HPP
