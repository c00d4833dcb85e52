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

#ifndef MPSQ_POMDP_HPP
#define MPSQ_POMDP_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpsq/magic_square.hpp"
#include "mpsq/quantum.hpp"
#include "mpsq/rng.hpp"
#include "mpsq/sign_triple.hpp"

namespace mpsq::pomdp {

// Two-agent average-reward model on a 3x3 state grid. Alice observes the
// x component and picks sign triples with product +1; Bob observes y and
// picks triples with product -1. Per-step reward is u^(y) * v^(x).
// Components are 1-based throughout, matching the game conventions.

struct State {
  int x = 1;
  int y = 1;

  State() = default;
  State(int x_, int y_);

  // Row-major index in 0..8: (1,1)->0, (1,2)->1, ..., (3,3)->8.
  int index() const { return (x - 1) * 3 + (y - 1); }
  static State from_index(int idx);
  std::string str() const;  // "x,y"
  static State parse(const std::string& text);

  friend bool operator==(const State&, const State&) = default;
};

inline constexpr int kStateCount = 9;

class ActionU {
 public:
  ActionU() = default;  // (+,+,+)
  explicit ActionU(SignTriple t);

  int at(int k) const { return triple_.at(k); }
  const SignTriple& triple() const { return triple_; }

  friend bool operator==(const ActionU&, const ActionU&) = default;
  friend std::strong_ordering operator<=>(const ActionU&, const ActionU&) = default;

 private:
  SignTriple triple_{1, 1, 1};
};

class ActionV {
 public:
  ActionV() : triple_(1, 1, -1) {}
  explicit ActionV(SignTriple t);

  int at(int k) const { return triple_.at(k); }
  const SignTriple& triple() const { return triple_; }

  friend bool operator==(const ActionV&, const ActionV&) = default;
  friend std::strong_ordering operator<=>(const ActionV&, const ActionV&) = default;

 private:
  SignTriple triple_;
};

// Fixed lexicographic enumerations (+ before -, coordinate 1 most
// significant): U = {+++, +--, -+-, --+}, V = {++-, +-+, -++, ---}.
const std::array<ActionU, 4>& action_set_u();
const std::array<ActionV, 4>& action_set_v();
int action_index(const ActionU& u);
int action_index(const ActionV& v);

int reward(const State& s, const ActionU& u, const ActionV& v);

// Probability vector over the 9 states, row-major.
using StateDist = std::array<double, kStateCount>;
StateDist uniform_state_dist();

// Transition kernel as a dense table over (state, u, v), plus the floor
// delta it claims to satisfy. Rows must be probability vectors (sum 1
// within 1e-12); when declared_delta > 0 every entry must exceed it.
class Kernel {
 public:
  using Row = StateDist;

  Kernel(std::string id, std::vector<Row> table, double declared_delta);

  const Row& row(const State& s, const ActionU& u, const ActionV& v) const;
  double declared_delta() const { return declared_delta_; }
  const std::string& id() const { return id_; }
  const std::vector<Row>& table() const { return table_; }

 private:
  std::string id_;
  std::vector<Row> table_;  // indexed (state.index()*16 + u_idx*4 + v_idx)
  double declared_delta_;
};

Kernel make_uniform_kernel(double declared_delta = 0.1);
// Rows are delta * 1 + (1 - 9*delta) * (seeded random simplex point);
// requires delta in (0, 1/9).
Kernel make_delta_floor_kernel(std::uint64_t seed, double delta);
// Deterministic walk through all nine states:
// (1,1)->(1,2)->(2,3)->(2,2)->(3,3)->(3,1)->(1,3)->(2,1)->(3,2)->(1,1).
Kernel make_periodic_kernel();

const std::array<State, kStateCount>& periodic_cycle();
State periodic_successor(const State& s);

// Next state drawn by inverse CDF over states in row-major order.
State step(const State& s, const ActionU& u, const ActionV& v,
           const Kernel& kernel, SplitMix64& rng);

// The common-randomness stream W_0, W_1, ... of i.i.d. uniform 64-bit
// words; random access, same seed => same stream.
class CommonRandomness {
 public:
  explicit CommonRandomness(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t word(std::size_t n) const {
    return mix64(seed_ + (n + 1) * 0x9e3779b97f4a7c15ULL);
  }

 private:
  std::uint64_t seed_;
};

// ---------------------------------------------------------------------------
// Policies.
//
// Flavors differ in what they may read; the signatures are the no-signaling
// constraint. Classical policies see only the agent's own observations and
// the common randomness. Relaxed policies additionally see the other
// agent's observations up to the previous step. Quantum-assisted policies
// get a per-step handle onto the agent's halves of two fresh Bell pairs.

enum class InformationMode { decentralized, relaxed, quantum_assisted };

class EmbeddedPvmCache;

// Measurement access to one agent's two qubits of the shared four-qubit
// state of a single step. The observable acts on the agent's own pair
// only; the simulator embeds it on that agent's factors, so a policy
// cannot touch the other agent's qubits.
class QubitPairHandle {
 public:
  int measure(const quantum::DichotomicObservable& op_on_own_pair);

 private:
  friend class EntangledStep;
  QubitPairHandle(magic::Agent agent, class EntangledStep* step,
                  EmbeddedPvmCache* cache)
      : agent_(agent), step_(step), cache_(cache) {}

  magic::Agent agent_;
  class EntangledStep* step_;
  EmbeddedPvmCache* cache_;
};

template <typename Action>
struct Policy {
  using ClassicalFn = std::function<Action(
      int n, std::span<const int> own_obs, std::span<const std::uint64_t> words)>;
  using RelaxedFn = std::function<Action(
      int n, std::span<const int> own_obs, std::span<const int> other_obs_prev,
      std::span<const std::uint64_t> words)>;
  using QuantumFn = std::function<Action(
      int n, std::span<const int> own_obs, std::span<const std::uint64_t> words,
      QubitPairHandle& qubits)>;

  std::string id;
  std::variant<ClassicalFn, RelaxedFn, QuantumFn> fn;

  static Policy classical(std::string id, ClassicalFn f) {
    return Policy{std::move(id), std::move(f)};
  }
  static Policy relaxed(std::string id, RelaxedFn f) {
    return Policy{std::move(id), std::move(f)};
  }
  static Policy quantum(std::string id, QuantumFn f) {
    return Policy{std::move(id), std::move(f)};
  }

  bool is_classical() const { return std::holds_alternative<ClassicalFn>(fn); }
  bool is_relaxed() const { return std::holds_alternative<RelaxedFn>(fn); }
  bool is_quantum() const { return std::holds_alternative<QuantumFn>(fn); }
};

using AlicePolicy = Policy<ActionU>;
using BobPolicy = Policy<ActionV>;

struct StepRecord {
  int n = 0;
  State state;
  ActionU u;
  ActionV v;
  int reward = 0;
  double running_avg = 0.0;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::string kernel_id;
  std::string alice_id;
  std::string bob_id;
  std::vector<StepRecord> steps;

  double average() const;
  // Mean reward over steps n >= first_step.
  double average_from(int first_step) const;
};

struct SimulationConfig {
  int steps = 1;
  std::uint64_t seed = 0;
  InformationMode mode = InformationMode::decentralized;
  StateDist initial = uniform_state_dist();
};

// Runs the closed loop: draws (X0,Y0) from the initial distribution,
// provides W_n to both agents each step, collects actions under each
// policy's information constraint, applies the reward and the kernel.
// In quantum mode each step gets two fresh independent Bell pairs.
// Throws std::invalid_argument if a policy flavor is not allowed by
// cfg.mode (e.g. a relaxed policy in decentralized mode).
TrajectoryRecord simulate(const AlicePolicy& alice, const BobPolicy& bob,
                          const Kernel& kernel, const SimulationConfig& cfg);

// ---------------------------------------------------------------------------
// Canned policies.

// The entangled strategy: on observing x, Alice measures row x of the
// square on her halves; Bob measures column y on his. Earns reward +1 at
// every step on every kernel.
std::pair<AlicePolicy, BobPolicy> quantum_mp_policies(
    std::shared_ptr<const magic::GameContext> ctx = nullptr);

// For the periodic kernel: after two steps each agent pins down the cycle
// position (all nine consecutive own-component triples are distinct),
// infers the other's observation and plays a matching +1 coordinate.
// Alice fills free coordinates with +1; Bob puts +1 at the smaller free
// index and -1 at the larger. Before step 2 (or off-cycle), both play the
// first enumerated action.
std::pair<AlicePolicy, BobPolicy> periodic_sync_policies();

// Constant first-enumerated actions.
std::pair<AlicePolicy, BobPolicy> first_action_policies();

// Both agents map the shared word W_n to a uniformly random action.
std::pair<AlicePolicy, BobPolicy> common_random_policies();

// Stationary memoryless tables x -> u, y -> v.
std::pair<AlicePolicy, BobPolicy> memoryless_policies(
    std::array<ActionU, 3> table_a, std::array<ActionV, 3> table_b,
    std::string label = "memoryless");

// Deterministic-but-arbitrary history-dependent randomized pair derived
// from a seed; used to probe the classical bound.
std::pair<AlicePolicy, BobPolicy> seeded_history_policies(std::uint64_t policy_seed);

// Cycle-position inference from an agent's last three observations;
// nullopt if the triple does not occur on the cycle.
std::optional<int> cycle_position_from_x(const std::array<int, 3>& last3);
std::optional<int> cycle_position_from_y(const std::array<int, 3>& last3);

// ---------------------------------------------------------------------------
// Exact analysis and exhaustive oracles.

// Exact E[r] = sum_{i,j} dist(i,j) * tableA[i]^(j) * tableB[j]^(i).
double exact_expected_reward_memoryless(const std::array<ActionU, 3>& table_a,
                                        const std::array<ActionV, 3>& table_b,
                                        const StateDist& dist);

struct MemorylessSearch {
  double max_value = 0.0;
  std::array<ActionU, 3> table_a;
  std::array<ActionV, 3> table_b;
  int pair_count = 0;
};

// Exact maximum of the one-shot expected reward over all 4^3 * 4^3
// stationary table pairs; first maximizer in lexicographic order.
MemorylessSearch best_memoryless_pair(const StateDist& dist);

// One exact forward step of the state distribution under stationary
// memoryless tables.
StateDist push_forward(const Kernel& kernel, const StateDist& dist,
                       const std::array<ActionU, 3>& table_a,
                       const std::array<ActionV, 3>& table_b);

struct StepwiseAnalysis {
  std::vector<double> floors;            // min state probability at step n
  std::vector<double> expected_rewards;  // exact E[r_n]
};

StepwiseAnalysis stepwise_memoryless_analysis(const Kernel& kernel,
                                              const std::array<ActionU, 3>& table_a,
                                              const std::array<ActionV, 3>& table_b,
                                              int steps, const StateDist& initial);

struct LemmaReport {
  int pair_count = 0;            // 16
  bool every_pair_has_neg_cell = false;
  int min_neg_cells = 0;
};

// For every (u,v) in U x V some cell (i,j) has u^(j) v^(i) = -1.
LemmaReport lemma_oneneg_check();

struct CorollaryReport {
  double delta = 0.0;
  int map_pair_count = 0;       // 4096 tabular pairs
  double uniform_min_prob = 0.0;
  int floor_dist_count = 0;
  double floor_min_prob = 0.0;
  int context_count = 0;
  double contextual_min_prob = 0.0;
  bool pass = false;
};

// Exhaustive verification that P(u^(Y)(X) v^(X)(Y) = -1) >= delta over all
// 4096 tabular map pairs, under the uniform distribution (min exactly 1/9),
// under seeded floor-delta distributions, and conditionally per context
// value with its own floor-delta distribution.
CorollaryReport corollary_checks(double delta, int context_count,
                                 std::uint64_t seed);

}  // namespace mpsq::pomdp

#endif  // MPSQ_POMDP_HPP
