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

#include "mpsq/pomdp.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>

namespace mpsq::pomdp {

using linalg::Cx;
using magic::Agent;
using magic::triples_with_product;

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace

State::State(int x_, int y_) : x(x_), y(y_) {
  require(x >= 1 && x <= 3 && y >= 1 && y <= 3, "State: components must be 1..3");
}

State State::from_index(int idx) {
  require(idx >= 0 && idx < kStateCount, "State: index must be 0..8");
  return State(idx / 3 + 1, idx % 3 + 1);
}

std::string State::str() const {
  return std::to_string(x) + "," + std::to_string(y);
}

State State::parse(const std::string& text) {
  require(text.size() == 3 && text[1] == ',', "State: expected \"x,y\"");
  return State(text[0] - '0', text[2] - '0');
}

ActionU::ActionU(SignTriple t) : triple_(t) {
  require(triple_.product() == 1, "ActionU: sign product must be +1");
}

ActionV::ActionV(SignTriple t) : triple_(t) {
  require(triple_.product() == -1, "ActionV: sign product must be -1");
}

const std::array<ActionU, 4>& action_set_u() {
  static const std::array<ActionU, 4> set = [] {
    const auto triples = triples_with_product(1);
    return std::array<ActionU, 4>{ActionU(triples[0]), ActionU(triples[1]),
                                  ActionU(triples[2]), ActionU(triples[3])};
  }();
  return set;
}

const std::array<ActionV, 4>& action_set_v() {
  static const std::array<ActionV, 4> set = [] {
    const auto triples = triples_with_product(-1);
    return std::array<ActionV, 4>{ActionV(triples[0]), ActionV(triples[1]),
                                  ActionV(triples[2]), ActionV(triples[3])};
  }();
  return set;
}

int action_index(const ActionU& u) {
  const auto& set = action_set_u();
  for (int i = 0; i < 4; ++i)
    if (set[static_cast<std::size_t>(i)] == u) return i;
  throw std::logic_error("action_index: not an enumerated ActionU");
}

int action_index(const ActionV& v) {
  const auto& set = action_set_v();
  for (int i = 0; i < 4; ++i)
    if (set[static_cast<std::size_t>(i)] == v) return i;
  throw std::logic_error("action_index: not an enumerated ActionV");
}

int reward(const State& s, const ActionU& u, const ActionV& v) {
  return u.at(s.y) * v.at(s.x);
}

StateDist uniform_state_dist() {
  StateDist d;
  d.fill(1.0 / 9.0);
  return d;
}

Kernel::Kernel(std::string id, std::vector<Row> table, double declared_delta)
    : id_(std::move(id)), table_(std::move(table)), declared_delta_(declared_delta) {
  require(table_.size() == kStateCount * 16, "Kernel: table must have 9*4*4 rows");
  require(declared_delta_ >= 0.0, "Kernel: declared_delta must be >= 0");
  for (const Row& row : table_) {
    double sum = 0.0;
    for (double p : row) {
      require(p >= 0.0, "Kernel: negative transition probability");
      if (declared_delta_ > 0.0)
        require(p > declared_delta_, "Kernel: entry at or below declared delta");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-12, "Kernel: row does not sum to 1");
  }
}

const Kernel::Row& Kernel::row(const State& s, const ActionU& u,
                               const ActionV& v) const {
  return table_[static_cast<std::size_t>(s.index() * 16 + action_index(u) * 4 +
                                         action_index(v))];
}

Kernel make_uniform_kernel(double declared_delta) {
  Kernel::Row row;
  row.fill(1.0 / 9.0);
  return Kernel("uniform", std::vector<Kernel::Row>(kStateCount * 16, row),
                declared_delta);
}

namespace {

// Strictly positive point on the 9-simplex (normalized exponentials).
Kernel::Row random_simplex_point(SplitMix64& rng) {
  Kernel::Row e;
  double sum = 0.0;
  for (double& v : e) {
    v = -std::log(rng.next_double_open());
    sum += v;
  }
  for (double& v : e) v /= sum;
  return e;
}

Kernel::Row floor_mix(const Kernel::Row& simplex, double delta) {
  Kernel::Row row;
  for (std::size_t i = 0; i < row.size(); ++i)
    row[i] = delta + (1.0 - 9.0 * delta) * simplex[i];
  return row;
}

}  // namespace

Kernel make_delta_floor_kernel(std::uint64_t seed, double delta) {
  require(delta > 0.0 && delta < 1.0 / 9.0,
          "make_delta_floor_kernel: delta must be in (0, 1/9)");
  SplitMix64 rng(seed);
  std::vector<Kernel::Row> table;
  table.reserve(kStateCount * 16);
  for (int i = 0; i < kStateCount * 16; ++i)
    table.push_back(floor_mix(random_simplex_point(rng), delta));
  return Kernel("floor(delta=" + std::to_string(delta) +
                    ",seed=" + std::to_string(seed) + ")",
                std::move(table), delta);
}

const std::array<State, kStateCount>& periodic_cycle() {
  static const std::array<State, kStateCount> cycle{
      State(1, 1), State(1, 2), State(2, 3), State(2, 2), State(3, 3),
      State(3, 1), State(1, 3), State(2, 1), State(3, 2)};
  return cycle;
}

State periodic_successor(const State& s) {
  const auto& cycle = periodic_cycle();
  for (std::size_t p = 0; p < cycle.size(); ++p)
    if (cycle[p] == s) return cycle[(p + 1) % cycle.size()];
  throw std::logic_error("periodic_successor: state not on cycle");  // unreachable
}

Kernel make_periodic_kernel() {
  std::vector<Kernel::Row> table(kStateCount * 16);
  for (int si = 0; si < kStateCount; ++si) {
    Kernel::Row row{};
    row[static_cast<std::size_t>(periodic_successor(State::from_index(si)).index())] = 1.0;
    for (int a = 0; a < 16; ++a) table[static_cast<std::size_t>(si * 16 + a)] = row;
  }
  return Kernel("periodic", std::move(table), 0.0);
}

State step(const State& s, const ActionU& u, const ActionV& v,
           const Kernel& kernel, SplitMix64& rng) {
  const Kernel::Row& row = kernel.row(s, u, v);
  const double draw = rng.next_double();
  double cum = 0.0;
  for (int idx = 0; idx < kStateCount; ++idx) {
    cum += row[static_cast<std::size_t>(idx)];
    if (draw < cum) return State::from_index(idx);
  }
  // Rounding tail: pick the last state with positive mass.
  for (int idx = kStateCount - 1; idx >= 0; --idx)
    if (row[static_cast<std::size_t>(idx)] > 0.0) return State::from_index(idx);
  throw std::logic_error("step: empty kernel row");
}

// ---------------------------------------------------------------------------
// Quantum-assisted machinery.

// PVMs of agent observables embedded on that agent's factors, keyed by the
// observable's raw bytes. Entries are exact constants, so byte keys are
// stable across calls.
class EmbeddedPvmCache {
 public:
  const quantum::PVM& get(Agent agent, const quantum::DichotomicObservable& op) {
    std::string key(1, agent == Agent::alice ? 'a' : 'b');
    const auto& entries = op.matrix().entries();
    key.append(reinterpret_cast<const char*>(entries.data()),
               entries.size() * sizeof(Cx));
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      if (op.dim() != 4)
        throw std::invalid_argument(
            "QubitPairHandle: observable must act on the agent's two qubits");
      quantum::DichotomicObservable embedded(linalg::embed_on_factors(
          op.matrix(), magic::GameContext::agent_factors(agent),
          linalg::FactorShape::qubits(4)));
      it = cache_.emplace(std::move(key), quantum::pvm_from_dichotomic(embedded))
               .first;
    }
    return it->second;
  }

 private:
  std::map<std::string, quantum::PVM> cache_;
};

// The shared four-qubit state of one step.
class EntangledStep {
 public:
  explicit EntangledStep(SplitMix64& rng)
      : state_(magic::two_bell_pairs()), rng_(&rng) {}

  QubitPairHandle handle(Agent agent, EmbeddedPvmCache* cache) {
    return QubitPairHandle(agent, this, cache);
  }

  int measure(const quantum::PVM& pvm) {
    auto [outcome, next] = quantum::sample_measurement(pvm, state_, *rng_);
    state_ = std::move(next);
    return outcome > 0 ? 1 : -1;
  }

 private:
  quantum::DensityMatrix state_;
  SplitMix64* rng_;
};

int QubitPairHandle::measure(const quantum::DichotomicObservable& op) {
  return step_->measure(cache_->get(agent_, op));
}

// ---------------------------------------------------------------------------
// Simulation.

double TrajectoryRecord::average() const { return average_from(0); }

double TrajectoryRecord::average_from(int first_step) const {
  double sum = 0.0;
  long count = 0;
  for (const StepRecord& rec : steps) {
    if (rec.n < first_step) continue;
    sum += rec.reward;
    ++count;
  }
  if (count == 0)
    throw std::invalid_argument("average_from: no steps at or after first_step");
  return sum / static_cast<double>(count);
}

namespace {

State draw_initial(const StateDist& initial, SplitMix64& rng) {
  double sum = 0.0;
  for (double p : initial) {
    require(p >= -1e-12, "simulate: negative initial probability");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "simulate: initial distribution sum != 1");
  const double draw = rng.next_double() * sum;
  double cum = 0.0;
  for (int idx = 0; idx < kStateCount; ++idx) {
    cum += initial[static_cast<std::size_t>(idx)];
    if (draw < cum) return State::from_index(idx);
  }
  return State::from_index(kStateCount - 1);
}

template <typename Action>
void check_mode(const Policy<Action>& p, InformationMode mode, const char* who) {
  switch (mode) {
    case InformationMode::decentralized:
      if (!p.is_classical())
        throw std::invalid_argument(std::string(who) +
                                    ": only classical policies are allowed in "
                                    "decentralized mode");
      break;
    case InformationMode::relaxed:
      if (p.is_quantum())
        throw std::invalid_argument(std::string(who) +
                                    ": quantum policy requires quantum_assisted mode");
      break;
    case InformationMode::quantum_assisted:
      if (p.is_relaxed())
        throw std::invalid_argument(std::string(who) +
                                    ": relaxed policies are not part of the "
                                    "quantum_assisted mode");
      break;
  }
}

template <typename Action>
Action invoke_policy(const Policy<Action>& policy, int n,
                     const std::vector<int>& own, const std::vector<int>& other,
                     const std::vector<std::uint64_t>& words,
                     std::optional<EntangledStep>& estep, EmbeddedPvmCache& cache,
                     Agent agent) {
  const std::span<const int> own_span(own.data(), own.size());
  const std::span<const std::uint64_t> word_span(words.data(), words.size());
  return std::visit(
      [&](const auto& fn) -> Action {
        using Fn = std::decay_t<decltype(fn)>;
        if constexpr (std::is_same_v<Fn, typename Policy<Action>::ClassicalFn>) {
          return fn(n, own_span, word_span);
        } else if constexpr (std::is_same_v<Fn, typename Policy<Action>::RelaxedFn>) {
          return fn(n, own_span,
                    std::span<const int>(other.data(), static_cast<std::size_t>(n)),
                    word_span);
        } else {
          QubitPairHandle handle = estep->handle(agent, &cache);
          return fn(n, own_span, word_span, handle);
        }
      },
      policy.fn);
}

}  // namespace

TrajectoryRecord simulate(const AlicePolicy& alice, const BobPolicy& bob,
                          const Kernel& kernel, const SimulationConfig& cfg) {
  require(cfg.steps >= 1, "simulate: steps must be >= 1");
  check_mode(alice, cfg.mode, "alice");
  check_mode(bob, cfg.mode, "bob");
  const bool entangled = alice.is_quantum() || bob.is_quantum();

  SplitMix64 master(cfg.seed);
  SplitMix64 rng_init = master.fork(0);
  SplitMix64 rng_kernel = master.fork(1);
  SplitMix64 rng_meas = master.fork(2);
  const CommonRandomness word_stream(derive_seed(cfg.seed, 3));

  TrajectoryRecord rec;
  rec.seed = cfg.seed;
  rec.kernel_id = kernel.id();
  rec.alice_id = alice.id;
  rec.bob_id = bob.id;
  rec.steps.reserve(static_cast<std::size_t>(cfg.steps));

  State state = draw_initial(cfg.initial, rng_init);
  std::vector<int> xs, ys;
  std::vector<std::uint64_t> words;
  EmbeddedPvmCache cache;
  double reward_sum = 0.0;

  for (int n = 0; n < cfg.steps; ++n) {
    xs.push_back(state.x);
    ys.push_back(state.y);
    words.push_back(word_stream.word(static_cast<std::size_t>(n)));

    std::optional<EntangledStep> estep;
    if (entangled) estep.emplace(rng_meas);  // two fresh Bell pairs per step

    const ActionU u = invoke_policy(alice, n, xs, ys, words, estep, cache,
                                    Agent::alice);
    const ActionV v = invoke_policy(bob, n, ys, xs, words, estep, cache,
                                    Agent::bob);

    const int r = reward(state, u, v);
    reward_sum += r;
    rec.steps.push_back(
        {n, state, u, v, r, reward_sum / static_cast<double>(n + 1)});

    state = step(state, u, v, kernel, rng_kernel);
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Canned policies.

std::pair<AlicePolicy, BobPolicy> quantum_mp_policies(
    std::shared_ptr<const magic::GameContext> ctx) {
  if (!ctx) ctx = std::make_shared<const magic::GameContext>();
  // Stable observables so the embedded-PVM cache sees identical bytes.
  auto observables = std::make_shared<std::vector<quantum::DichotomicObservable>>();
  observables->reserve(9);
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c)
      observables->emplace_back(ctx->square().entry(r, c));

  AlicePolicy alice = AlicePolicy::quantum(
      "quantum-mp",
      [observables](int, std::span<const int> own, std::span<const std::uint64_t>,
                    QubitPairHandle& qubits) {
        const int x = own.back();
        std::array<int, 3> a{};
        for (int l = 1; l <= 3; ++l)
          a[static_cast<std::size_t>(l - 1)] =
              qubits.measure((*observables)[static_cast<std::size_t>((x - 1) * 3 + (l - 1))]);
        return ActionU(SignTriple(a[0], a[1], a[2]));
      });
  BobPolicy bob = BobPolicy::quantum(
      "quantum-mp",
      [observables](int, std::span<const int> own, std::span<const std::uint64_t>,
                    QubitPairHandle& qubits) {
        const int y = own.back();
        std::array<int, 3> b{};
        for (int k = 1; k <= 3; ++k)
          b[static_cast<std::size_t>(k - 1)] =
              qubits.measure((*observables)[static_cast<std::size_t>((k - 1) * 3 + (y - 1))]);
        return ActionV(SignTriple(b[0], b[1], b[2]));
      });
  return {std::move(alice), std::move(bob)};
}

namespace {

std::optional<int> cycle_position(const std::array<int, 3>& last3, bool use_x) {
  static const auto tables = [] {
    std::pair<std::map<std::array<int, 3>, int>, std::map<std::array<int, 3>, int>> t;
    const auto& cycle = periodic_cycle();
    for (int p = 0; p < kStateCount; ++p) {
      std::array<int, 3> xs{};
      std::array<int, 3> ys{};
      for (int d = 0; d < 3; ++d) {
        const State& s = cycle[static_cast<std::size_t>((p + 7 + d) % kStateCount)];
        xs[static_cast<std::size_t>(d)] = s.x;
        ys[static_cast<std::size_t>(d)] = s.y;
      }
      t.first.emplace(xs, p);
      t.second.emplace(ys, p);
    }
    return t;
  }();
  const auto& table = use_x ? tables.first : tables.second;
  const auto it = table.find(last3);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<int> cycle_position_from_x(const std::array<int, 3>& last3) {
  return cycle_position(last3, true);
}

std::optional<int> cycle_position_from_y(const std::array<int, 3>& last3) {
  return cycle_position(last3, false);
}

std::pair<AlicePolicy, BobPolicy> periodic_sync_policies() {
  AlicePolicy alice = AlicePolicy::classical(
      "periodic-sync",
      [](int n, std::span<const int> own, std::span<const std::uint64_t>) {
        if (n < 2) return action_set_u()[0];
        const auto pos = cycle_position_from_x(
            {own[static_cast<std::size_t>(n - 2)], own[static_cast<std::size_t>(n - 1)],
             own[static_cast<std::size_t>(n)]});
        if (!pos) return action_set_u()[0];  // off the cycle: play the default
        const int y = periodic_cycle()[static_cast<std::size_t>(*pos)].y;
        std::array<int, 3> s{1, 1, 1};
        s[static_cast<std::size_t>(y - 1)] = 1;  // match Bob's observed row
        return ActionU(SignTriple(s[0], s[1], s[2]));
      });
  BobPolicy bob = BobPolicy::classical(
      "periodic-sync",
      [](int n, std::span<const int> own, std::span<const std::uint64_t>) {
        if (n < 2) return action_set_v()[0];
        const auto pos = cycle_position_from_y(
            {own[static_cast<std::size_t>(n - 2)], own[static_cast<std::size_t>(n - 1)],
             own[static_cast<std::size_t>(n)]});
        if (!pos) return action_set_v()[0];
        const int x = periodic_cycle()[static_cast<std::size_t>(*pos)].x;
        std::array<int, 3> s{};
        s[static_cast<std::size_t>(x - 1)] = 1;
        // +1 at the smaller free index, -1 at the larger; product is -1.
        bool first_free = true;
        for (int k = 0; k < 3; ++k) {
          if (k == x - 1) continue;
          s[static_cast<std::size_t>(k)] = first_free ? 1 : -1;
          first_free = false;
        }
        return ActionV(SignTriple(s[0], s[1], s[2]));
      });
  return {std::move(alice), std::move(bob)};
}

std::pair<AlicePolicy, BobPolicy> first_action_policies() {
  return {AlicePolicy::classical(
              "first-action",
              [](int, std::span<const int>, std::span<const std::uint64_t>) {
                return action_set_u()[0];
              }),
          BobPolicy::classical(
              "first-action",
              [](int, std::span<const int>, std::span<const std::uint64_t>) {
                return action_set_v()[0];
              })};
}

std::pair<AlicePolicy, BobPolicy> common_random_policies() {
  return {AlicePolicy::classical(
              "common-random",
              [](int, std::span<const int>, std::span<const std::uint64_t> words) {
                return action_set_u()[words.back() & 3];
              }),
          BobPolicy::classical(
              "common-random",
              [](int, std::span<const int>, std::span<const std::uint64_t> words) {
                return action_set_v()[(words.back() >> 2) & 3];
              })};
}

std::pair<AlicePolicy, BobPolicy> memoryless_policies(
    std::array<ActionU, 3> table_a, std::array<ActionV, 3> table_b,
    std::string label) {
  return {AlicePolicy::classical(
              label,
              [table_a](int, std::span<const int> own, std::span<const std::uint64_t>) {
                return table_a[static_cast<std::size_t>(own.back() - 1)];
              }),
          BobPolicy::classical(
              label,
              [table_b](int, std::span<const int> own, std::span<const std::uint64_t>) {
                return table_b[static_cast<std::size_t>(own.back() - 1)];
              })};
}

std::pair<AlicePolicy, BobPolicy> seeded_history_policies(std::uint64_t policy_seed) {
  const auto digest = [](std::uint64_t h, std::span<const int> obs, std::uint64_t w) {
    for (int o : obs) h = mix64(h ^ static_cast<std::uint64_t>(o));
    return mix64(h ^ w);
  };
  const std::string label = "seeded-history(" + std::to_string(policy_seed) + ")";
  return {AlicePolicy::classical(
              label,
              [policy_seed, digest](int, std::span<const int> own,
                                    std::span<const std::uint64_t> words) {
                return action_set_u()[digest(policy_seed, own, words.back()) & 3];
              }),
          BobPolicy::classical(
              label,
              [policy_seed, digest](int, std::span<const int> own,
                                    std::span<const std::uint64_t> words) {
                return action_set_v()[digest(mix64(policy_seed), own, words.back()) & 3];
              })};
}

// ---------------------------------------------------------------------------
// Exact analysis and exhaustive oracles.

double exact_expected_reward_memoryless(const std::array<ActionU, 3>& table_a,
                                        const std::array<ActionV, 3>& table_b,
                                        const StateDist& dist) {
  double acc = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      acc += dist[static_cast<std::size_t>(State(i, j).index())] *
             table_a[static_cast<std::size_t>(i - 1)].at(j) *
             table_b[static_cast<std::size_t>(j - 1)].at(i);
  return acc;
}

namespace {

std::array<ActionU, 3> u_table_from_index(int idx) {
  const auto& set = action_set_u();
  return {set[static_cast<std::size_t>((idx / 16) % 4)],
          set[static_cast<std::size_t>((idx / 4) % 4)],
          set[static_cast<std::size_t>(idx % 4)]};
}

std::array<ActionV, 3> v_table_from_index(int idx) {
  const auto& set = action_set_v();
  return {set[static_cast<std::size_t>((idx / 16) % 4)],
          set[static_cast<std::size_t>((idx / 4) % 4)],
          set[static_cast<std::size_t>(idx % 4)]};
}

// P(u^(Y)(X) v^(X)(Y) = -1) for tabular maps under dist.
double losing_mass(const std::array<ActionU, 3>& ta,
                   const std::array<ActionV, 3>& tb, const StateDist& dist) {
  double mass = 0.0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (ta[static_cast<std::size_t>(i - 1)].at(j) *
              tb[static_cast<std::size_t>(j - 1)].at(i) ==
          -1)
        mass += dist[static_cast<std::size_t>(State(i, j).index())];
  return mass;
}

StateDist random_floor_dist(SplitMix64& rng, double delta) {
  StateDist e;
  double sum = 0.0;
  for (double& v : e) {
    v = -std::log(rng.next_double_open());
    sum += v;
  }
  StateDist out;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = delta + (1.0 - 9.0 * delta) * e[i] / sum;
  return out;
}

}  // namespace

MemorylessSearch best_memoryless_pair(const StateDist& dist) {
  MemorylessSearch best;
  best.max_value = -2.0;
  for (int ai = 0; ai < 64; ++ai) {
    const auto ta = u_table_from_index(ai);
    for (int bi = 0; bi < 64; ++bi) {
      const auto tb = v_table_from_index(bi);
      ++best.pair_count;
      const double value = exact_expected_reward_memoryless(ta, tb, dist);
      if (value > best.max_value) {
        best.max_value = value;
        best.table_a = ta;
        best.table_b = tb;
      }
    }
  }
  return best;
}

StateDist push_forward(const Kernel& kernel, const StateDist& dist,
                       const std::array<ActionU, 3>& table_a,
                       const std::array<ActionV, 3>& table_b) {
  StateDist next{};
  for (int si = 0; si < kStateCount; ++si) {
    const double mass = dist[static_cast<std::size_t>(si)];
    if (mass == 0.0) continue;
    const State s = State::from_index(si);
    const Kernel::Row& row = kernel.row(s, table_a[static_cast<std::size_t>(s.x - 1)],
                                        table_b[static_cast<std::size_t>(s.y - 1)]);
    for (int ti = 0; ti < kStateCount; ++ti)
      next[static_cast<std::size_t>(ti)] += mass * row[static_cast<std::size_t>(ti)];
  }
  return next;
}

StepwiseAnalysis stepwise_memoryless_analysis(const Kernel& kernel,
                                              const std::array<ActionU, 3>& table_a,
                                              const std::array<ActionV, 3>& table_b,
                                              int steps, const StateDist& initial) {
  require(steps >= 1, "stepwise_memoryless_analysis: steps must be >= 1");
  StepwiseAnalysis out;
  out.floors.reserve(static_cast<std::size_t>(steps));
  out.expected_rewards.reserve(static_cast<std::size_t>(steps));
  StateDist dist = initial;
  for (int n = 0; n < steps; ++n) {
    double floor = dist[0];
    for (double p : dist) floor = std::min(floor, p);
    out.floors.push_back(floor);
    out.expected_rewards.push_back(
        exact_expected_reward_memoryless(table_a, table_b, dist));
    dist = push_forward(kernel, dist, table_a, table_b);
  }
  return out;
}

LemmaReport lemma_oneneg_check() {
  LemmaReport report;
  report.every_pair_has_neg_cell = true;
  report.min_neg_cells = 9;
  for (const ActionU& u : action_set_u()) {
    for (const ActionV& v : action_set_v()) {
      ++report.pair_count;
      int neg = 0;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (u.at(j) * v.at(i) == -1) ++neg;
      if (neg == 0) report.every_pair_has_neg_cell = false;
      report.min_neg_cells = std::min(report.min_neg_cells, neg);
    }
  }
  return report;
}

CorollaryReport corollary_checks(double delta, int context_count,
                                 std::uint64_t seed) {
  require(delta > 0.0 && delta < 1.0 / 9.0,
          "corollary_checks: delta must be in (0, 1/9)");
  require(context_count >= 1, "corollary_checks: need at least one context");

  CorollaryReport report;
  report.delta = delta;
  report.context_count = context_count;
  report.floor_dist_count = 8;

  const StateDist uniform = uniform_state_dist();
  SplitMix64 rng(seed);
  std::vector<StateDist> floor_dists;
  floor_dists.reserve(static_cast<std::size_t>(report.floor_dist_count));
  for (int d = 0; d < report.floor_dist_count; ++d)
    floor_dists.push_back(random_floor_dist(rng, delta));
  std::vector<StateDist> context_dists;
  context_dists.reserve(static_cast<std::size_t>(context_count));
  for (int z = 0; z < context_count; ++z)
    context_dists.push_back(random_floor_dist(rng, delta));

  report.uniform_min_prob = 2.0;
  report.floor_min_prob = 2.0;
  report.contextual_min_prob = 2.0;
  for (int ai = 0; ai < 64; ++ai) {
    const auto ta = u_table_from_index(ai);
    for (int bi = 0; bi < 64; ++bi) {
      const auto tb = v_table_from_index(bi);
      ++report.map_pair_count;
      report.uniform_min_prob =
          std::min(report.uniform_min_prob, losing_mass(ta, tb, uniform));
      for (const StateDist& d : floor_dists)
        report.floor_min_prob = std::min(report.floor_min_prob, losing_mass(ta, tb, d));
      // Corollary with context: conditionally on each Z = z the maps may
      // be arbitrary, so every pair is checked against every context
      // distribution.
      for (const StateDist& d : context_dists)
        report.contextual_min_prob =
            std::min(report.contextual_min_prob, losing_mass(ta, tb, d));
    }
  }

  report.pass = report.uniform_min_prob >= 1.0 / 9.0 - 1e-12 &&
                report.floor_min_prob >= delta - 1e-12 &&
                report.contextual_min_prob >= delta - 1e-12;
  return report;
}

}  // namespace mpsq::pomdp
