#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fraclocal/graph.hpp"
#include "fraclocal/random.hpp"

namespace fraclocal::sim {

inline constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kNextRound = -1;

class SimulationError : public std::runtime_error {
 public:
  SimulationError(NodeId node, std::int64_t round, const std::string& what)
      : std::runtime_error("node " + std::to_string(node) + " in round " + std::to_string(round) + ": " + what),
        node_(node),
        round_(round) {}
  NodeId node() const { return node_; }
  std::int64_t round() const { return round_; }

 private:
  NodeId node_;
  std::int64_t round_;
};

// Global knowledge every node starts with.
struct ModelInfo {
  int n = 0;
  std::int64_t max_degree = 0;
  std::uint64_t id_space = 0;
};

struct NoInput {};

template <class Input>
struct NodeContext {
  NodeId id = 0;
  int degree = 0;
  ModelInfo model;
  std::uint64_t master_seed = 0;
  const Input* input_ptr = nullptr;

  const Input& input() const { return *input_ptr; }
  // Private randomness of this node for a given round.
  CounterStream random(std::int64_t round) const {
    return CounterStream(derive_seed(master_seed, {id, static_cast<std::uint64_t>(round)}));
  }
};

template <class Message>
struct Incoming {
  NodeId from;
  const Message* message;
};

// What a node does at the end of a round. `send` is broadcast to all neighbors
// and delivered at the start of the next round. A node is stepped again when a
// message reaches it or when round `wake` arrives.
template <class Message, class Output>
struct Action {
  std::optional<Message> send;
  std::optional<Output> output;
  std::int64_t wake = kNextRound;

  Action& sleep() {
    wake = kNever;
    return *this;
  }
  Action& wake_at(std::int64_t round) {
    wake = round;
    return *this;
  }
};

template <class P>
concept NodeProgram = requires(const P& program, const NodeContext<typename P::Input>& ctx, typename P::State& state,
                               std::int64_t round, std::span<const Incoming<typename P::Message>> inbox) {
  typename P::Input;
  typename P::State;
  typename P::Message;
  typename P::Output;
  { program.init(ctx) } -> std::convertible_to<typename P::State>;
  { program.step(ctx, state, round, inbox) } -> std::same_as<Action<typename P::Message, typename P::Output>>;
};

template <class Output>
struct AlgorithmRun {
  std::uint64_t master_seed = 0;
  std::vector<std::optional<Output>> outputs;
  std::vector<std::int64_t> output_round;  // -1 when the node had not output by the cap
  std::int64_t last_round = 0;

  bool complete() const {
    return std::all_of(outputs.begin(), outputs.end(), [](const auto& o) { return o.has_value(); });
  }
  std::int64_t max_rounds() const {
    std::int64_t best = 0;
    for (auto r : output_round) best = std::max(best, r);
    return best;
  }
  const Output& output(NodeIndex v) const {
    if (!outputs[v]) throw std::logic_error("node " + std::to_string(v) + " produced no output");
    return *outputs[v];
  }
};

struct RunOptions {
  std::uint64_t master_seed = 0;
  std::int64_t round_cap = -1;  // -1: 10 n
  std::optional<ModelInfo> model;
};

inline ModelInfo default_model(const Graph& g) { return {g.size(), g.max_degree(), g.id_space()}; }

template <NodeProgram P>
AlgorithmRun<typename P::Output> run(const Graph& g, const P& program, std::span<const typename P::Input> inputs,
                                     const RunOptions& options = {}) {
  using Message = typename P::Message;
  using Output = typename P::Output;
  const int n = g.size();
  if (static_cast<int>(inputs.size()) != n) throw std::invalid_argument("one input per node required");
  const std::int64_t cap = options.round_cap >= 0 ? options.round_cap : 10LL * std::max(n, 1);
  const ModelInfo model = options.model.value_or(default_model(g));

  std::vector<NodeContext<typename P::Input>> ctx(n);
  std::vector<typename P::State> state;
  state.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    ctx[v] = {g.id(v), g.degree(v), model, options.master_seed, &inputs[v]};
    state.push_back(program.init(ctx[v]));
  }

  AlgorithmRun<Output> result;
  result.master_seed = options.master_seed;
  result.outputs.resize(n);
  result.output_round.assign(n, -1);
  int remaining = n;

  std::vector<std::optional<Message>> previous(n), current(n);
  std::vector<NodeIndex> previous_senders, current_senders;
  std::vector<std::int64_t> wake(n, 0);
  using Entry = std::pair<std::int64_t, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> timers;
  for (NodeIndex v = 0; v < n; ++v) timers.emplace(0, v);
  std::vector<std::int64_t> stamp(n, -1);
  std::vector<NodeIndex> active;
  std::vector<Incoming<Message>> inbox;

  std::int64_t round = 0;
  while (remaining > 0) {
    active.clear();
    for (NodeIndex u : previous_senders)
      for (NodeIndex w : g.neighbors(u))
        if (stamp[w] != round) {
          stamp[w] = round;
          active.push_back(w);
        }
    while (!timers.empty() && timers.top().first <= round) {
      auto [when, v] = timers.top();
      timers.pop();
      if (wake[v] == when && stamp[v] != round) {
        stamp[v] = round;
        active.push_back(v);
      }
    }
    std::sort(active.begin(), active.end());

    for (NodeIndex v : active) {
      inbox.clear();
      for (NodeIndex u : g.neighbors(v))
        if (previous[u]) inbox.push_back({g.id(u), &*previous[u]});
      std::sort(inbox.begin(), inbox.end(), [](const auto& a, const auto& b) { return a.from < b.from; });
      Action<Message, Output> action;
      try {
        action = program.step(ctx[v], state[v], round, std::span<const Incoming<Message>>(inbox));
      } catch (const SimulationError&) {
        throw;
      } catch (const std::exception& e) {
        throw SimulationError(g.id(v), round, e.what());
      }
      if (action.output && !result.outputs[v]) {
        result.outputs[v] = std::move(action.output);
        result.output_round[v] = round;
        --remaining;
      }
      if (action.send) {
        current[v] = std::move(action.send);
        current_senders.push_back(v);
      }
      wake[v] = action.wake == kNextRound ? round + 1 : action.wake;
      if (wake[v] != kNever) timers.emplace(wake[v], v);
    }

    result.last_round = round;
    if (remaining == 0 || round >= cap) break;

    for (NodeIndex u : previous_senders) previous[u].reset();
    std::swap(previous, current);
    std::swap(previous_senders, current_senders);
    current_senders.clear();

    if (!previous_senders.empty()) {
      ++round;
    } else if (!timers.empty()) {
      // nothing in flight: jump straight to the next scheduled wake-up
      round = std::min(cap, std::max(round + 1, timers.top().first));
    } else {
      break;
    }
  }
  return result;
}

template <NodeProgram P>
  requires std::same_as<typename P::Input, NoInput>
AlgorithmRun<typename P::Output> run(const Graph& g, const P& program, const RunOptions& options = {}) {
  std::vector<NoInput> inputs(g.size());
  return run(g, program, std::span<const NoInput>(inputs), options);
}

struct LocalityStats {
  std::vector<std::int64_t> max_rounds;  // per node, over seeds
  std::vector<double> mean_rounds;
  std::int64_t worst = 0;
};

// Per-node output rounds aggregated over several master seeds.
template <NodeProgram P>
LocalityStats measure_locality(const Graph& g, const P& program, std::span<const typename P::Input> inputs,
                               std::span<const std::uint64_t> seeds, RunOptions options = {}) {
  LocalityStats stats;
  stats.max_rounds.assign(g.size(), 0);
  stats.mean_rounds.assign(g.size(), 0.0);
  for (std::uint64_t seed : seeds) {
    options.master_seed = seed;
    auto result = run(g, program, inputs, options);
    for (NodeIndex v = 0; v < g.size(); ++v) {
      std::int64_t r = result.output_round[v];
      if (r < 0) throw std::runtime_error("node did not finish within the round cap");
      stats.max_rounds[v] = std::max(stats.max_rounds[v], r);
      stats.mean_rounds[v] += static_cast<double>(r) / static_cast<double>(seeds.size());
    }
  }
  for (auto r : stats.max_rounds) stats.worst = std::max(stats.worst, r);
  return stats;
}

// Transcript as {seed, rounds, outputs}; Output must be JSON-serializable.
template <class Output>
nlohmann::json transcript_json(const AlgorithmRun<Output>& run) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& o : run.outputs) outputs.push_back(o ? nlohmann::json(*o) : nlohmann::json(nullptr));
  return {{"seed", run.master_seed},
          {"rounds", {{"max", run.max_rounds()}, {"per_node", run.output_round}}},
          {"outputs", std::move(outputs)}};
}

}  // namespace fraclocal::sim
