#include <set>

#include "doctest.h"
#include "support.hpp"

#include "fraclocal/collect_ball.hpp"
#include "fraclocal/generators.hpp"
#include "fraclocal/sim.hpp"

using namespace fraclocal;

namespace {

struct EchoId {
  using Input = sim::NoInput;
  using Message = int;
  using Output = NodeId;
  struct State {};
  State init(const sim::NodeContext<Input>&) const { return {}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State&, std::int64_t,
                                    std::span<const sim::Incoming<Message>>) const {
    sim::Action<Message, Output> act;
    act.output = ctx.id;
    return act;
  }
};

// Outputs the largest ID heard after `stop` rounds.
struct FloodMax {
  using Input = sim::NoInput;
  using Message = NodeId;
  using Output = NodeId;
  struct State {
    NodeId best = 0;
  };
  std::int64_t stop = 0;
  State init(const sim::NodeContext<Input>& ctx) const { return {ctx.id}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>&, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    for (const auto& in : inbox) s.best = std::max(s.best, *in.message);
    if (round >= stop) act.output = s.best;
    act.send = s.best;
    return act;
  }
};

struct NeverDone {
  using Input = sim::NoInput;
  using Message = int;
  using Output = int;
  struct State {};
  State init(const sim::NodeContext<Input>&) const { return {}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>&, State&, std::int64_t,
                                    std::span<const sim::Incoming<Message>>) const {
    return {};
  }
};

struct ThrowsAtTwo {
  using Input = sim::NoInput;
  using Message = int;
  using Output = int;
  struct State {};
  State init(const sim::NodeContext<Input>&) const { return {}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State&, std::int64_t round,
                                    std::span<const sim::Incoming<Message>>) const {
    if (round == 2 && ctx.id == 3) throw std::runtime_error("boom");
    return {};
  }
};

// Sleeps until a fixed round, then outputs it.
struct Alarm {
  using Input = std::int64_t;
  using Message = int;
  using Output = std::int64_t;
  struct State {};
  State init(const sim::NodeContext<Input>&) const { return {}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State&, std::int64_t round,
                                    std::span<const sim::Incoming<Message>>) const {
    sim::Action<Message, Output> act;
    if (round >= ctx.input()) {
      act.output = round;
      act.sleep();
    } else {
      act.wake_at(ctx.input());
    }
    return act;
  }
};

}  // namespace

TEST_CASE("echo ID finishes in round 0") {
  const Graph g = generate_petersen().with_permuted_ids(9);
  const auto r = sim::run(g, EchoId{});
  CHECK(r.complete());
  CHECK(r.max_rounds() == 0);
  for (NodeIndex v = 0; v < g.size(); ++v) CHECK(r.output(v) == g.id(v));
}

TEST_CASE("collect ball of radius 2 on C5 sees everything") {
  const Graph g = generate_cycle(5);
  std::vector<int> labels(5, 0);
  const auto r = sim::run(g, sim::CollectBall<int>{2}, std::span<const int>(labels));
  for (NodeIndex v = 0; v < 5; ++v) {
    CHECK(r.output(v).nodes.size() == 5);
    CHECK(r.output_round[v] == 2);
  }
}

TEST_CASE("collect ball views") {
  SUBCASE("radius 0") {
    const Graph g = generate_cycle(6);
    std::vector<int> labels(6, 1);
    const auto r = sim::run(g, sim::CollectBall<int>{0}, std::span<const int>(labels));
    for (NodeIndex v = 0; v < 6; ++v) CHECK(r.output(v).nodes.size() == 1);
  }
  SUBCASE("C6 radius 2 is a path on 5 nodes") {
    const Graph g = generate_cycle(6).with_permuted_ids(4);
    std::vector<int> labels(6, 0);
    const auto r = sim::run(g, sim::CollectBall<int>{2}, std::span<const int>(labels));
    for (NodeIndex v = 0; v < 6; ++v) {
      const Graph ball = r.output(v).to_graph();
      CHECK(ball.size() == 5);
      CHECK(ball.edge_count() == 4);
      CHECK(testing::degree_sequence(ball).size() == 5);
      CHECK(girth(ball) == kInfiniteGirth);
      int parts = 0;
      connected_components(ball, &parts);
      CHECK(parts == 1);
    }
  }
  SUBCASE("radius at the diameter sees the whole graph with labels") {
    const Graph g = generate_random_regular(16, 3, 2).with_permuted_ids(2);
    const auto dist = testing::all_pairs(g);
    int diam = 0;
    for (const auto& row : dist)
      for (int d : row) diam = std::max(diam, d);
    std::vector<int> labels(16);
    for (int i = 0; i < 16; ++i) labels[i] = i * i;
    const auto r = sim::run(g, sim::CollectBall<int>{diam + 1}, std::span<const int>(labels));
    for (NodeIndex v = 0; v < g.size(); ++v) {
      const auto& view = r.output(v);
      CHECK(view.nodes.size() == 16);
      for (NodeIndex w = 0; w < g.size(); ++w) CHECK(view.at(g.id(w)).label == w * w);
      CHECK(view.to_graph().edge_count() == g.edge_count());
    }
  }
}

TEST_CASE("ball views agree with BFS") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Graph g = testing::random_bounded_degree(seed, 25, 4, 50).with_permuted_ids(seed);
    std::vector<int> labels(g.size(), 0);
    const int radius = 1 + static_cast<int>(seed % 3);
    const auto r = sim::run(g, sim::CollectBall<int>{radius}, std::span<const int>(labels));
    for (NodeIndex v = 0; v < g.size(); ++v) {
      const auto dist = bfs_distances(g, v, radius);
      std::set<NodeId> expected;
      for (NodeIndex w = 0; w < g.size(); ++w)
        if (dist[w] != kUnreachable) expected.insert(g.id(w));
      std::set<NodeId> seen;
      for (const auto& [id, rec] : r.output(v).nodes) seen.insert(id);
      CHECK(seen == expected);
      const auto vd = sim::view_distances(r.output(v));
      for (NodeIndex w = 0; w < g.size(); ++w)
        if (dist[w] != kUnreachable) CHECK(vd.at(g.id(w)) == dist[w]);
    }
  }
}

TEST_CASE("flood max on P4") {
  const Graph g = generate_path(4).with_ids({1, 2, 3, 4}, 16);
  const auto early = sim::run(g, FloodMax{1});
  CHECK(early.output(0) == 2);
  CHECK(early.output(1) == 3);
  CHECK(early.output(2) == 4);
  const auto late = sim::run(g, FloodMax{3});
  for (NodeIndex v = 0; v < 4; ++v) CHECK(late.output(v) == 4);
}

TEST_CASE("round cap truncates") {
  const Graph g = generate_cycle(7);
  const auto r = sim::run(g, NeverDone{}, {.round_cap = 5});
  CHECK_FALSE(r.complete());
  CHECK(r.last_round == 5);
  for (auto x : r.output_round) CHECK(x == -1);
  const auto d = sim::run(g, NeverDone{});
  CHECK(d.last_round == 70);

  const Graph p = generate_path(6).with_ids({1, 2, 3, 4, 5, 6}, 36);
  const auto cut = sim::run(p, FloodMax{4}, {.round_cap = 3});
  CHECK_FALSE(cut.complete());
}

TEST_CASE("program errors carry node and round") {
  const Graph g = generate_path(5).with_ids({1, 2, 3, 4, 5}, 25);
  try {
    sim::run(g, ThrowsAtTwo{});
    FAIL("expected an exception");
  } catch (const sim::SimulationError& e) {
    CHECK(e.node() == 3);
    CHECK(e.round() == 2);
  }
}

TEST_CASE("sleeping nodes wake on their timer") {
  const Graph g = generate_path(3);
  std::vector<std::int64_t> when{4, 1000, 17};
  const auto r = sim::run(g, Alarm{}, std::span<const std::int64_t>(when), {.round_cap = 5000});
  CHECK(r.output(0) == 4);
  CHECK(r.output(1) == 1000);
  CHECK(r.output(2) == 17);
  CHECK(r.output_round[1] == 1000);
}

TEST_CASE("determinism and private randomness") {
  const Graph g = generate_random_regular(30, 3, 3).with_permuted_ids(3);
  const testing::MinDrawFlood prog{3};
  const auto a = sim::run(g, prog, {.master_seed = 42});
  const auto b = sim::run(g, prog, {.master_seed = 42});
  CHECK(sim::transcript_json(a).dump() == sim::transcript_json(b).dump());
  CHECK(a.outputs == b.outputs);

  const auto c = sim::run(g, prog, {.master_seed = 43});
  CHECK(a.outputs != c.outputs);

  // the stream is keyed by (seed, id), not by node index
  sim::NodeContext<sim::NoInput> one{.id = 77, .master_seed = 5};
  sim::NodeContext<sim::NoInput> two{.id = 77, .degree = 9, .master_seed = 5};
  CHECK(one.random(3)() == two.random(3)());
  sim::NodeContext<sim::NoInput> other_seed{.id = 77, .master_seed = 6};
  CHECK(one.random(3)() != other_seed.random(3)());
  CHECK(one.random(3)() != one.random(4)());
}

TEST_CASE("transcript layout") {
  const Graph g = generate_cycle(4);
  const auto r = sim::run(g, EchoId{}, {.master_seed = 9});
  const auto j = sim::transcript_json(r);
  CHECK(j["seed"] == 9);
  CHECK(j["rounds"]["max"] == 0);
  CHECK(j["outputs"].size() == 4);
}

TEST_CASE("measure locality") {
  std::vector<std::uint64_t> seeds{1, 2, 3};
  for (int n : {16, 64, 256}) {
    const Graph g = generate_cycle(n);
    std::vector<sim::NoInput> in(n);
    const auto stats =
        sim::measure_locality(g, testing::MinDrawFlood{2}, std::span<const sim::NoInput>(in), seeds);
    CHECK(stats.worst == 2);
  }
  std::int64_t previous = 0;
  for (int n : {8, 16, 32}) {
    const Graph g = generate_path(n);
    std::vector<int> labels(n, 0);
    const auto stats =
        sim::measure_locality(g, sim::CollectBall<int>{n - 1}, std::span<const int>(labels), seeds);
    CHECK(stats.worst == n - 1);
    CHECK(stats.worst > previous);
    previous = stats.worst;
  }
}

TEST_CASE("outputs only depend on the radius-T ball") {
  for (std::uint64_t trial = 1; trial <= 10; ++trial) {
    const Graph g = testing::random_bounded_degree(trial, 40, 3, 100).with_permuted_ids(trial);
    const int radius = 1 + static_cast<int>(trial % 3);
    const NodeIndex center = static_cast<NodeIndex>(trial * 7 % 40);
    const Graph h = testing::rewire_outside(g, center, radius, trial);
    const sim::ModelInfo model{40, 6, g.id_space()};

    const testing::MinDrawFlood flood{radius};
    const auto a = sim::run(g, flood, {.master_seed = trial, .model = model});
    const auto b = sim::run(h, flood, {.master_seed = trial, .model = model});
    CHECK(a.output(center) == b.output(center));

    std::vector<int> labels(40);
    for (int i = 0; i < 40; ++i) labels[i] = i % 5;
    const sim::CollectBall<int> ball{radius};
    const auto va = sim::run(g, ball, std::span<const int>(labels), {.model = model});
    const auto vb = sim::run(h, ball, std::span<const int>(labels), {.model = model});
    CHECK(testing::flatten(va.output(center)) == testing::flatten(vb.output(center)));
  }
}
