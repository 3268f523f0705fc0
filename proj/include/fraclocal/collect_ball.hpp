#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fraclocal/sim.hpp"

namespace fraclocal::sim {

template <class Label>
struct BallRecord {
  Label label{};
  std::optional<std::vector<NodeId>> neighbors;  // known once the node has heard from its neighbors
};

// What a node knows after flooding for `radius` rounds. Nodes start out
// knowing only their own ID, so after r rounds the IDs and labels of the
// r-ball are known, and adjacency lists of nodes up to distance r-1.
template <class Label>
struct BallView {
  NodeId center = 0;
  int radius = 0;
  std::map<NodeId, BallRecord<Label>> nodes;

  const BallRecord<Label>& at(NodeId id) const { return nodes.at(id); }
  bool contains(NodeId id) const { return nodes.count(id) > 0; }

  // The known part of the graph with nodes ordered by ID; `ids` maps indices back.
  Graph to_graph(std::vector<NodeId>* ids = nullptr) const {
    std::vector<NodeId> order;
    order.reserve(nodes.size());
    std::map<NodeId, NodeIndex> index;
    for (const auto& [id, rec] : nodes) {
      index[id] = static_cast<NodeIndex>(order.size());
      order.push_back(id);
    }
    std::vector<Edge> edges;
    for (const auto& [id, rec] : nodes) {
      if (!rec.neighbors) continue;
      for (NodeId w : *rec.neighbors) {
        auto it = index.find(w);
        if (it != index.end()) edges.emplace_back(index[id], it->second);
      }
    }
    Graph g = Graph::from_edges(static_cast<int>(order.size()), edges);
    std::uint64_t space = std::max<std::uint64_t>(order.empty() ? 1 : order.back(), g.size());
    g = g.with_ids(order, space);
    if (ids) *ids = std::move(order);
    return g;
  }
};

struct AcceptAll {
  template <class Label>
  bool operator()(const Label&, const Label&) const {
    return true;
  }
};

// Floods (ID, label, adjacency) records for `radius` rounds and outputs the
// collected view. `Accept(own, other)` restricts which records a node stores
// and relays; adjacency lists always name every neighbor.
template <class Label, class Accept = AcceptAll>
struct CollectBall {
  using Input = Label;
  using Output = BallView<Label>;
  using Message = std::vector<std::pair<NodeId, BallRecord<Label>>>;
  struct State {
    BallView<Label> view;
  };

  int radius = 0;
  Accept accept{};

  State init(const NodeContext<Label>& ctx) const {
    State s;
    s.view.center = ctx.id;
    s.view.radius = radius;
    s.view.nodes[ctx.id] = {ctx.input(), std::nullopt};
    return s;
  }

  Action<Message, Output> step(const NodeContext<Label>& ctx, State& s, std::int64_t round,
                               std::span<const Incoming<Message>> inbox) const {
    Action<Message, Output> act;
    Message fresh;
    if (round == 0) {
      fresh.emplace_back(ctx.id, s.view.nodes[ctx.id]);
    } else {
      if (round == 1) {
        std::vector<NodeId> nbrs;
        for (const auto& in : inbox) nbrs.push_back(in.from);
        auto& own = s.view.nodes[ctx.id];
        own.neighbors = std::move(nbrs);
        fresh.emplace_back(ctx.id, own);
      }
      for (const auto& in : inbox) {
        for (const auto& [id, rec] : *in.message) {
          if (!accept(ctx.input(), rec.label)) continue;
          auto it = s.view.nodes.find(id);
          if (it == s.view.nodes.end()) {
            s.view.nodes.emplace(id, rec);
            fresh.emplace_back(id, rec);
          } else if (!it->second.neighbors && rec.neighbors) {
            it->second.neighbors = rec.neighbors;
            fresh.emplace_back(id, rec);
          }
        }
      }
    }
    if (round >= radius) {
      act.output = s.view;
      act.sleep();
      return act;
    }
    if (!fresh.empty()) act.send = std::move(fresh);
    // Round 1 must run even without messages so isolated nodes finish.
    act.wake_at(round == 0 ? 1 : radius);
    return act;
  }
};

// Hop distances from the center inside the view (over known adjacency).
template <class Label>
std::map<NodeId, int> view_distances(const BallView<Label>& view) {
  std::map<NodeId, int> dist;
  dist[view.center] = 0;
  std::vector<NodeId> queue{view.center};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    const auto& rec = view.nodes.at(u);
    if (!rec.neighbors) continue;
    for (NodeId w : *rec.neighbors) {
      if (!view.contains(w) || dist.count(w)) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace fraclocal::sim
