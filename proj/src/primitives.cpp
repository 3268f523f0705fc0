#include "fraclocal/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "fraclocal/random.hpp"

namespace fraclocal {

int PartialColoring::uncolored_count() const {
  return static_cast<int>(std::count(colors.begin(), colors.end(), kUncolored));
}

bool is_proper(const Graph& g, const std::vector<Color>& colors) {
  for (auto [u, v] : g.edges())
    if (colors[u] != kUncolored && colors[u] == colors[v]) return false;
  return true;
}

ProperColoring coloring_from_ids(const Graph& g) {
  ProperColoring c;
  c.colors.assign(g.ids().begin(), g.ids().end());
  c.palette = static_cast<Color>(g.id_space());
  return c;
}

sim::ModelInfo power_model(const Graph& base, int k) {
  std::int64_t bound = power_degree_bound(base.max_degree(), k);
  bound = std::min<std::int64_t>(bound, std::max(base.size() - 1, 0));
  return {base.size(), bound, base.id_space()};
}

std::int64_t next_prime(std::int64_t at_least) {
  auto is_prime = [](std::int64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::int64_t d = 3; d * d <= x; d += 2)
      if (x % d == 0) return false;
    return true;
  };
  std::int64_t x = std::max<std::int64_t>(at_least, 2);
  while (!is_prime(x)) ++x;
  return x;
}

std::int64_t integer_root_ceil(std::int64_t m, int k) {
  if (m <= 1) return 1;
  auto pow_at_least = [&](std::int64_t r) {
    __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
      acc *= r;
      if (acc >= m) return true;
    }
    return acc >= m;
  };
  auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<long double>(m), 1.0L / k)));
  r = std::max<std::int64_t>(r - 2, 1);
  while (!pow_at_least(r)) ++r;
  return r;
}

std::vector<LinialStep> linial_schedule(Color palette, std::int64_t max_degree) {
  std::vector<LinialStep> steps;
  if (max_degree <= 0) return steps;
  Color m = palette;
  while (true) {
    LinialStep best{0, 0, m, m};
    for (int d = 1; d < 64; ++d) {
      const std::int64_t floor_prime = max_degree * d + 1;
      if (static_cast<__int128>(floor_prime) * floor_prime >= best.palette_out) break;
      std::int64_t p = next_prime(std::max(floor_prime, integer_root_ceil(m, d + 1)));
      __int128 out = static_cast<__int128>(p) * p;
      if (out < best.palette_out) best = {p, d, m, static_cast<Color>(out)};
    }
    if (best.prime == 0) break;
    steps.push_back(best);
    m = best.palette_out;
  }
  return steps;
}

namespace {

// Horner evaluation of the polynomial whose coefficients are the base-p digits of x.
std::int64_t eval_digits(const std::vector<std::int64_t>& digits, std::int64_t a, std::int64_t p) {
  unsigned __int128 acc = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) acc = (acc * a + *it) % p;
  return static_cast<std::int64_t>(acc);
}

std::vector<std::int64_t> to_digits(std::int64_t x, std::int64_t p, int count) {
  std::vector<std::int64_t> out(count);
  for (int i = 0; i < count; ++i) {
    out[i] = x % p;
    x /= p;
  }
  return out;
}

struct LinialProgram {
  using Input = Color;
  using Message = Color;  // 0-based current color
  using Output = Color;
  struct State {
    Color current = 0;
  };
  const std::vector<LinialStep>* steps;

  State init(const sim::NodeContext<Color>& ctx) const { return {ctx.input() - 1}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Color>&, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (round > 0) {
      const LinialStep& st = (*steps)[round - 1];
      const int count = st.degree + 1;
      auto mine = to_digits(s.current, st.prime, count);
      std::vector<std::vector<std::int64_t>> theirs;
      for (const auto& in : inbox) {
        if (*in.message == s.current) throw std::runtime_error("input coloring is not proper");
        theirs.push_back(to_digits(*in.message, st.prime, count));
      }
      bool found = false;
      for (std::int64_t a = 0; a < st.prime && !found; ++a) {
        const std::int64_t value = eval_digits(mine, a, st.prime);
        bool clash = false;
        for (const auto& t : theirs)
          if (eval_digits(t, a, st.prime) == value) {
            clash = true;
            break;
          }
        if (!clash) {
          s.current = a * st.prime + value;
          found = true;
        }
      }
      if (!found) throw std::runtime_error("more neighbors than the declared maximum degree");
    }
    if (round == static_cast<std::int64_t>(steps->size())) {
      act.output = s.current + 1;
      act.sleep();
    } else {
      act.send = s.current;
    }
    return act;
  }
};

}  // namespace

ColoringRun linial_coloring(const Graph& g, const LinialOptions& options) {
  ProperColoring initial = options.initial.value_or(coloring_from_ids(g));
  sim::ModelInfo model = options.model.value_or(sim::default_model(g));
  ColoringRun out;
  if (model.max_degree <= 0 || g.max_degree() == 0) {
    // no node has a neighbor: color 1 is proper
    out.coloring.colors.assign(g.size(), 1);
    out.coloring.palette = 1;
    return out;
  }
  if (g.max_degree() > model.max_degree) throw PreconditionError("graph exceeds the declared maximum degree");
  auto steps = linial_schedule(initial.palette, model.max_degree);
  LinialProgram program{&steps};
  sim::RunOptions ro;
  ro.model = model;
  ro.round_cap = static_cast<std::int64_t>(steps.size());
  auto run = sim::run(g, program, std::span<const Color>(initial.colors), ro);
  out.coloring.palette = steps.empty() ? initial.palette : steps.back().palette_out;
  for (NodeIndex v = 0; v < g.size(); ++v) out.coloring.colors.push_back(run.output(v));
  out.rounds = static_cast<std::int64_t>(steps.size());
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

// Tracks the latest value announced by each neighbor.
struct NeighborBook {
  std::map<NodeId, Color> latest;
  template <class Inbox>
  void absorb(const Inbox& inbox) {
    for (const auto& in : inbox) latest[in.from] = *in.message;
  }
  Color smallest_free(Color limit) const {
    std::set<Color> used;
    for (auto& [id, c] : latest) used.insert(c);
    for (Color c = 1; c <= limit; ++c)
      if (!used.count(c)) return c;
    return kUncolored;
  }
};

struct ReductionProgram {
  using Input = Color;
  using Message = Color;
  using Output = Color;
  struct State {
    Color current = 0;
    NeighborBook book;
  };
  Color palette;
  Color target;

  State init(const sim::NodeContext<Color>& ctx) const { return {ctx.input(), {}}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Color>&, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    s.book.absorb(inbox);
    if (round == 0) {
      act.send = s.current;
      if (s.current <= target) {
        act.output = s.current;
        act.sleep();
      } else {
        act.wake_at(palette - s.current + 1);
      }
      return act;
    }
    if (s.current > target && round == palette - s.current + 1) {
      s.current = s.book.smallest_free(target);
      if (s.current == kUncolored) throw std::runtime_error("no free color below the target");
      act.send = s.current;
      act.output = s.current;
      act.sleep();
      return act;
    }
    act.sleep();
    if (s.current > target) act.wake_at(palette - s.current + 1);
    return act;
  }
};

}  // namespace

ColoringRun color_reduction(const Graph& g, const ProperColoring& input, Color target) {
  if (target < g.max_degree() + 1) throw PreconditionError("target palette must be at least max degree + 1");
  ColoringRun out;
  if (input.palette <= target) {
    out.coloring = input;
    return out;
  }
  ReductionProgram program{input.palette, target};
  sim::RunOptions ro;
  ro.round_cap = input.palette - target;
  auto run = sim::run(g, program, std::span<const Color>(input.colors), ro);
  out.coloring.palette = target;
  for (NodeIndex v = 0; v < g.size(); ++v) out.coloring.colors.push_back(run.output(v));
  out.rounds = input.palette - target;
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

struct SweepMisProgram {
  using Input = Color;
  using Message = bool;  // "joined"
  using Output = bool;
  struct State {
    bool blocked = false;
  };

  State init(const sim::NodeContext<Color>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Color>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (!inbox.empty()) s.blocked = true;
    if (s.blocked) {
      act.output = false;
      act.sleep();
      return act;
    }
    if (round == ctx.input()) {
      act.send = true;
      act.output = true;
      act.sleep();
      return act;
    }
    act.wake_at(ctx.input());
    return act;
  }
};

}  // namespace

MisRun mis(const Graph& g, const ProperColoring& precoloring) {
  if (!is_proper(g, precoloring.colors)) throw PreconditionError("MIS needs a proper precoloring");
  SweepMisProgram program;
  sim::RunOptions ro;
  ro.round_cap = precoloring.palette;
  auto run = sim::run(g, program, std::span<const Color>(precoloring.colors), ro);
  MisRun out;
  for (NodeIndex v = 0; v < g.size(); ++v) out.in_set.push_back(run.output(v));
  out.rounds = precoloring.palette;
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

// Digit-by-digit ruling set. Stage s handles digit s (least significant first);
// within a group of nodes sharing all higher digits, a surviving node with
// digit j drops out if a surviving neighbor of the group has a smaller digit.
struct DigitRulingProgram {
  using Input = Color;
  struct Message {
    Color color;
    bool in;
  };
  using Output = bool;
  struct State {
    bool in = true;
    std::map<NodeId, Message> neighbors;
  };
  std::int64_t base;
  int digits;

  std::int64_t digit(Color c, int position) const {
    Color x = c - 1;
    for (int i = 0; i < position; ++i) x /= base;
    return x % base;
  }
  bool same_group(Color a, Color b, int stage) const {
    Color x = a - 1, y = b - 1;
    for (int i = 0; i <= stage; ++i) {
      x /= base;
      y /= base;
    }
    return x == y;
  }
  std::int64_t total_rounds() const { return static_cast<std::int64_t>(digits) * (base - 1); }

  State init(const sim::NodeContext<Color>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Color>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    for (const auto& in : inbox) s.neighbors[in.from] = *in.message;
    const Color mine = ctx.input();
    if (round == 0) act.send = Message{mine, true};
    if (round > 0 && s.in) {
      const int stage = static_cast<int>((round - 1) / (base - 1));
      const std::int64_t slot = (round - 1) % (base - 1) + 1;
      if (digit(mine, stage) == slot) {
        for (const auto& [id, msg] : s.neighbors) {
          if (msg.in && same_group(msg.color, mine, stage) && digit(msg.color, stage) < slot) {
            s.in = false;
            act.send = Message{mine, false};
            break;
          }
        }
      }
    }
    if (round >= total_rounds()) {
      act.output = s.in;
      act.sleep();
      return act;
    }
    // only my own slots matter; everything else arrives as messages
    std::int64_t next = total_rounds();
    if (s.in) {
      for (int st = 0; st < digits; ++st) {
        std::int64_t d = digit(mine, st);
        if (d == 0) continue;
        std::int64_t r = static_cast<std::int64_t>(st) * (base - 1) + d;
        if (r > round) {
          next = std::min(next, r);
          break;
        }
      }
    }
    act.wake_at(next);
    return act;
  }
};

}  // namespace

RulingSetRun ruling_set(const Graph& g, int alpha, int beta, const RulingSetOptions& options) {
  if (alpha < 2) throw PreconditionError("ruling set needs alpha >= 2");
  if (beta < alpha - 1) throw PreconditionError("ruling set needs beta >= alpha - 1");
  const int hop = alpha - 1;
  Graph power = hop == 1 ? g : power_graph(g, hop);
  sim::ModelInfo model = options.power_model.value_or(power_model(g, hop));

  RulingSetRun out;
  LinialOptions lo;
  lo.model = model;
  lo.initial = options.precoloring;
  auto lin = linial_coloring(power, lo);
  const ProperColoring& coloring = lin.coloring;
  const std::int64_t coloring_rounds = lin.rounds * hop;
  out.power_palette = coloring.palette;

  const int budget = beta / hop;  // digits allowed in power-graph hops
  std::int64_t base = std::max<std::int64_t>(2, integer_root_ceil(coloring.palette, budget));
  int digits = 1;
  for (__int128 reach = base; reach < coloring.palette; reach *= base) ++digits;
  out.base = base;
  out.digits = digits;
  out.domination = digits * hop;

  DigitRulingProgram program{base, digits};
  sim::RunOptions ro;
  ro.model = model;
  ro.round_cap = program.total_rounds();
  auto run = sim::run(power, program, std::span<const Color>(coloring.colors), ro);
  for (NodeIndex v = 0; v < g.size(); ++v) out.in_set.push_back(run.output(v));
  out.rounds = coloring_rounds + program.total_rounds() * hop;
  out.measured_rounds = coloring_rounds + run.max_rounds() * hop;
  return out;
}

namespace {

struct ListSweepInput {
  ColorList list;
  Color slot = 0;
};

struct ListSweepProgram {
  using Input = ListSweepInput;
  using Message = Color;
  using Output = Color;
  struct State {
    std::set<Color> taken;
    bool done = false;
  };

  State init(const sim::NodeContext<Input>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (s.done) return act.sleep(), act;
    for (const auto& in : inbox) s.taken.insert(*in.message);
    if (round < ctx.input().slot) {
      act.wake_at(ctx.input().slot);
      return act;
    }
    for (Color c : ctx.input().list)
      if (!s.taken.count(c)) {
        s.done = true;
        act.send = c;
        act.output = c;
        act.sleep();
        return act;
      }
    throw std::runtime_error("list exhausted by neighbors");
  }
};

}  // namespace

ColoringRun list_color_det(const Graph& g, const ListAssignment& lists, const ProperColoring& helper) {
  if (static_cast<int>(lists.size()) != g.size()) throw PreconditionError("one list per node required");
  std::vector<ListSweepInput> inputs(g.size());
  Color max_color = 0;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    ColorList list = lists[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    if (static_cast<int>(list.size()) < g.degree(v) + 1)
      throw PreconditionError("list of node " + std::to_string(g.id(v)) + " is shorter than its degree + 1");
    if (!list.empty()) max_color = std::max(max_color, list.back());
    inputs[v] = {std::move(list), helper.colors[v]};
  }
  ListSweepProgram program;
  sim::RunOptions ro;
  ro.round_cap = helper.palette;
  auto run = sim::run(g, program, std::span<const ListSweepInput>(inputs), ro);
  ColoringRun out;
  out.coloring.palette = max_color;
  for (NodeIndex v = 0; v < g.size(); ++v) out.coloring.colors.push_back(run.output(v));
  out.rounds = helper.palette;
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

struct SloppyMessage {
  Color color;
  bool permanent;
};

struct SloppyListProgram {
  using Input = ColorList;
  using Message = SloppyMessage;
  using Output = Color;
  struct State {
    Color tentative = kUncolored;
    std::set<Color> taken;
    bool done = false;
  };
  int trials;

  State init(const sim::NodeContext<Input>&) const { return {}; }

  Color propose(const sim::NodeContext<Input>& ctx, const State& s, std::int64_t round) const {
    std::vector<Color> free;
    for (Color c : ctx.input())
      if (!s.taken.count(c)) free.push_back(c);
    if (free.empty()) return kUncolored;
    auto rng = ctx.random(round);
    return free[uniform_below(rng, free.size())];
  }

  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (s.done) return act.sleep(), act;
    bool clash = false;
    for (const auto& in : inbox) {
      if (in.message->permanent) s.taken.insert(in.message->color);
      if (in.message->color == s.tentative) clash = true;
    }
    if (s.taken.count(s.tentative)) clash = true;
    if (round > 0 && s.tentative != kUncolored && !clash) {
      s.done = true;
      act.send = SloppyMessage{s.tentative, true};
      act.output = s.tentative;
      act.sleep();
      return act;
    }
    if (round >= trials) {
      s.done = true;
      act.output = kUncolored;
      act.sleep();
      return act;
    }
    s.tentative = propose(ctx, s, round);
    if (s.tentative != kUncolored) act.send = SloppyMessage{s.tentative, false};
    return act;
  }
};

}  // namespace

PartialColoringRun list_color_sloppy(const Graph& g, const ListAssignment& lists, int trials, std::uint64_t seed) {
  if (static_cast<int>(lists.size()) != g.size()) throw PreconditionError("one list per node required");
  if (trials < 0) throw PreconditionError("negative trial count");
  SloppyListProgram program{trials};
  sim::RunOptions ro;
  ro.master_seed = seed;
  ro.round_cap = trials;
  auto run = sim::run(g, program, std::span<const ColorList>(lists), ro);
  PartialColoringRun out;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    Color c = run.output(v);
    out.coloring.colors.push_back(c);
    if (!lists[v].empty()) out.coloring.palette = std::max(out.coloring.palette, *std::max_element(lists[v].begin(), lists[v].end()));
  }
  out.rounds = trials;
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

struct DistanceColorProgram {
  using Input = sim::NoInput;
  using Message = std::vector<std::pair<NodeId, Color>>;
  using Output = Color;
  struct State {
    Color mine = 0;
    std::map<NodeId, Color> seen;
  };
  int radius;
  Color palette;

  State init(const sim::NodeContext<Input>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    Message fresh;
    if (round == 0) {
      auto rng = ctx.random(0);
      s.mine = static_cast<Color>(uniform_below(rng, static_cast<std::uint64_t>(palette))) + 1;
      s.seen[ctx.id] = s.mine;
      fresh.emplace_back(ctx.id, s.mine);
    }
    for (const auto& in : inbox)
      for (const auto& [id, c] : *in.message)
        if (s.seen.emplace(id, c).second) fresh.emplace_back(id, c);
    if (round >= radius) {
      bool clash = false;
      for (const auto& [id, c] : s.seen)
        if (id != ctx.id && c == s.mine) clash = true;
      act.output = clash ? kUncolored : s.mine;
      act.sleep();
      return act;
    }
    if (!fresh.empty()) act.send = std::move(fresh);
    act.wake_at(radius);
    return act;
  }
};

}  // namespace

PartialColoringRun random_distance_coloring(const Graph& g, int radius, Color palette, std::uint64_t seed) {
  if (radius < 0 || palette < 1) throw PreconditionError("invalid distance coloring parameters");
  DistanceColorProgram program{radius, palette};
  sim::RunOptions ro;
  ro.master_seed = seed;
  ro.round_cap = radius;
  auto run = sim::run(g, program, ro);
  PartialColoringRun out;
  out.coloring.palette = palette;
  for (NodeIndex v = 0; v < g.size(); ++v) out.coloring.colors.push_back(run.output(v));
  out.rounds = radius;
  out.measured_rounds = run.max_rounds();
  return out;
}

namespace {

struct ExchangeProgram {
  using Input = Color;
  using Message = Color;
  using Output = std::vector<std::pair<NodeId, Color>>;
  struct State {};

  State init(const sim::NodeContext<Color>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<Color>& ctx, State&, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (round == 0) {
      act.send = ctx.input();
      return act;
    }
    Output seen;
    for (const auto& in : inbox) seen.emplace_back(in.from, *in.message);
    act.output = std::move(seen);
    act.sleep();
    return act;
  }
};

}  // namespace

std::vector<std::vector<std::pair<NodeId, Color>>> exchange_with_neighbors(const Graph& g,
                                                                          const std::vector<Color>& values) {
  ExchangeProgram program;
  sim::RunOptions ro;
  ro.round_cap = 1;
  auto run = sim::run(g, program, std::span<const Color>(values), ro);
  std::vector<std::vector<std::pair<NodeId, Color>>> out;
  for (NodeIndex v = 0; v < g.size(); ++v) out.push_back(run.output(v));
  return out;
}

}  // namespace fraclocal
