#include "fraclocal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fraclocal/approx.hpp"
#include "fraclocal/frac_color.hpp"
#include "fraclocal/generators.hpp"
#include "fraclocal/grid_color.hpp"
#include "fraclocal/oracle.hpp"
#include "fraclocal/random.hpp"

namespace fraclocal {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, int line, const std::string& field) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) throw ConfigError(line, field, "not a number: '" + text + "'");
  return value;
}

template <class T>
std::vector<T> parse_numbers(const std::string& value, int line, const std::string& field) {
  std::vector<T> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<T>(item, line, field));
  if (out.empty()) throw ConfigError(line, field, "empty list");
  return out;
}

bool known(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool fixed_size(const std::string& generator) { return generator == "petersen"; }

std::string format_double(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

int side_for(int n) { return std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))))); }

}  // namespace

std::vector<std::string> generator_names() {
  return {"random_regular", "cycle", "path", "torus", "grid", "complete",
          "petersen", "tree", "bipartite", "erdos_renyi", "hypercube"};
}

std::vector<std::string> algorithm_names() {
  return {"linial", "q_delta", "small_support", "fast", "sloppy_det", "approx", "approx_det", "grid", "grid_constant"};
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(line, key, "duplicate key");
    if (value.empty()) throw ConfigError(line, key, "missing value");
    if (key == "generator") {
      cfg.generators = split_list(value);
      for (const auto& g : cfg.generators)
        if (!known(generator_names(), g)) throw ConfigError(line, key, "unknown generator '" + g + "'");
    } else if (key == "algorithm") {
      cfg.algorithms = split_list(value);
      for (const auto& a : cfg.algorithms)
        if (!known(algorithm_names(), a)) throw ConfigError(line, key, "unknown algorithm '" + a + "'");
    } else if (key == "n") {
      cfg.sizes = parse_numbers<int>(value, line, key);
    } else if (key == "delta") {
      cfg.degrees = parse_numbers<int>(value, line, key);
    } else if (key == "q") {
      cfg.qs = parse_numbers<int>(value, line, key);
      for (int q : cfg.qs)
        if (q < 1) throw ConfigError(line, key, "q must be positive");
    } else if (key == "epsilon") {
      cfg.epsilons = parse_numbers<double>(value, line, key);
      for (double e : cfg.epsilons)
        if (!(e > 0.0 && e < 1.0)) throw ConfigError(line, key, "epsilon must lie in (0, 1)");
    } else if (key == "seeds") {
      cfg.seeds = parse_number<int>(value, line, key);
      if (cfg.seeds < 1) throw ConfigError(line, key, "at least one seed");
    } else if (key == "seed") {
      cfg.first_seed = parse_number<std::uint64_t>(value, line, key);
    } else if (key == "round_cap") {
      cfg.round_cap = parse_number<std::int64_t>(value, line, key);
    } else if (key == "threads") {
      cfg.threads = parse_number<int>(value, line, key);
    } else {
      throw ConfigError(line, key, "unknown key");
    }
  }
  if (cfg.generators.empty()) throw ConfigError(line, "generator", "missing");
  if (cfg.algorithms.empty()) throw ConfigError(line, "algorithm", "missing");
  if (cfg.sizes.empty()) throw ConfigError(line, "n", "missing");
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::vector<std::string> suite_names() { return {"theorem1", "approx", "grid"}; }

ExperimentConfig suite_config(const std::string& name) {
  if (name == "theorem1")
    return parse_config_string(
        "generator = random_regular\nalgorithm = q_delta\nn = 60, 120, 240\ndelta = 3\nq = 2, 4, 8\nseeds = 3\n");
  if (name == "approx")
    return parse_config_string(
        "generator = cycle, petersen, tree\nalgorithm = approx\nn = 7, 40\ndelta = 2\nq = 1\nepsilon = 0.25\nseeds = 2\n");
  if (name == "grid")
    return parse_config_string(
        "generator = cycle\nalgorithm = grid_constant\nn = 60, 120, 240\ndelta = 2\nq = 8\nepsilon = 0.2\nseeds = 2\n");
  throw std::invalid_argument("unknown suite '" + name + "'");
}

Graph make_graph(const std::string& generator, int n, int delta, std::uint64_t seed) {
  Graph g;
  if (generator == "random_regular") {
    g = generate_random_regular(n, delta, seed);
  } else if (generator == "cycle") {
    g = generate_cycle(n);
  } else if (generator == "path") {
    g = generate_path(n);
  } else if (generator == "torus" || generator == "grid") {
    const int side = side_for(n);
    const bool wrap = generator == "torus";
    g = generate_grid(GridSpec{{side, side}, {wrap, wrap}});
  } else if (generator == "complete") {
    g = generate_complete(n);
  } else if (generator == "petersen") {
    g = generate_petersen();
  } else if (generator == "tree") {
    g = generate_random_tree(n, seed);
  } else if (generator == "bipartite") {
    const int left = n / 2;
    const int right = n - left;
    g = generate_random_bipartite(left, right, std::min(1.0, static_cast<double>(delta) / std::max(right, 1)), seed);
  } else if (generator == "erdos_renyi") {
    g = generate_erdos_renyi(n, std::min(1.0, static_cast<double>(delta) / std::max(n - 1, 1)), seed);
  } else if (generator == "hypercube") {
    g = generate_hypercube(delta);
  } else {
    throw std::invalid_argument("unknown generator '" + generator + "'");
  }
  return g.with_permuted_ids(derive_seed(seed, {0x1d5ULL}));
}

AlgorithmOutcome run_named_algorithm(const std::string& algorithm, const Graph& g, int q, double epsilon,
                                     std::uint64_t seed) {
  const double n = std::max(g.size(), 2);
  AlgorithmOutcome out;
  if (algorithm == "linial") {
    auto r = linial_coloring(g);
    PartialColoring partial{r.coloring.colors, r.coloring.palette};
    out.coloring = from_partial(partial);
    out.rounds = r.rounds;
  } else if (algorithm == "q_delta") {
    QDeltaOptions o;
    o.seed = seed;
    auto r = q_delta_coloring(g, q, o);
    out = {std::move(r.coloring), r.rounds};
  } else if (algorithm == "small_support") {
    QDeltaOptions o;
    o.seed = seed;
    auto r = small_support_coloring(g, q, o);
    out = {std::move(r.coloring), r.rounds};
  } else if (algorithm == "fast") {
    const int runs = amplification_runs(epsilon, n, 1.0 / n);
    auto r = amplify([&](std::uint64_t s) { return fast_no_logstar(g, q, s); }, runs, seed, epsilon);
    out = {std::move(r.coloring), r.rounds};
  } else if (algorithm == "sloppy_det") {
    std::vector<std::uint64_t> pool;
    for (std::uint64_t i = 0; i < 32; ++i) pool.push_back(derive_seed(seed, {i}));
    auto r = enumerate_seeds_derandomize([&](std::uint64_t s) { return q_delta_coloring_sloppy(g, q, s); }, pool);
    out = {std::move(r.coloring), r.rounds};
  } else if (algorithm == "approx" || algorithm == "approx_det") {
    ApproxParams params;
    params.epsilon = epsilon;
    if (algorithm == "approx") {
      auto r = approx_chi_f(g, params, seed);
      out = {std::move(r.coloring), r.rounds};
    } else {
      std::vector<std::uint64_t> pool;
      for (std::uint64_t i = 0; i < 16; ++i) pool.push_back(derive_seed(seed, {i}));
      auto r = approx_chi_f_det(g, params, pool);
      out = {std::move(r.coloring), r.rounds};
    }
  } else if (algorithm == "grid") {
    auto r = grid_multicolor_logstar(g, q);
    out = {std::move(r.coloring), r.rounds};
  } else if (algorithm == "grid_constant") {
    const int runs = amplification_runs(epsilon, n, 1.0 / n);
    auto r = amplify([&](std::uint64_t s) { return grid_constant_time_run(g, q, epsilon, s); }, runs, seed, epsilon);
    out = {std::move(r.coloring), r.rounds};
  } else {
    throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
  }
  return out;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  std::vector<ExperimentRow> cells;
  for (const auto& gen : config.generators)
    for (std::size_t ni = 0; ni < config.sizes.size(); ++ni) {
      if (fixed_size(gen) && ni > 0) continue;
      for (int delta : config.degrees)
        for (const auto& alg : config.algorithms)
          for (int q : config.qs)
            for (double eps : config.epsilons)
              for (int s = 0; s < config.seeds; ++s) {
                ExperimentRow row;
                row.generator = gen;
                row.n = config.sizes[ni];
                row.delta = delta;
                row.algorithm = alg;
                row.q = q;
                row.epsilon = eps;
                row.seed = config.first_seed + static_cast<std::uint64_t>(s);
                cells.push_back(std::move(row));
              }
    }

  auto work = [&](ExperimentRow& row) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const Graph g = make_graph(row.generator, row.n, row.delta,
                                 derive_seed(row.seed, {static_cast<std::uint64_t>(row.n),
                                                        static_cast<std::uint64_t>(row.delta)}));
      row.n = g.size();
      row.delta = g.max_degree();
      const auto outcome = run_named_algorithm(row.algorithm, g, row.q, row.epsilon, row.seed);
      const auto report = check_multicoloring(g, outcome.coloring);
      row.p = outcome.coloring.p;
      row.q_achieved = report.achieved_q_min;
      row.ratio = report.ratio;
      row.rounds = outcome.rounds;
      row.valid = report.valid && report.complete && (config.round_cap < 0 || outcome.rounds <= config.round_cap);
      if (!report.valid) row.error = report.message;
      else if (!report.complete) row.error = "incomplete";
      else if (!row.valid) row.error = "over round cap";
    } catch (const std::exception& e) {
      row.valid = false;
      row.error = e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  const int threads = std::max(1, config.threads > 0 ? config.threads
                                                     : static_cast<int>(std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(cells.size())); ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) work(cells[i]);
    });
  for (auto& t : pool) t.join();
  return cells;
}

std::string rows_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "generator,n,delta,algorithm,q,epsilon,seed,p,q_achieved,ratio,rounds,valid\n";
  for (const auto& r : rows)
    out << r.generator << ',' << r.n << ',' << r.delta << ',' << r.algorithm << ',' << r.q << ','
        << format_double(r.epsilon) << ',' << r.seed << ',' << r.p << ',' << r.q_achieved << ',' << format_double(r.ratio)
        << ',' << r.rounds << ',' << (r.valid ? "true" : "false") << '\n';
  return out.str();
}

nlohmann::json rows_json(const std::vector<ExperimentRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"generator", r.generator}, {"n", r.n},         {"delta", r.delta},
                          {"algorithm", r.algorithm}, {"q", r.q},         {"epsilon", r.epsilon},
                          {"seed", r.seed},           {"p", r.p},         {"q_achieved", r.q_achieved},
                          {"rounds", r.rounds},       {"valid", r.valid}, {"wall_ms", r.wall_ms}};
    row["ratio"] = std::isinf(r.ratio) ? nlohmann::json(nullptr) : nlohmann::json(r.ratio);
    if (!r.error.empty()) row["error"] = r.error;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace fraclocal
