#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "fraclocal/graph.hpp"
#include "fraclocal/multicoloring.hpp"

namespace fraclocal {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& field, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") + ": " + message),
        line_(line),
        field_(field) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Key-value file, one `key = value` per line, lists comma separated, '#'
// starts a comment. Keys:
//   generator  random_regular | cycle | path | torus | grid | complete |
//              petersen | tree | bipartite | erdos_renyi | hypercube
//   algorithm  see algorithm_names()
//   n, delta, q          integer lists
//   epsilon              real list
//   seeds                cells per combination (default 1)
//   seed                 first seed (default 1)
//   round_cap            rows above it are reported invalid (default none)
//   threads              worker threads (default: hardware)
struct ExperimentConfig {
  std::vector<std::string> generators;
  std::vector<std::string> algorithms;
  std::vector<int> sizes;
  std::vector<int> degrees{3};
  std::vector<int> qs{2};
  std::vector<double> epsilons{0.25};
  int seeds = 1;
  std::uint64_t first_seed = 1;
  std::int64_t round_cap = -1;
  int threads = 0;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
// Built-in matrices: theorem1, approx, grid.
ExperimentConfig suite_config(const std::string& name);
std::vector<std::string> suite_names();

std::vector<std::string> generator_names();
std::vector<std::string> algorithm_names();

// `delta` is the degree for regular graphs, the expected degree for random
// ones, the dimension for hypercubes; n is the side length product for grids.
Graph make_graph(const std::string& generator, int n, int delta, std::uint64_t seed);

struct AlgorithmOutcome {
  MultiColoring coloring;
  std::int64_t rounds = 0;
};

AlgorithmOutcome run_named_algorithm(const std::string& algorithm, const Graph& g, int q, double epsilon,
                                     std::uint64_t seed);

struct ExperimentRow {
  std::string generator;
  int n = 0;
  int delta = 0;
  std::string algorithm;
  int q = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::int64_t p = 0;
  std::int64_t q_achieved = 0;
  double ratio = 0.0;
  std::int64_t rounds = 0;
  bool valid = false;
  std::string error;
  double wall_ms = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// generator,n,delta,algorithm,q,epsilon,seed,p,q_achieved,ratio,rounds,valid
std::string rows_csv(const std::vector<ExperimentRow>& rows);
nlohmann::json rows_json(const std::vector<ExperimentRow>& rows);

}  // namespace fraclocal
