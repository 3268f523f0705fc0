#include "fraclocal/multicoloring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fraclocal {

MultiColoring from_partial(const PartialColoring& coloring) {
  MultiColoring out{coloring.palette, 1, {}};
  out.sets.resize(coloring.colors.size());
  for (std::size_t v = 0; v < coloring.colors.size(); ++v)
    if (coloring.colors[v] != kUncolored) out.sets[v] = {coloring.colors[v]};
  return out;
}

MultiColoring expand_blocks(const PartialColoring& coloring, int k) {
  MultiColoring out{coloring.palette * k, k, {}};
  out.sets.resize(coloring.colors.size());
  for (std::size_t v = 0; v < coloring.colors.size(); ++v) {
    const Color c = coloring.colors[v];
    if (c == kUncolored) continue;
    for (int i = 1; i <= k; ++i) out.sets[v].push_back((c - 1) * k + i);
  }
  return out;
}

void merge_shifted(MultiColoring& into, const MultiColoring& other, std::int64_t offset) {
  if (into.sets.empty()) into.sets.resize(other.sets.size());
  if (into.sets.size() != other.sets.size()) throw std::invalid_argument("colorings of different graphs");
  for (std::size_t v = 0; v < other.sets.size(); ++v) {
    for (Color c : other.sets[v]) into.sets[v].push_back(c + offset);
    std::sort(into.sets[v].begin(), into.sets[v].end());
  }
}

nlohmann::json multicoloring_json(const MultiColoring& coloring) {
  nlohmann::json colors = nlohmann::json::object();
  for (std::size_t v = 0; v < coloring.sets.size(); ++v) colors[std::to_string(v)] = coloring.sets[v];
  return {{"p", coloring.p}, {"q", coloring.q}, {"colors", std::move(colors)}};
}

MultiColoring multicoloring_from_json(const nlohmann::json& doc, int n) {
  MultiColoring out;
  out.p = doc.at("p").get<std::int64_t>();
  out.q = doc.at("q").get<std::int64_t>();
  out.sets.resize(n);
  for (const auto& [key, value] : doc.at("colors").items()) {
    const int v = std::stoi(key);
    if (v < 0 || v >= n) throw std::out_of_range("color set for unknown node " + key);
    out.sets[v] = value.get<std::vector<Color>>();
    std::sort(out.sets[v].begin(), out.sets[v].end());
  }
  return out;
}

}  // namespace fraclocal
