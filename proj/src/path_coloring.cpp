#include "fraclocal/path_coloring.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace fraclocal {

namespace {

struct PathSearch {
  const std::vector<ColorList>& lists;
  int q;
  std::vector<ColorList> picks;
  std::set<std::pair<std::size_t, ColorList>> dead;  // (node, colors blocked for it)

  bool solve(std::size_t i, const ColorList& blocked) {
    if (dead.count({i, blocked})) return false;
    ColorList avail;
    std::set_difference(lists[i].begin(), lists[i].end(), blocked.begin(), blocked.end(), std::back_inserter(avail));
    if (static_cast<int>(avail.size()) < q) {
      dead.insert({i, blocked});
      return false;
    }
    if (i + 1 == lists.size()) {
      picks[i].assign(avail.begin(), avail.begin() + q);
      return true;
    }
    // Only the picked colors that also sit in the next list matter later, and
    // blocking fewer of them never hurts: use outside colors first.
    const ColorList& next = lists[i + 1];
    ColorList outside, shared;
    for (Color c : avail) (std::binary_search(next.begin(), next.end(), c) ? shared : outside).push_back(c);
    const int from_outside = std::min<int>(q, static_cast<int>(outside.size()));
    const int from_shared = q - from_outside;

    // Shared colors lying in the same later lists are interchangeable, so
    // only the count taken from each such class matters.
    std::map<std::vector<bool>, ColorList> by_class;
    for (Color c : shared) {
      std::vector<bool> key;
      for (std::size_t j = i + 2; j < lists.size(); ++j)
        key.push_back(std::binary_search(lists[j].begin(), lists[j].end(), c));
      by_class[key].push_back(c);
    }
    std::vector<const ColorList*> classes;
    for (const auto& [key, members] : by_class) classes.push_back(&members);
    std::vector<int> take(classes.size(), 0);
    std::function<bool(std::size_t, int)> choose = [&](std::size_t k, int left) -> bool {
      if (k == classes.size()) {
        if (left > 0) return false;
        ColorList chosen_shared;
        for (std::size_t j = 0; j < classes.size(); ++j)
          chosen_shared.insert(chosen_shared.end(), classes[j]->begin(), classes[j]->begin() + take[j]);
        std::sort(chosen_shared.begin(), chosen_shared.end());
        if (!solve(i + 1, chosen_shared)) return false;
        ColorList pick(outside.begin(), outside.begin() + from_outside);
        pick.insert(pick.end(), chosen_shared.begin(), chosen_shared.end());
        std::sort(pick.begin(), pick.end());
        picks[i] = std::move(pick);
        return true;
      }
      const int most = std::min<int>(left, static_cast<int>(classes[k]->size()));
      for (int t = 0; t <= most; ++t) {
        take[k] = t;
        if (choose(k + 1, left - t)) return true;
      }
      take[k] = 0;
      return false;
    };
    if (choose(0, from_shared)) return true;
    dead.insert({i, blocked});
    return false;
  }
};

}  // namespace

std::optional<std::vector<ColorList>> path_list_multicolor(const std::vector<ColorList>& lists, int q) {
  if (q < 0) throw PreconditionError("q must be non-negative");
  if (lists.empty()) return std::vector<ColorList>{};
  std::vector<ColorList> sorted = lists;
  for (auto& l : sorted) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  PathSearch search{sorted, q, std::vector<ColorList>(sorted.size()), {}};
  if (!search.solve(0, {})) return std::nullopt;
  return search.picks;
}

std::vector<ColorList> path_complete(const std::vector<ColorList>& lists, int q) {
  if (q < 1) throw PreconditionError("q must be positive");
  const std::size_t len = 2 * static_cast<std::size_t>(q) + 1;
  if (lists.size() != len) throw PreconditionError("path must have exactly 2q+1 nodes");
  for (std::size_t i = 0; i < len; ++i) {
    std::set<Color> distinct(lists[i].begin(), lists[i].end());
    const bool endpoint = i == 0 || i + 1 == len;
    const std::size_t need = endpoint ? q + 1 : 2 * q + 1;
    if (distinct.size() < need)
      throw PreconditionError("list of path node " + std::to_string(i) + " has " + std::to_string(distinct.size()) +
                              " colors, needs " + std::to_string(need));
  }
  auto result = path_list_multicolor(lists, q);
  if (!result) throw std::logic_error("path completion failed although list sizes suffice");
  return *result;
}

}  // namespace fraclocal
