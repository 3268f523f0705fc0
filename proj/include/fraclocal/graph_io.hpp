#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fraclocal/graph.hpp"

namespace fraclocal {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Edge-list interchange format:
//   n m
//   u v            (m lines, 0-based, u < v, sorted)
// plus optional comment lines understood by the reader:
//   # idspace N
//   # id u ID
//   # grid d s_1..s_d w_1..w_d
//   # coord u x_1..x_d
// Any other line starting with '#' is ignored.
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

std::string to_edge_list_string(const Graph& g);
Graph parse_edge_list(const std::string& text);

}  // namespace fraclocal
