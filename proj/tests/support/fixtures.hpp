#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decat/constructions.hpp"
#include "decat/presets.hpp"

namespace fixtures {

using decat::Instance;
using decat::SchemaRef;

inline SchemaRef digraph_schema() { return decat::builtin_schema("digraph"); }

// Vertices "v0".."v{n-1}", edges "e0".. in the given order.
inline Instance digraph(std::size_t vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::string> vs, es;
  for (std::size_t i = 0; i < vertices; ++i) vs.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < edges.size(); ++i) es.push_back("e" + std::to_string(i));
  decat::ElemTable actions(2);
  for (const auto& [a, b] : edges) {
    actions[0].push_back(static_cast<decat::Elem>(a));
    actions[1].push_back(static_cast<decat::Elem>(b));
  }
  return Instance(digraph_schema(), {vs, es}, std::move(actions));
}

inline Instance K1() { return digraph(1, {}); }
inline Instance L1() { return digraph(1, {{0, 0}}); }
inline Instance A2() { return digraph(2, {{0, 1}}); }
inline Instance P3() { return digraph(3, {{0, 1}, {1, 2}}); }
inline Instance C3() { return digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Instance D2() { return digraph(2, {{0, 1}, {1, 0}}); }
inline Instance M2() { return digraph(2, {{0, 1}, {0, 1}}); }

inline Instance sum(const Instance& a, const Instance& b) { return decat::coproduct(a, b).sum; }

// One-node instance over a group-like schema from per-arrow permutations.
inline Instance one_node(const std::string& schema, std::size_t n,
                         std::vector<std::vector<decat::Elem>> actions) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("x" + std::to_string(i));
  return Instance(decat::builtin_schema(schema), {ids}, std::move(actions));
}

}  // namespace fixtures
