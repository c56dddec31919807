#include "decat/presets.hpp"

#include <map>

namespace decat {

namespace {

Path path(std::string start, std::vector<std::string> arrows) {
  return Path{std::move(start), std::move(arrows)};
}

std::map<std::string, SchemaRef, std::less<>> make_presets() {
  std::map<std::string, SchemaRef, std::less<>> m;
  m["digraph"] = make_schema("digraph", {"V", "E"}, {{"s", "E", "V"}, {"t", "E", "V"}});
  m["C2"] = make_schema("C2", {"X"}, {{"a", "X", "X"}},
                        {{path("X", {"a", "a"}), path("X", {})}});
  m["C3"] = make_schema("C3", {"X"}, {{"a", "X", "X"}},
                        {{path("X", {"a", "a", "a"}), path("X", {})}});
  m["S3"] = make_schema("S3", {"X"}, {{"r", "X", "X"}, {"s", "X", "X"}},
                        {{path("X", {"r", "r", "r"}), path("X", {})},
                         {path("X", {"s", "s"}), path("X", {})},
                         {path("X", {"r", "s", "r", "s"}), path("X", {})}});
  m["trivial"] = make_schema("trivial", {"X"}, {});
  m["endo"] = make_schema("endo", {"X"}, {{"f", "X", "X"}});
  m["func"] = make_schema("func", {"A", "B"}, {{"f", "A", "B"}});
  return m;
}

const std::map<std::string, SchemaRef, std::less<>>& presets() {
  static const auto m = make_presets();
  return m;
}

}  // namespace

SchemaRef builtin_schema(std::string_view name) {
  auto it = presets().find(name);
  return it == presets().end() ? nullptr : it->second;
}

std::vector<std::string> builtin_schema_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

}  // namespace decat
