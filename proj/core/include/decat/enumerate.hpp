#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decat/canon.hpp"

namespace decat {

// Per-node carrier size caps, optionally with a cap on the total element count.
struct Bounds {
  std::vector<std::size_t> max_size;
  std::optional<std::size_t> max_total;

  // "V=3,E=3", "X=4", "V=6,E=6,total=6", or a bare number for every node.
  // Nodes left out get bound 0. Throws std::invalid_argument.
  static Bounds parse(const Schema& schema, std::string_view text);
  static Bounds uniform(const Schema& schema, std::size_t n);

  std::string to_string(const Schema& schema) const;
  bool admits(const std::vector<std::size_t>& sizes) const;
};

struct UniverseEntry {
  CanonicalForm form;
  Instance representative;  // canonical copy (ids "0".."n-1" in canonical order)
};

// Number of raw action tables over all admitted size vectors, saturating at
// UINT64_MAX. Used as a guard before enumeration.
std::uint64_t raw_candidate_count(const Schema& schema, const Bounds& bounds);

// Every valid instance within the bounds, one per isomorphism class, sorted by
// canonical bytes. Tables are filled by backtracking; a relation is checked as
// soon as both of its paths can be evaluated at an element.
std::vector<UniverseEntry> enumerate_instances(const SchemaRef& schema, const Bounds& bounds);

}  // namespace decat
