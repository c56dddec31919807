#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "decat/schema.hpp"

namespace decat {

// Bundled schemas:
//   digraph  nodes V, E; arrows s, t: E -> V
//   C2, C3   one node X, generator a with a^2 = 1 (resp. a^3 = 1)
//   S3       one node X, generators r, s with r^3 = s^2 = (rs)^2 = 1
//   trivial  one node X, no arrows (the trivial group)
//   endo     one node X, a free endomorphism f
//   func     nodes A, B; one arrow f: A -> B
// Returns nullptr for unknown names. Repeated calls return the same object.
SchemaRef builtin_schema(std::string_view name);

std::vector<std::string> builtin_schema_names();

}  // namespace decat
