#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decat/errors.hpp"

namespace decat {

struct Arrow {
  std::string name;
  std::string source;
  std::string target;

  bool operator==(const Arrow&) const = default;
};

// A composable arrow sequence read left to right: "a.b" means first a, then b.
// An empty sequence is the identity at `start`.
struct Path {
  std::string start;
  std::vector<std::string> arrows;

  bool operator==(const Path&) const = default;
};

struct Relation {
  Path lhs;
  Path rhs;

  bool operator==(const Relation&) const = default;
};

// Path with names resolved to indices into the owning schema.
struct ResolvedPath {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::size_t> arrows;
};

// A finite quiver with path relations; presents the index category of the
// instances built over it. Construction never throws on malformed input:
// violations are collected and reported by validate_schema, and every other
// operation requires a valid schema.
class Schema {
 public:
  Schema(std::string name, std::vector<std::string> nodes, std::vector<Arrow> arrows,
         std::vector<Relation> relations = {});

  const std::string& name() const { return name_; }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<Relation>& relations() const { return relations_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  std::optional<std::size_t> node_index(std::string_view id) const;
  std::optional<std::size_t> arrow_index(std::string_view id) const;

  // Resolved endpoints; only meaningful on a valid schema.
  std::size_t source(std::size_t arrow) const { return sources_[arrow]; }
  std::size_t target(std::size_t arrow) const { return targets_[arrow]; }
  const std::vector<std::size_t>& out_arrows(std::size_t node) const { return out_[node]; }
  const std::vector<std::size_t>& in_arrows(std::size_t node) const { return in_[node]; }
  const std::vector<std::pair<ResolvedPath, ResolvedPath>>& resolved_relations() const {
    return resolved_;
  }

  const ValidationResult& validation() const { return validation_; }
  bool valid() const { return validation_.ok(); }

  // Structural equality (name, nodes, arrows, relations).
  bool operator==(const Schema& other) const;

 private:
  std::string name_;
  std::vector<std::string> nodes_;
  std::vector<Arrow> arrows_;
  std::vector<Relation> relations_;

  std::vector<std::size_t> sources_;
  std::vector<std::size_t> targets_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::pair<ResolvedPath, ResolvedPath>> resolved_;
  ValidationResult validation_;
};

using SchemaRef = std::shared_ptr<const Schema>;

SchemaRef make_schema(std::string name, std::vector<std::string> nodes, std::vector<Arrow> arrows,
                      std::vector<Relation> relations = {});

ValidationResult validate_schema(const Schema& schema);

// Throws SchemaMismatch unless both refer to structurally equal schemas.
void require_same_schema(const SchemaRef& a, const SchemaRef& b, std::string_view what);
bool same_schema(const SchemaRef& a, const SchemaRef& b);

// Throws std::invalid_argument listing the violations of an invalid schema.
void require_valid(const Schema& schema);

std::string to_string(const Path& path);

// Resolves names to indices; throws std::invalid_argument on unknown names or
// non-composable paths.
ResolvedPath resolve_path(const Schema& schema, const Path& path);

}  // namespace decat
