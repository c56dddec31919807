#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decat/schema.hpp"

namespace decat {

// Position of an element inside its (lexicographically ordered) carrier.
using Elem = std::uint32_t;
inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

using ElemTable = std::vector<std::vector<Elem>>;

// A finite set-valued functor on a schema: one ordered carrier per node and
// one function per arrow. Carriers are kept sorted by element identifier, and
// all Elem values are positions in those sorted carriers.
//
// Instances are immutable handles; copies share storage.
class Instance {
 public:
  Instance() = default;

  // `carriers[d]` lists element identifiers of node d in any order;
  // `actions[a][i]` is the position, within carriers[target(a)] as given, of
  // the image of carriers[source(a)][i]. Both are re-sorted into identifier
  // order. Out-of-range images are kept as kNoElem and reported by
  // validate_instance. Throws std::invalid_argument on shape errors or
  // duplicate identifiers, and if the schema is invalid.
  Instance(SchemaRef schema, std::vector<std::vector<std::string>> carriers, ElemTable actions);

  // Builds from identifier maps. Missing nodes are empty; missing or unknown
  // images become kNoElem. Unknown node/arrow names throw.
  static Instance from_maps(
      SchemaRef schema, const std::map<std::string, std::vector<std::string>>& carriers,
      const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& actions);

  const SchemaRef& schema_ref() const { return data_->schema; }
  const Schema& schema() const { return *data_->schema; }

  std::size_t size(std::size_t node) const { return data_->ids[node].size(); }
  std::size_t total_size() const;
  bool empty() const { return total_size() == 0; }

  const std::vector<std::string>& carrier(std::size_t node) const { return data_->ids[node]; }
  const std::string& id(std::size_t node, Elem x) const { return data_->ids[node][x]; }
  std::span<const Elem> action(std::size_t arrow) const { return data_->actions[arrow]; }
  Elem apply(std::size_t arrow, Elem x) const { return data_->actions[arrow][x]; }
  const ElemTable& actions() const { return data_->actions; }

  // Position of `id` in the carrier of `node`, or kNoElem.
  Elem find(std::size_t node, std::string_view id) const;

  // Same schema, same carriers, same actions.
  bool operator==(const Instance& other) const;

 private:
  struct Data {
    SchemaRef schema;
    std::vector<std::vector<std::string>> ids;
    ElemTable actions;
  };
  std::shared_ptr<const Data> data_;
};

ValidationResult validate_instance(const Instance& instance);

// Left-to-right composite of the path's actions applied to x (a position in
// the carrier of the path's start node). Throws DomainError if x is outside
// that carrier, std::invalid_argument if the path does not resolve.
Elem eval_path(const Instance& instance, const Path& path, Elem x);
Elem eval_path(const Instance& instance, const ResolvedPath& path, Elem x);

// Identifier-level convenience: the id of the result.
std::string eval_path(const Instance& instance, const Path& path, std::string_view x);

// Zero-padded decimal ids "0".."n-1" whose lexicographic order is numeric.
std::vector<std::string> index_ids(std::size_t n);

}  // namespace decat
