#include "decat/schema.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace decat {

namespace {

constexpr std::size_t kUnresolved = static_cast<std::size_t>(-1);

template <class Range, class Key>
void report_duplicates(const Range& items, Key key, std::string_view kind,
                       ValidationResult& out) {
  std::set<std::string> seen;
  for (const auto& item : items) {
    const std::string& id = key(item);
    if (!seen.insert(id).second) {
      out.violations.push_back(
          {"duplicate-identifier", std::string(kind) + " '" + id + "' declared twice", 0, id});
    }
  }
}

}  // namespace

Schema::Schema(std::string name, std::vector<std::string> nodes, std::vector<Arrow> arrows,
               std::vector<Relation> relations)
    : name_(std::move(name)),
      nodes_(std::move(nodes)),
      arrows_(std::move(arrows)),
      relations_(std::move(relations)) {
  auto& v = validation_.violations;
  report_duplicates(nodes_, [](const std::string& s) -> const std::string& { return s; }, "node",
                    validation_);
  report_duplicates(arrows_, [](const Arrow& a) -> const std::string& { return a.name; }, "arrow",
                    validation_);

  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    auto s = node_index(a.source);
    auto t = node_index(a.target);
    if (!s) {
      v.push_back({"dangling-endpoint",
                   "arrow '" + a.name + "' has undeclared source '" + a.source + "'", i, a.source});
    }
    if (!t) {
      v.push_back({"dangling-endpoint",
                   "arrow '" + a.name + "' has undeclared target '" + a.target + "'", i, a.target});
    }
    sources_.push_back(s.value_or(kUnresolved));
    targets_.push_back(t.value_or(kUnresolved));
    if (s && t) {
      out_[*s].push_back(i);
      in_[*t].push_back(i);
    }
  }

  auto resolve = [&](const Path& p, std::size_t rel, ResolvedPath& out) -> bool {
    std::optional<std::size_t> start;
    if (!p.start.empty()) {
      start = node_index(p.start);
      if (!start) {
        v.push_back({"dangling-endpoint",
                     "relation " + std::to_string(rel) + " starts at undeclared node '" + p.start +
                         "'",
                     rel, p.start});
        return false;
      }
    }
    std::optional<std::size_t> at = start;
    for (const auto& name : p.arrows) {
      auto a = arrow_index(name);
      if (!a) {
        v.push_back({"unknown-arrow",
                     "relation " + std::to_string(rel) + " uses undeclared arrow '" + name + "'",
                     rel, name});
        return false;
      }
      if (sources_[*a] == kUnresolved || targets_[*a] == kUnresolved) return false;
      if (at && *at != sources_[*a]) {
        v.push_back({"non-composable-path",
                     "relation " + std::to_string(rel) + ": path '" + to_string(p) +
                         "' does not compose at '" + name + "'",
                     rel, name});
        return false;
      }
      if (!start) start = sources_[*a];
      out.arrows.push_back(*a);
      at = targets_[*a];
    }
    if (!start) {
      v.push_back({"non-composable-path",
                   "relation " + std::to_string(rel) + ": empty path without a start node", rel,
                   ""});
      return false;
    }
    out.start = *start;
    out.end = *at;
    return true;
  };

  for (std::size_t r = 0; r < relations_.size(); ++r) {
    ResolvedPath lhs, rhs;
    bool ok_l = resolve(relations_[r].lhs, r, lhs);
    bool ok_r = resolve(relations_[r].rhs, r, rhs);
    if (!ok_l || !ok_r) continue;
    if (lhs.start != rhs.start || lhs.end != rhs.end) {
      v.push_back({"non-parallel-relation",
                   "relation " + std::to_string(r) + ": '" + to_string(relations_[r].lhs) +
                       "' and '" + to_string(relations_[r].rhs) + "' are not parallel",
                   r, ""});
      continue;
    }
    resolved_.emplace_back(std::move(lhs), std::move(rhs));
  }
}

std::optional<std::size_t> Schema::node_index(std::string_view id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Schema::arrow_index(std::string_view id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].name == id) return i;
  }
  return std::nullopt;
}

bool Schema::operator==(const Schema& other) const {
  return name_ == other.name_ && nodes_ == other.nodes_ && arrows_ == other.arrows_ &&
         relations_ == other.relations_;
}

SchemaRef make_schema(std::string name, std::vector<std::string> nodes, std::vector<Arrow> arrows,
                      std::vector<Relation> relations) {
  return std::make_shared<const Schema>(std::move(name), std::move(nodes), std::move(arrows),
                                        std::move(relations));
}

ValidationResult validate_schema(const Schema& schema) { return schema.validation(); }

bool same_schema(const SchemaRef& a, const SchemaRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_schema(const SchemaRef& a, const SchemaRef& b, std::string_view what) {
  if (!same_schema(a, b)) {
    throw SchemaMismatch(std::string(what) + ": operands live over different schemas ('" +
                         (a ? a->name() : "?") + "' vs '" + (b ? b->name() : "?") + "')");
  }
}

void require_valid(const Schema& schema) {
  if (schema.valid()) return;
  std::ostringstream msg;
  msg << "schema '" << schema.name() << "' is invalid:";
  for (const auto& v : schema.validation().violations) msg << "\n  " << v.message;
  throw std::invalid_argument(msg.str());
}

std::string to_string(const Path& path) {
  if (path.arrows.empty()) return "id@" + path.start;
  std::string out;
  for (std::size_t i = 0; i < path.arrows.size(); ++i) {
    if (i) out += '.';
    out += path.arrows[i];
  }
  return out;
}

ResolvedPath resolve_path(const Schema& schema, const Path& path) {
  ResolvedPath out;
  std::optional<std::size_t> at;
  if (!path.start.empty()) {
    at = schema.node_index(path.start);
    if (!at) throw std::invalid_argument("unknown node '" + path.start + "'");
  }
  for (const auto& name : path.arrows) {
    auto a = schema.arrow_index(name);
    if (!a) throw std::invalid_argument("unknown arrow '" + name + "'");
    if (at && *at != schema.source(*a)) {
      throw std::invalid_argument("path '" + to_string(path) + "' does not compose at '" + name +
                                  "'");
    }
    if (out.arrows.empty() && !at) at = schema.source(*a);
    if (out.arrows.empty()) out.start = *at;
    out.arrows.push_back(*a);
    at = schema.target(*a);
  }
  if (!at) throw std::invalid_argument("empty path without a start node");
  if (out.arrows.empty()) out.start = *at;
  out.end = *at;
  return out;
}

}  // namespace decat
