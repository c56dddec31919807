#include "decat/instance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace decat {

Instance::Instance(SchemaRef schema, std::vector<std::vector<std::string>> carriers,
                   ElemTable actions) {
  if (!schema) throw std::invalid_argument("instance without schema");
  require_valid(*schema);
  const Schema& s = *schema;
  if (carriers.size() != s.node_count()) {
    throw std::invalid_argument("instance: expected " + std::to_string(s.node_count()) +
                                " carriers, got " + std::to_string(carriers.size()));
  }
  if (actions.size() != s.arrow_count()) {
    throw std::invalid_argument("instance: expected " + std::to_string(s.arrow_count()) +
                                " action tables, got " + std::to_string(actions.size()));
  }

  // rank[d][old position] = new position after sorting by identifier.
  std::vector<std::vector<Elem>> rank(s.node_count());
  std::vector<std::vector<std::string>> sorted(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    auto& ids = carriers[d];
    std::vector<Elem> order(ids.size());
    std::iota(order.begin(), order.end(), Elem{0});
    std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return ids[a] < ids[b]; });
    rank[d].resize(ids.size());
    sorted[d].reserve(ids.size());
    for (Elem pos = 0; pos < order.size(); ++pos) {
      if (pos > 0 && ids[order[pos]] == sorted[d].back()) {
        throw std::invalid_argument("instance: duplicate element '" + ids[order[pos]] +
                                    "' at node '" + s.nodes()[d] + "'");
      }
      rank[d][order[pos]] = pos;
      sorted[d].push_back(std::move(ids[order[pos]]));
    }
  }

  ElemTable tables(s.arrow_count());
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    const std::size_t src = s.source(a);
    const std::size_t tgt = s.target(a);
    if (actions[a].size() != sorted[src].size()) {
      throw std::invalid_argument("instance: action of '" + s.arrows()[a].name + "' has " +
                                  std::to_string(actions[a].size()) + " entries, carrier has " +
                                  std::to_string(sorted[src].size()));
    }
    tables[a].resize(actions[a].size());
    for (std::size_t i = 0; i < actions[a].size(); ++i) {
      Elem y = actions[a][i];
      tables[a][rank[src][i]] = y < rank[tgt].size() ? rank[tgt][y] : kNoElem;
    }
  }

  data_ = std::make_shared<const Data>(Data{std::move(schema), std::move(sorted), std::move(tables)});
}

Instance Instance::from_maps(
    SchemaRef schema, const std::map<std::string, std::vector<std::string>>& carriers,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& actions) {
  if (!schema) throw std::invalid_argument("instance without schema");
  require_valid(*schema);
  const Schema& s = *schema;
  std::vector<std::vector<std::string>> ids(s.node_count());
  for (const auto& [node, elems] : carriers) {
    auto d = s.node_index(node);
    if (!d) throw std::invalid_argument("unknown node '" + node + "'");
    ids[*d] = elems;
  }
  ElemTable tables(s.arrow_count());
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    tables[a].assign(ids[s.source(a)].size(), kNoElem);
  }
  auto position = [](const std::vector<std::string>& v, const std::string& id) -> Elem {
    auto it = std::find(v.begin(), v.end(), id);
    return it == v.end() ? kNoElem : static_cast<Elem>(it - v.begin());
  };
  for (const auto& [arrow, pairs] : actions) {
    auto a = s.arrow_index(arrow);
    if (!a) throw std::invalid_argument("unknown arrow '" + arrow + "'");
    const auto& src = ids[s.source(*a)];
    const auto& tgt = ids[s.target(*a)];
    for (const auto& [x, y] : pairs) {
      Elem i = position(src, x);
      if (i == kNoElem) {
        throw std::invalid_argument("arrow '" + arrow + "': '" + x + "' is not an element of '" +
                                    s.arrows()[*a].source + "'");
      }
      if (tables[*a][i] != kNoElem) {
        throw std::invalid_argument("arrow '" + arrow + "': '" + x + "' mapped twice");
      }
      Elem j = position(tgt, y);
      // Unknown targets stay kNoElem and show up in validation.
      tables[*a][i] = j;
    }
  }
  return Instance(std::move(schema), std::move(ids), std::move(tables));
}

std::size_t Instance::total_size() const {
  std::size_t n = 0;
  for (const auto& c : data_->ids) n += c.size();
  return n;
}

Elem Instance::find(std::size_t node, std::string_view id) const {
  const auto& c = data_->ids[node];
  auto it = std::lower_bound(c.begin(), c.end(), id);
  if (it == c.end() || *it != id) return kNoElem;
  return static_cast<Elem>(it - c.begin());
}

bool Instance::operator==(const Instance& other) const {
  if (data_ == other.data_) return true;
  return same_schema(data_->schema, other.data_->schema) && data_->ids == other.data_->ids &&
         data_->actions == other.data_->actions;
}

ValidationResult validate_instance(const Instance& inst) {
  ValidationResult result;
  const Schema& s = inst.schema();
  bool typed = true;
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    const auto table = inst.action(a);
    for (Elem x = 0; x < table.size(); ++x) {
      if (table[x] == kNoElem || table[x] >= inst.size(s.target(a))) {
        typed = false;
        result.violations.push_back(
            {"ill-typed-action",
             "arrow '" + s.arrows()[a].name + "' does not send '" + inst.id(s.source(a), x) +
                 "' into '" + s.arrows()[a].target + "'",
             a, inst.id(s.source(a), x)});
      }
    }
  }
  if (!typed) return result;

  const auto& rels = s.resolved_relations();
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const auto& [lhs, rhs] = rels[r];
    for (Elem x = 0; x < inst.size(lhs.start); ++x) {
      Elem l = eval_path(inst, lhs, x);
      Elem rr = eval_path(inst, rhs, x);
      if (l != rr) {
        const auto& rel = s.relations()[r];
        result.violations.push_back(
            {"relation",
             "relation " + std::to_string(r) + " (" + to_string(rel.lhs) + " = " +
                 to_string(rel.rhs) + ") fails at '" + inst.id(lhs.start, x) + "': '" +
                 inst.id(lhs.end, l) + "' != '" + inst.id(rhs.end, rr) + "'",
             r, inst.id(lhs.start, x)});
      }
    }
  }
  return result;
}

Elem eval_path(const Instance& inst, const ResolvedPath& path, Elem x) {
  if (x >= inst.size(path.start)) {
    throw DomainError("eval_path: element outside the carrier of '" +
                      inst.schema().nodes()[path.start] + "'");
  }
  for (std::size_t a : path.arrows) x = inst.apply(a, x);
  return x;
}

Elem eval_path(const Instance& inst, const Path& path, Elem x) {
  return eval_path(inst, resolve_path(inst.schema(), path), x);
}

std::string eval_path(const Instance& inst, const Path& path, std::string_view x) {
  ResolvedPath p = resolve_path(inst.schema(), path);
  Elem e = inst.find(p.start, x);
  if (e == kNoElem) {
    throw DomainError("eval_path: '" + std::string(x) + "' is not an element of '" +
                      inst.schema().nodes()[p.start] + "'");
  }
  return inst.id(p.end, eval_path(inst, p, e));
}

std::vector<std::string> index_ids(std::size_t n) {
  std::size_t width = 1;
  for (std::size_t m = 10; m < n; m *= 10) ++width;
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = std::to_string(i);
    out.push_back(std::string(width - s.size(), '0') + s);
  }
  return out;
}

}  // namespace decat
