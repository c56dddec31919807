#include "decat/constructions.hpp"

#include <numeric>
#include <stdexcept>

#include "decat/rng.hpp"

namespace decat {

namespace {

std::string pair_id(const std::string& x, const std::string& y) { return "<" + x + "|" + y + ">"; }

// Finds the position of a freshly built element id after the Instance
// constructor sorted the carrier.
Elem locate(const Instance& inst, std::size_t node, const std::string& id) {
  Elem e = inst.find(node, id);
  if (e == kNoElem) throw std::logic_error("constructed element '" + id + "' vanished");
  return e;
}

}  // namespace

Instance initial(const SchemaRef& schema) {
  return Instance(schema, std::vector<std::vector<std::string>>(schema->node_count()),
                  ElemTable(schema->arrow_count()));
}

Instance terminal(const SchemaRef& schema) {
  return Instance(schema,
                  std::vector<std::vector<std::string>>(schema->node_count(), {std::string("*")}),
                  ElemTable(schema->arrow_count(), std::vector<Elem>{0}));
}

CoproductResult coproduct(const Instance& f, const Instance& g) {
  require_same_schema(f.schema_ref(), g.schema_ref(), "coproduct");
  const Schema& s = f.schema();
  std::vector<std::vector<std::string>> ids(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (const auto& x : f.carrier(d)) ids[d].push_back("0:" + x);
    for (const auto& y : g.carrier(d)) ids[d].push_back("1:" + y);
  }
  ElemTable actions(s.arrow_count());
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    const auto offset = static_cast<Elem>(f.size(s.target(a)));
    for (Elem y : f.action(a)) actions[a].push_back(y);
    for (Elem y : g.action(a)) actions[a].push_back(y + offset);
  }
  // The tags keep summand order, so positions survive the constructor's sort.
  Instance sum(f.schema_ref(), std::move(ids), std::move(actions));
  ElemTable left(s.node_count()), right(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (Elem x = 0; x < f.size(d); ++x) left[d].push_back(x);
    for (Elem y = 0; y < g.size(d); ++y) right[d].push_back(static_cast<Elem>(f.size(d)) + y);
  }
  return {sum, Morphism(f, sum, std::move(left)), Morphism(g, sum, std::move(right))};
}

MultiCoproduct coproduct(std::span<const Instance> summands, const SchemaRef& schema) {
  if (summands.empty()) return {initial(schema), {}};
  MultiCoproduct out{summands[0], {identity(summands[0])}};
  for (std::size_t i = 1; i < summands.size(); ++i) {
    CoproductResult step = coproduct(out.sum, summands[i]);
    for (auto& inj : out.injections) inj = compose(step.left, inj);
    out.injections.push_back(step.right);
    out.sum = step.sum;
  }
  return out;
}

Morphism copair(const CoproductResult& sum, const Morphism& u, const Morphism& v) {
  if (!(u.source() == sum.left.source()) || !(v.source() == sum.right.source()) ||
      !(u.target() == v.target())) {
    throw DomainError("copair: maps do not match the coproduct");
  }
  const Schema& s = sum.sum.schema();
  ElemTable comps(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    comps[d].resize(sum.sum.size(d));
    for (Elem x = 0; x < u.source().size(d); ++x) comps[d][sum.left(d, x)] = u(d, x);
    for (Elem y = 0; y < v.source().size(d); ++y) comps[d][sum.right(d, y)] = v(d, y);
  }
  return Morphism(sum.sum, u.target(), std::move(comps));
}

ProductResult product(const Instance& f, const Instance& g) {
  require_same_schema(f.schema_ref(), g.schema_ref(), "product");
  const Schema& s = f.schema();
  // Build in row-major (x, y) order, then look positions up after sorting.
  std::vector<std::vector<std::string>> ids(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (const auto& x : f.carrier(d)) {
      for (const auto& y : g.carrier(d)) ids[d].push_back(pair_id(x, y));
    }
  }
  ElemTable actions(s.arrow_count());
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    const std::size_t from = s.source(a);
    const std::size_t to = s.target(a);
    const auto width = static_cast<Elem>(g.size(to));
    for (Elem x = 0; x < f.size(from); ++x) {
      for (Elem y = 0; y < g.size(from); ++y) {
        actions[a].push_back(f.apply(a, x) * width + g.apply(a, y));
      }
    }
  }
  Instance prod(f.schema_ref(), std::move(ids), std::move(actions));
  ElemTable first(s.node_count()), second(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    first[d].resize(prod.size(d));
    second[d].resize(prod.size(d));
    for (Elem x = 0; x < f.size(d); ++x) {
      for (Elem y = 0; y < g.size(d); ++y) {
        Elem p = locate(prod, d, pair_id(f.id(d, x), g.id(d, y)));
        first[d][p] = x;
        second[d][p] = y;
      }
    }
  }
  return {prod, Morphism(prod, f, std::move(first)), Morphism(prod, g, std::move(second))};
}

Morphism pair(const ProductResult& prod, const Morphism& u, const Morphism& v) {
  if (!(u.source() == v.source()) || !(u.target() == prod.first.target()) ||
      !(v.target() == prod.second.target())) {
    throw DomainError("pair: maps do not match the product");
  }
  const Instance& w = u.source();
  const Schema& s = w.schema();
  ElemTable comps(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (Elem x = 0; x < w.size(d); ++x) {
      comps[d].push_back(locate(prod.product, d,
                                pair_id(u.target().id(d, u(d, x)), v.target().id(d, v(d, x)))));
    }
  }
  return Morphism(w, prod.product, std::move(comps));
}

PullbackResult pullback(const Morphism& f, const Morphism& g) {
  if (!(f.target() == g.target())) throw DomainError("pullback: maps have different targets");
  const Instance& a = f.source();
  const Instance& b = g.source();
  const Schema& s = a.schema();
  std::vector<std::vector<std::string>> ids(s.node_count());
  // index[d][x * |B_d| + y] = position among the pairs built at node d
  std::vector<std::vector<Elem>> index(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    index[d].assign(a.size(d) * b.size(d), kNoElem);
    for (Elem x = 0; x < a.size(d); ++x) {
      for (Elem y = 0; y < b.size(d); ++y) {
        if (f(d, x) != g(d, y)) continue;
        index[d][x * b.size(d) + y] = static_cast<Elem>(ids[d].size());
        ids[d].push_back(pair_id(a.id(d, x), b.id(d, y)));
      }
    }
  }
  ElemTable actions(s.arrow_count());
  std::vector<std::vector<std::pair<Elem, Elem>>> members(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    members[d].resize(ids[d].size());
    for (Elem x = 0; x < a.size(d); ++x) {
      for (Elem y = 0; y < b.size(d); ++y) {
        Elem p = index[d][x * b.size(d) + y];
        if (p != kNoElem) members[d][p] = {x, y};
      }
    }
  }
  for (std::size_t arrow = 0; arrow < s.arrow_count(); ++arrow) {
    const std::size_t from = s.source(arrow);
    const std::size_t to = s.target(arrow);
    for (const auto& [x, y] : members[from]) {
      // Naturality of f and g keeps the image inside the fiber product.
      actions[arrow].push_back(index[to][a.apply(arrow, x) * b.size(to) + b.apply(arrow, y)]);
    }
  }
  Instance apex(a.schema_ref(), ids, std::move(actions));
  ElemTable first(s.node_count()), second(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    first[d].resize(apex.size(d));
    second[d].resize(apex.size(d));
    for (std::size_t k = 0; k < ids[d].size(); ++k) {
      Elem p = locate(apex, d, ids[d][k]);
      first[d][p] = members[d][k].first;
      second[d][p] = members[d][k].second;
    }
  }
  return {apex, Morphism(apex, a, std::move(first)), Morphism(apex, b, std::move(second))};
}

Morphism mediate(const PullbackResult& pb, const Morphism& p, const Morphism& q) {
  if (!(p.source() == q.source()) || !(p.target() == pb.first.target()) ||
      !(q.target() == pb.second.target())) {
    throw DomainError("mediate: cone does not match the pullback");
  }
  const Instance& w = p.source();
  const Schema& s = w.schema();
  ElemTable comps(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (Elem x = 0; x < w.size(d); ++x) {
      Elem e = pb.apex.find(d, pair_id(p.target().id(d, p(d, x)), q.target().id(d, q(d, x))));
      if (e == kNoElem) throw DomainError("mediate: cone does not commute");
      comps[d].push_back(e);
    }
  }
  return Morphism(w, pb.apex, std::move(comps));
}

Selection select_all(const Instance& instance, bool value) {
  Selection sel(instance.schema().node_count());
  for (std::size_t d = 0; d < sel.size(); ++d) sel[d].assign(instance.size(d), value);
  return sel;
}

namespace {

void check_shape(const Instance& inst, const Selection& sel, const char* what) {
  if (sel.size() != inst.schema().node_count()) {
    throw std::invalid_argument(std::string(what) + ": selection has the wrong node count");
  }
  for (std::size_t d = 0; d < sel.size(); ++d) {
    if (sel[d].size() != inst.size(d)) {
      throw std::invalid_argument(std::string(what) + ": selection has the wrong size at '" +
                                  inst.schema().nodes()[d] + "'");
    }
  }
}

// First (arrow, element) leaving the selection, if any.
std::optional<std::pair<std::size_t, Elem>> escape(const Instance& inst, const Selection& sel) {
  const Schema& s = inst.schema();
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    for (Elem x = 0; x < inst.size(s.source(a)); ++x) {
      if (sel[s.source(a)][x] && !sel[s.target(a)][inst.apply(a, x)]) return std::pair{a, x};
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_closed(const Instance& instance, const Selection& selection) {
  check_shape(instance, selection, "is_closed");
  return !escape(instance, selection).has_value();
}

SubInstance subinstance(const Instance& instance, const Selection& selection) {
  check_shape(instance, selection, "subinstance");
  const Schema& s = instance.schema();
  if (auto esc = escape(instance, selection)) {
    const auto [a, x] = *esc;
    throw DomainError("subinstance: selection is not closed: arrow '" + s.arrows()[a].name +
                      "' sends '" + instance.id(s.source(a), x) + "' outside it");
  }
  std::vector<std::vector<std::string>> ids(s.node_count());
  std::vector<std::vector<Elem>> fresh(s.node_count());  // old -> new position
  ElemTable incl(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    fresh[d].assign(instance.size(d), kNoElem);
    for (Elem x = 0; x < instance.size(d); ++x) {
      if (!selection[d][x]) continue;
      fresh[d][x] = static_cast<Elem>(ids[d].size());
      ids[d].push_back(instance.id(d, x));
      incl[d].push_back(x);
    }
  }
  ElemTable actions(s.arrow_count());
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    for (Elem x : incl[s.source(a)]) actions[a].push_back(fresh[s.target(a)][instance.apply(a, x)]);
  }
  // Selected ids are already sorted, so positions are stable.
  Instance sub(instance.schema_ref(), std::move(ids), std::move(actions));
  return {sub, Morphism(sub, instance, std::move(incl))};
}

SubInstance preimage(const Morphism& f, const Selection& selection) {
  check_shape(f.target(), selection, "preimage");
  if (auto esc = escape(f.target(), selection)) {
    const Schema& s = f.target().schema();
    const auto [a, x] = *esc;
    throw DomainError("preimage: target selection is not closed: arrow '" + s.arrows()[a].name +
                      "' sends '" + f.target().id(s.source(a), x) + "' outside it");
  }
  Selection pre = select_all(f.source(), false);
  for (std::size_t d = 0; d < pre.size(); ++d) {
    for (Elem x = 0; x < f.source().size(d); ++x) pre[d][x] = selection[d][f(d, x)];
  }
  return subinstance(f.source(), pre);
}

Relabeling relabel(const Instance& instance, std::uint64_t seed) {
  const Schema& s = instance.schema();
  std::vector<std::vector<std::string>> ids(s.node_count());
  ElemTable perm(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    perm[d].resize(instance.size(d));
    std::iota(perm[d].begin(), perm[d].end(), Elem{0});
    Rng rng = Rng::stream(seed, "relabel", d);
    rng.shuffle(perm[d]);
    auto fresh = index_ids(instance.size(d));
    for (Elem x = 0; x < instance.size(d); ++x) ids[d].push_back(fresh[perm[d][x]]);
  }
  // ids[d][x] sorts to position perm[d][x]; actions are given against the old
  // positions and remapped by the constructor.
  ElemTable actions(instance.actions());
  Instance out(instance.schema_ref(), std::move(ids), std::move(actions));
  return {out, Morphism(instance, out, std::move(perm))};
}

ComponentLabels element_components(const Instance& instance) {
  const Schema& s = instance.schema();
  std::vector<std::size_t> offset(s.node_count() + 1, 0);
  for (std::size_t d = 0; d < s.node_count(); ++d) offset[d + 1] = offset[d] + instance.size(d);
  std::vector<std::size_t> parent(offset.back());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    for (Elem x = 0; x < instance.size(s.source(a)); ++x) {
      std::size_t u = find(offset[s.source(a)] + x);
      std::size_t v = find(offset[s.target(a)] + instance.apply(a, x));
      // Keep the smaller global index as root so roots are minimal elements.
      if (u < v) parent[v] = u;
      else if (v < u) parent[u] = v;
    }
  }
  ComponentLabels out;
  out.of.resize(s.node_count());
  std::vector<std::uint32_t> label(parent.size(), UINT32_MAX);
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (Elem x = 0; x < instance.size(d); ++x) {
      std::size_t root = find(offset[d] + x);
      if (label[root] == UINT32_MAX) label[root] = static_cast<std::uint32_t>(out.count++);
      out.of[d].push_back(label[root]);
    }
  }
  return out;
}

}  // namespace decat
