#include "decat/morphism.hpp"

#include <stdexcept>

namespace decat {

Morphism::Morphism(Instance source, Instance target, ElemTable components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  require_same_schema(source_.schema_ref(), target_.schema_ref(), "morphism");
  const Schema& s = source_.schema();
  if (components_.size() != s.node_count()) {
    throw std::invalid_argument("morphism: expected " + std::to_string(s.node_count()) +
                                " components");
  }
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    if (components_[d].size() != source_.size(d)) {
      throw std::invalid_argument("morphism: component at '" + s.nodes()[d] +
                                  "' has the wrong length");
    }
  }
}

ValidationResult validate_morphism(const Morphism& m) {
  ValidationResult result;
  const Instance& src = m.source();
  const Instance& tgt = m.target();
  const Schema& s = src.schema();
  bool typed = true;
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    for (Elem x = 0; x < src.size(d); ++x) {
      if (m(d, x) >= tgt.size(d)) {
        typed = false;
        result.violations.push_back({"ill-typed-component",
                                     "component at '" + s.nodes()[d] + "' sends '" +
                                         src.id(d, x) + "' outside the target carrier",
                                     d, src.id(d, x)});
      }
    }
  }
  if (!typed) return result;
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    const std::size_t from = s.source(a);
    const std::size_t to = s.target(a);
    for (Elem x = 0; x < src.size(from); ++x) {
      if (m(to, src.apply(a, x)) != tgt.apply(a, m(from, x))) {
        result.violations.push_back(
            {"naturality",
             "naturality fails for arrow '" + s.arrows()[a].name + "' at '" + src.id(from, x) +
                 "'",
             a, src.id(from, x)});
      }
    }
  }
  return result;
}

Morphism identity(const Instance& instance) {
  ElemTable comps(instance.schema().node_count());
  for (std::size_t d = 0; d < comps.size(); ++d) {
    comps[d].resize(instance.size(d));
    for (Elem x = 0; x < comps[d].size(); ++x) comps[d][x] = x;
  }
  return Morphism(instance, instance, std::move(comps));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) {
    throw DomainError("compose: target of the first map is not the source of the second");
  }
  ElemTable comps(f.components().size());
  for (std::size_t d = 0; d < comps.size(); ++d) {
    comps[d].reserve(f.components()[d].size());
    for (Elem y : f.components()[d]) comps[d].push_back(g(d, y));
  }
  return Morphism(f.source(), g.target(), std::move(comps));
}

bool is_iso(const Morphism& m) {
  for (std::size_t d = 0; d < m.components().size(); ++d) {
    if (m.source().size(d) != m.target().size(d)) return false;
    std::vector<bool> hit(m.target().size(d), false);
    for (Elem y : m.components()[d]) {
      if (y >= hit.size() || hit[y]) return false;
      hit[y] = true;
    }
  }
  return true;
}

Morphism inverse(const Morphism& m) {
  if (!is_iso(m)) throw DomainError("inverse: morphism is not bijective");
  ElemTable comps(m.components().size());
  for (std::size_t d = 0; d < comps.size(); ++d) {
    comps[d].resize(m.components()[d].size());
    for (Elem x = 0; x < m.components()[d].size(); ++x) comps[d][m(d, x)] = x;
  }
  return Morphism(m.target(), m.source(), std::move(comps));
}

std::vector<std::vector<bool>> image(const Morphism& m) {
  std::vector<std::vector<bool>> sel(m.components().size());
  for (std::size_t d = 0; d < sel.size(); ++d) {
    sel[d].assign(m.target().size(d), false);
    for (Elem y : m.components()[d]) sel[d][y] = true;
  }
  return sel;
}

}  // namespace decat
