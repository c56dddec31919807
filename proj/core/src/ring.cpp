#include "decat/ring.hpp"

#include <algorithm>
#include <stdexcept>

#include "decat/constructions.hpp"
#include "decat/hom_search.hpp"

namespace decat {

namespace {

template <class T>
T checked_add(T a, T b) {
  T r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

template <class T>
T checked_mul(T a, T b) {
  T r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

std::int64_t to_signed(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw std::overflow_error("coefficient overflow");
  return static_cast<std::int64_t>(v);
}

template <class Coeff>
void require_same(const Combination<Coeff>& x, const Combination<Coeff>& y, const char* what) {
  require_same_schema(x.schema(), y.schema(), what);
}

// Shared bilinear product of two combinations.
template <class Coeff>
Combination<Coeff> bilinear(const Combination<Coeff>& x, const Combination<Coeff>& y) {
  Combination<Coeff> out(x.schema());
  for (const auto& [fx, tx] : x.terms()) {
    for (const auto& [fy, ty] : y.terms()) {
      const Coeff scale = checked_mul(tx.coefficient, ty.coefficient);
      const DecClass piece = class_of(product(tx.representative, ty.representative).product);
      for (const auto& [f, t] : piece.terms()) {
        out.accumulate(f, t.representative, checked_mul(scale, static_cast<Coeff>(t.coefficient)));
      }
    }
  }
  return out;
}

}  // namespace

template <class Coeff>
void Combination<Coeff>::accumulate(const CanonicalForm& form, const Instance& representative,
                                    Coeff c) {
  if (c == Coeff{0}) return;
  auto it = terms_.find(form);
  if (it == terms_.end()) {
    terms_.emplace(form, Term{representative, c});
    return;
  }
  it->second.coefficient = checked_add(it->second.coefficient, c);
  if (it->second.coefficient == Coeff{0}) terms_.erase(it);
}

template class Combination<std::uint64_t>;
template class Combination<std::int64_t>;

DecClass class_of(const Instance& instance) {
  DecClass out(instance.schema_ref());
  const Decomposition dec = connected_components(instance);
  for (const Instance& c : dec.components) {
    CanonicalCopy copy = canonical_instance(c);
    out.accumulate(copy.form, copy.instance, 1);
  }
  return out;
}

DecClass zero(const SchemaRef& schema) { return DecClass(schema); }

DecClass one(const SchemaRef& schema) { return class_of(terminal(schema)); }

DecClass add(const DecClass& x, const DecClass& y) {
  require_same(x, y, "add");
  DecClass out = x;
  for (const auto& [f, t] : y.terms()) out.accumulate(f, t.representative, t.coefficient);
  return out;
}

DecClass mul(const DecClass& x, const DecClass& y) {
  require_same(x, y, "mul");
  return bilinear(x, y);
}

Instance realize(const DecClass& x) {
  std::vector<Instance> parts;
  for (const auto& [f, t] : x.terms()) {
    for (std::uint64_t k = 0; k < t.coefficient; ++k) parts.push_back(t.representative);
  }
  return coproduct(std::span<const Instance>(parts), x.schema()).sum;
}

RingElement to_ring(const DecClass& x) {
  RingElement out(x.schema());
  for (const auto& [f, t] : x.terms()) out.accumulate(f, t.representative, to_signed(t.coefficient));
  return out;
}

std::optional<DecClass> to_dec(const RingElement& r) {
  DecClass out(r.schema());
  for (const auto& [f, t] : r.terms()) {
    if (t.coefficient < 0) return std::nullopt;
    out.accumulate(f, t.representative, static_cast<std::uint64_t>(t.coefficient));
  }
  return out;
}

RingElement ring_zero(const SchemaRef& schema) { return RingElement(schema); }

RingElement ring_one(const SchemaRef& schema) { return to_ring(one(schema)); }

RingElement ring_add(const RingElement& x, const RingElement& y) {
  require_same(x, y, "ring_add");
  RingElement out = x;
  for (const auto& [f, t] : y.terms()) out.accumulate(f, t.representative, t.coefficient);
  return out;
}

RingElement ring_neg(const RingElement& x) { return ring_scale(x, -1); }

RingElement ring_sub(const RingElement& x, const RingElement& y) {
  return ring_add(x, ring_neg(y));
}

RingElement ring_scale(const RingElement& x, std::int64_t factor) {
  RingElement out(x.schema());
  for (const auto& [f, t] : x.terms()) {
    out.accumulate(f, t.representative, checked_mul(t.coefficient, factor));
  }
  return out;
}

RingElement ring_mul(const RingElement& x, const RingElement& y) {
  require_same(x, y, "ring_mul");
  return bilinear(x, y);
}

TestBasis build_basis(const SchemaRef& schema, const Bounds& bounds) {
  TestBasis basis{schema, {}};
  for (auto& entry : enumerate_instances(schema, bounds)) {
    if (is_connected(entry.representative)) basis.members.push_back(std::move(entry));
  }
  return basis;
}

Profile profile(const DecClass& x, const TestBasis& basis) {
  require_same_schema(x.schema(), basis.schema, "profile");
  Profile out{std::vector<std::int64_t>(basis.size(), 0)};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::int64_t v = 0;
    for (const auto& [f, t] : x.terms()) {
      const std::int64_t h = to_signed(count_homs(basis.members[i].representative, t.representative));
      v = checked_add(v, checked_mul(h, to_signed(t.coefficient)));
    }
    out.values[i] = v;
  }
  return out;
}

Profile profile(const Instance& instance, const TestBasis& basis) {
  require_same_schema(instance.schema_ref(), basis.schema, "profile");
  Profile out{std::vector<std::int64_t>(basis.size(), 0)};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.values[i] = to_signed(count_homs(basis.members[i].representative, instance));
  }
  return out;
}

Profile ring_profile(const RingElement& r, const TestBasis& basis) {
  require_same_schema(r.schema(), basis.schema, "ring_profile");
  Profile out{std::vector<std::int64_t>(basis.size(), 0)};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::int64_t v = 0;
    for (const auto& [f, t] : r.terms()) {
      const std::int64_t h = to_signed(count_homs(basis.members[i].representative, t.representative));
      v = checked_add(v, checked_mul(h, t.coefficient));
    }
    out.values[i] = v;
  }
  return out;
}

MarksTable table_of_marks(const SchemaRef& schema, const Bounds& bounds) {
  MarksTable out;
  const Schema& s = *schema;
  for (auto& entry : enumerate_instances(schema, bounds)) {
    const Instance& g = entry.representative;
    for (std::size_t a = 0; a < s.arrow_count(); ++a) {
      auto table = g.action(a);
      std::vector<bool> hit(g.size(s.target(a)), false);
      for (Elem y : table) hit[y] = true;
      if (table.size() != hit.size() || std::find(hit.begin(), hit.end(), false) != hit.end()) {
        throw DomainError("table_of_marks: arrow '" + s.arrows()[a].name +
                          "' acts non-bijectively; '" + s.name() + "' does not present a group");
      }
    }
    if (is_connected(g)) out.transitive.push_back(std::move(entry));
  }
  std::stable_sort(out.transitive.begin(), out.transitive.end(),
                   [](const UniverseEntry& a, const UniverseEntry& b) {
                     const std::size_t na = a.representative.total_size();
                     const std::size_t nb = b.representative.total_size();
                     if (na != nb) return na > nb;
                     return a.form < b.form;
                   });
  const std::size_t k = out.transitive.size();
  out.marks.assign(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      out.marks[i][j] = count_homs(out.transitive[j].representative, out.transitive[i].representative);
    }
  }
  return out;
}

}  // namespace decat
