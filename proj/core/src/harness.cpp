#include "decat/harness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "decat/hom_search.hpp"
#include "decat/parallel.hpp"
#include "decat/rng.hpp"

namespace decat {

namespace {

using Objects = std::vector<Instance>;
using Maps = std::vector<Morphism>;
using Outcome = std::optional<std::string>;

// Hom-set enumerations inside a single check stop here; the check is then
// treated as not applicable.
constexpr std::uint64_t kEnumerationLimit = 20000;

struct Context {
  const SuiteOptions& options;
  std::uint64_t seed = 0;
  const TestBasis* basis = nullptr;
};

using CheckFn = Outcome (*)(const Objects&, const Maps&, const Context&);

struct MapSpec {
  std::string name;
  std::size_t source;
  std::size_t target;
};

struct Property {
  std::vector<std::string> objects;
  std::vector<MapSpec> maps;
  CheckFn check;
  bool finding = false;
  bool needs_basis = false;
};

std::string first_violation(const ValidationResult& v) {
  const Violation& x = v.violations.front();
  return x.kind + " (" + x.message + ")";
}

std::string sizes(const Instance& x) {
  std::string out = "(";
  for (std::size_t d = 0; d < x.schema().node_count(); ++d) {
    if (d) out += ",";
    out += x.schema().nodes()[d] + "=" + std::to_string(x.size(d));
  }
  return out + ")";
}

// g after a raw component table.
ElemTable compose_table(const Morphism& g, const ElemTable& f) {
  ElemTable out(f.size());
  for (std::size_t d = 0; d < f.size(); ++d) {
    out[d].reserve(f[d].size());
    for (Elem x : f[d]) out[d].push_back(g(d, x));
  }
  return out;
}

// The same map with its target swapped for an instance carrying the same ids.
Morphism retarget(const Morphism& m, const Instance& target) {
  ElemTable comp = m.components();
  for (std::size_t d = 0; d < comp.size(); ++d) {
    for (Elem& x : comp[d]) {
      const Elem y = target.find(d, m.target().id(d, x));
      if (y == kNoElem) {
        throw DomainError("element '" + m.target().id(d, x) + "' missing from the rebuilt target");
      }
      x = y;
    }
  }
  return Morphism(m.source(), target, std::move(comp));
}

// h = m . k for the returned k, given a mono m whose image contains h's.
Morphism factor(const Morphism& h, const Morphism& m) {
  ElemTable comp(h.components().size());
  for (std::size_t d = 0; d < comp.size(); ++d) {
    std::vector<Elem> back(m.target().size(d), kNoElem);
    for (Elem x = 0; x < m.source().size(d); ++x) back[m(d, x)] = x;
    for (Elem x : h.components()[d]) {
      if (back[x] == kNoElem) throw DomainError("map does not factor through the summand");
      comp[d].push_back(back[x]);
    }
  }
  return Morphism(h.source(), m.source(), std::move(comp));
}

std::optional<std::uint64_t> brute_count(const Instance& x, const Instance& y) {
  std::uint64_t n = 0;
  bool over = false;
  for_each_hom(x, y, [&](const ElemTable&) {
    if (++n > kEnumerationLimit) {
      over = true;
      return false;
    }
    return true;
  });
  if (over) return std::nullopt;
  return n;
}

std::optional<std::vector<ElemTable>> bounded_homs(const Instance& x, const Instance& y) {
  std::vector<ElemTable> out;
  bool over = false;
  for_each_hom(x, y, [&](const ElemTable& t) {
    if (out.size() == kEnumerationLimit) {
      over = true;
      return false;
    }
    out.push_back(t);
    return true;
  });
  if (over) return std::nullopt;
  return out;
}

Morphism from_initial(const Instance& target) {
  const SchemaRef& s = target.schema_ref();
  return Morphism(initial(s), target, ElemTable(s->node_count()));
}

// Whether (p, q) exhibits Q as a pullback of (f, g): the square commutes and
// the comparison map into the constructed pullback is invertible.
Outcome pullback_square(const Morphism& p, const Morphism& q, const Morphism& f,
                        const Morphism& g) {
  if (compose(f, p) != compose(g, q)) return "square does not commute";
  PullbackResult pb = pullback(f, g);
  Morphism u = mediate(pb, p, q);
  if (!is_iso(u)) {
    return "comparison map " + sizes(u.source()) + " -> pullback " + sizes(pb.apex) +
           " is not invertible";
  }
  return std::nullopt;
}

Instance bracket(const std::vector<Instance>& parts, std::size_t lo, std::size_t hi, Rng& rng,
                 const CoproductFn& cp, const SchemaRef& schema) {
  if (lo == hi) return initial(schema);
  if (hi - lo == 1) return parts[lo];
  const std::size_t k = lo + 1 + rng.below(hi - lo - 1);
  return cp(bracket(parts, lo, k, rng, cp, schema), bracket(parts, k, hi, rng, cp, schema)).sum;
}

std::string profile_text(const Profile& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p.values[i]);
  }
  return out + "]";
}

// Mark-table order: decreasing size, ties by canonical form.
bool marks_before(const Instance& a, const CanonicalForm& fa, const Instance& b,
                  const CanonicalForm& fb) {
  if (a.total_size() != b.total_size()) return a.total_size() > b.total_size();
  return fa < fb;
}

RingElement signed_class(const Instance& positive, const Instance& negative) {
  return ring_sub(to_ring(class_of(positive)), to_ring(class_of(negative)));
}

// ---- checks -------------------------------------------------------------

Outcome check_coproduct_valid(const Objects& o, const Maps&, const Context& cx) {
  const Instance& a = o[0];
  const Instance& b = o[1];
  CoproductResult s = cx.options.coproduct(a, b);
  if (auto v = validate_instance(s.sum); !v) return "sum is not an instance: " + first_violation(v);
  for (std::size_t d = 0; d < a.schema().node_count(); ++d) {
    if (s.sum.size(d) != a.size(d) + b.size(d)) {
      return "sum has " + std::to_string(s.sum.size(d)) + " elements at " + a.schema().nodes()[d] +
             ", expected " + std::to_string(a.size(d) + b.size(d));
    }
  }
  if (auto v = validate_morphism(s.left); !v) return "left coprojection: " + first_violation(v);
  if (auto v = validate_morphism(s.right); !v) return "right coprojection: " + first_violation(v);
  return std::nullopt;
}

Outcome check_coprojection_pullbacks(const Objects& o, const Maps&, const Context& cx) {
  const Instance& a = o[0];
  const Instance& b = o[1];
  CoproductResult s = cx.options.coproduct(a, b);
  if (auto r = pullback_square(identity(a), identity(a), s.left, s.left)) {
    return "left coprojection is not mono: " + *r;
  }
  if (auto r = pullback_square(identity(b), identity(b), s.right, s.right)) {
    return "right coprojection is not mono: " + *r;
  }
  if (auto r = pullback_square(from_initial(a), from_initial(b), s.left, s.right)) {
    return "coprojections do not meet in the initial instance: " + *r;
  }
  return std::nullopt;
}

Outcome check_strict(const Objects& o, const Maps&, const Context&) {
  const Instance& x = o[0];
  const std::uint64_t n = count_homs(x, initial(x.schema_ref()));
  if (x.empty() && n != 1) return "initial instance has " + std::to_string(n) + " maps into itself";
  if (!x.empty() && n != 0) return "non-initial instance maps into the initial instance";
  return std::nullopt;
}

Outcome check_pullback_decomposition(const Objects& o, const Maps& m, const Context& cx) {
  const Instance& a = o[0];
  CoproductResult s = cx.options.coproduct(o[1], o[2]);
  Morphism f = retarget(m[0], s.sum);
  if (auto v = validate_morphism(f); !v) return "f is not natural: " + first_violation(v);

  SubInstance ax = preimage(f, image(s.left));
  SubInstance ay = preimage(f, image(s.right));
  Morphism fx = factor(compose(f, ax.inclusion), s.left);
  Morphism fy = factor(compose(f, ay.inclusion), s.right);
  if (auto r = pullback_square(ax.inclusion, fx, f, s.left)) return "left square: " + *r;
  if (auto r = pullback_square(ay.inclusion, fy, f, s.right)) return "right square: " + *r;

  CoproductResult top = cx.options.coproduct(ax.instance, ay.instance);
  Morphism c = copair(top, ax.inclusion, ay.inclusion);
  if (!is_iso(c)) {
    return "A" + sizes(a) + " is not the sum of the preimages " + sizes(ax.instance) + " and " +
           sizes(ay.instance);
  }
  return std::nullopt;
}

// Cones (p: W -> A, q: W -> X) over f and the left coprojection correspond
// one to one with maps W -> pullback.
Outcome check_pullback_universal(const Objects& o, const Maps& m, const Context& cx) {
  const Instance& a = o[0];
  const Instance& x = o[1];
  const Instance& w = o[3];
  CoproductResult s = cx.options.coproduct(x, o[2]);
  Morphism f = retarget(m[0], s.sum);
  PullbackResult pb = pullback(f, s.left);

  auto into_apex = bounded_homs(w, pb.apex);
  auto into_a = bounded_homs(w, a);
  auto into_x = bounded_homs(w, x);
  if (!into_apex || !into_a || !into_x) return std::nullopt;

  std::set<std::pair<ElemTable, ElemTable>> projected;
  for (const ElemTable& u : *into_apex) {
    if (!projected.emplace(compose_table(pb.first, u), compose_table(pb.second, u)).second) {
      return "two maps into the pullback have the same projections";
    }
  }
  std::map<ElemTable, std::uint64_t> by_image;
  for (const ElemTable& q : *into_x) ++by_image[compose_table(s.left, q)];
  std::uint64_t cones = 0;
  for (const ElemTable& p : *into_a) {
    auto it = by_image.find(compose_table(f, p));
    if (it != by_image.end()) cones += it->second;
  }
  if (cones != into_apex->size()) {
    return std::to_string(cones) + " commuting cones but " + std::to_string(into_apex->size()) +
           " maps into the pullback";
  }
  return std::nullopt;
}

Outcome check_disjoint_images(const Objects& o, const Maps&, const Context& cx) {
  const Instance& x = o[0];
  CoproductResult s = cx.options.coproduct(o[1], o[2]);
  auto left = bounded_homs(x, o[1]);
  auto right = bounded_homs(x, o[2]);
  if (!left || !right) return std::nullopt;
  std::set<ElemTable> seen;
  for (const ElemTable& f : *left) seen.insert(compose_table(s.left, f));
  for (const ElemTable& g : *right) {
    if (seen.count(compose_table(s.right, g)) && !x.empty()) {
      return "a map into the left summand equals a map into the right summand";
    }
  }
  return std::nullopt;
}

Outcome check_dec_witness(const Objects& o, const Maps&, const Context&) {
  const Instance& x = o[0];
  Decomposition dec = connected_components(x);
  if (x.empty() != dec.components.empty()) {
    return "component list is empty exactly when the instance is not";
  }
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    if (!is_connected(dec.components[i])) return "component " + std::to_string(i) + " is not connected";
    if (canonical_form(dec.components[i]) != dec.forms[i]) {
      return "stored form of component " + std::to_string(i) + " is stale";
    }
    if (i && dec.forms[i] < dec.forms[i - 1]) return "components are not in canonical order";
  }
  if (auto v = validate_morphism(dec.witness); !v) return "witness: " + first_violation(v);
  if (dec.witness.target() != x) return "witness does not land in the instance";
  if (!is_iso(dec.witness)) return "witness is not an isomorphism";
  return std::nullopt;
}

Outcome check_hom_bound(const Objects& o, const Maps&, const Context& cx) {
  const Instance& x = o[0];
  CoproductResult s = cx.options.coproduct(x, x);
  auto total = brute_count(x, s.sum);
  if (!total) return std::nullopt;
  Decomposition dec = connected_components(x);
  std::uint64_t prod = 1;
  for (const Instance& c : dec.components) prod *= count_homs(c, s.sum);
  if (*total != prod) {
    return "#Hom(X, X+X) = " + std::to_string(*total) + " but the product over components is " +
           std::to_string(prod);
  }
  const std::size_t n = dec.components.size();
  if (n < 64 && *total < (std::uint64_t{1} << n)) {
    return "#Hom(X, X+X) = " + std::to_string(*total) + " < 2^" + std::to_string(n);
  }
  return std::nullopt;
}

Outcome check_dec_unique(const Objects& o, const Maps&, const Context& cx) {
  const Instance& x = o[0];
  Rng rng(cx.seed);
  Relabeling r = relabel(x, rng.next());
  std::vector<Instance> parts = connected_components(r.instance).components;
  rng.shuffle(parts);
  Instance rebuilt = bracket(parts, 0, parts.size(), rng, cx.options.coproduct, x.schema_ref());

  std::vector<CanonicalForm> expected = connected_components(x).forms;
  std::vector<CanonicalForm> got = connected_components(rebuilt).forms;
  if (got != expected) {
    return "relabeled and re-bracketed copy has " + std::to_string(got.size()) +
           " components with different forms";
  }
  if (canonical_form(r.instance) != canonical_form(x)) return "relabeling changed the canonical form";
  if (canonical_form(rebuilt) != canonical_form(x)) return "re-bracketing changed the canonical form";
  return std::nullopt;
}

Outcome check_cancellation(const Objects& o, const Maps&, const Context& cx) {
  const Instance& c = o[0];
  const CanonicalForm lhs = canonical_form(cx.options.coproduct(c, o[1]).sum);
  const CanonicalForm rhs = canonical_form(cx.options.coproduct(c, o[2]).sum);
  if (lhs == rhs && canonical_form(o[1]) != canonical_form(o[2])) {
    return "C+X and C+X2 are isomorphic but X and X2 are not";
  }
  return std::nullopt;
}

// Hom(C, A) + Hom(C, B) -> Hom(C, A+B) through the configured coproduct.
std::optional<bool> bijective(const Instance& c, const Instance& a, const Instance& b,
                              const CoproductFn& cp) {
  CoproductResult s = cp(a, b);
  auto left = bounded_homs(c, a);
  auto right = bounded_homs(c, b);
  auto total = brute_count(c, s.sum);
  if (!left || !right || !total) return std::nullopt;
  std::set<ElemTable> images;
  for (const ElemTable& f : *left) images.insert(compose_table(s.left, f));
  for (const ElemTable& g : *right) images.insert(compose_table(s.right, g));
  return images.size() == left->size() + right->size() && images.size() == *total;
}

Outcome check_conn_bijection(const Objects& o, const Maps&, const Context& cx) {
  if (!is_connected(o[0])) return std::nullopt;
  auto b = bijective(o[0], o[1], o[2], cx.options.coproduct);
  if (b && !*b) return "connected, but Hom(F, A) + Hom(F, B) -> Hom(F, A+B) is not a bijection";
  return std::nullopt;
}

Outcome check_conn_self(const Objects& o, const Maps&, const Context& cx) {
  const Instance& f = o[0];
  const bool connected = is_connected(f);
  auto b = bijective(f, f, f, cx.options.coproduct);
  if (!b) return std::nullopt;
  if (connected && !*b) return "connected, but the (F, F) coproduct map is not a bijection";
  if (!connected && *b) return "not connected, yet the (F, F) coproduct map is a bijection";
  return std::nullopt;
}

Outcome check_dichotomy(const Objects& o, const Maps&, const Context& cx) {
  const Instance& f = o[0];
  if (f.empty() || is_connected(f)) return std::nullopt;
  std::vector<Instance> parts = connected_components(f).components;
  Instance rest = parts[1];
  for (std::size_t i = 2; i < parts.size(); ++i) rest = cx.options.coproduct(rest, parts[i]).sum;
  if (parts[0].empty() || rest.empty()) return "a summand of the split is initial";
  if (!find_iso(cx.options.coproduct(parts[0], rest).sum, f)) {
    return "not isomorphic to the sum of its first component and the rest";
  }
  return std::nullopt;
}

std::string count_mismatch(std::string_view what, std::uint64_t lhs, std::uint64_t rhs) {
  return std::string(what) + ": " + std::to_string(lhs) + " != " + std::to_string(rhs);
}

Outcome check_additive(const Objects& o, const Maps&, const Context& cx) {
  const Instance& c = o[0];
  const std::uint64_t lhs = count_homs(c, cx.options.coproduct(o[1], o[2]).sum);
  const std::uint64_t rhs = count_homs(c, o[1]) + count_homs(c, o[2]);
  if (lhs != rhs) return count_mismatch("#Hom(C, A+B) vs #Hom(C, A) + #Hom(C, B)", lhs, rhs);
  return std::nullopt;
}

Outcome check_multiplicative(const Objects& o, const Maps&, const Context&) {
  const Instance& d = o[0];
  const std::uint64_t lhs = count_homs(d, product(o[1], o[2]).product);
  const std::uint64_t rhs = count_homs(d, o[1]) * count_homs(d, o[2]);
  if (lhs != rhs) return count_mismatch("#Hom(D, AxB) vs #Hom(D, A) * #Hom(D, B)", lhs, rhs);
  return std::nullopt;
}

Outcome check_coproduct_source(const Objects& o, const Maps&, const Context& cx) {
  const Instance& y = o[2];
  auto lhs = brute_count(cx.options.coproduct(o[0], o[1]).sum, y);
  auto f = brute_count(o[0], y);
  auto g = brute_count(o[1], y);
  if (!lhs || !f || !g) return std::nullopt;
  if (*lhs != *f * *g) return count_mismatch("#Hom(F+G, Y) vs #Hom(F, Y) * #Hom(G, Y)", *lhs, *f * *g);
  return std::nullopt;
}

Outcome check_distributive(const Objects& o, const Maps&, const Context& cx) {
  const Instance& a = o[0];
  const auto& cp = cx.options.coproduct;
  const Instance lhs = product(a, cp(o[1], o[2]).sum).product;
  const Instance rhs = cp(product(a, o[1]).product, product(a, o[2]).product).sum;
  if (class_of(lhs) != class_of(rhs)) return "Ax(B+C) and AxB + AxC have different classes";
  return std::nullopt;
}

Outcome check_mul_consistency(const Objects& o, const Maps&, const Context&) {
  if (class_of(product(o[0], o[1]).product) != mul(class_of(o[0]), class_of(o[1]))) {
    return "class of FxG differs from the product of the classes";
  }
  return std::nullopt;
}

Outcome check_semiring(const Objects& o, const Maps&, const Context& cx) {
  const SchemaRef& s = o[0].schema_ref();
  const DecClass x = class_of(o[0]), y = class_of(o[1]), z = class_of(o[2]);
  if (add(x, y) != class_of(cx.options.coproduct(o[0], o[1]).sum)) {
    return "class of A+B differs from the sum of the classes";
  }
  if (add(x, y) != add(y, x)) return "addition is not commutative";
  if (add(add(x, y), z) != add(x, add(y, z))) return "addition is not associative";
  if (add(x, zero(s)) != x) return "zero is not additive identity";
  if (mul(x, y) != mul(y, x)) return "multiplication is not commutative";
  if (mul(mul(x, y), z) != mul(x, mul(y, z))) return "multiplication is not associative";
  if (mul(x, one(s)) != x) return "one is not multiplicative identity";
  if (mul(x, zero(s)) != zero(s)) return "zero does not annihilate";
  if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) return "multiplication does not distribute";
  return std::nullopt;
}

Outcome check_profile_hom(const Objects& o, const Maps&, const Context& cx) {
  const TestBasis& basis = *cx.basis;
  const DecClass x = class_of(o[0]), y = class_of(o[1]);
  const Profile px = profile(x, basis), py = profile(y, basis);
  if (px != profile(o[0], basis)) return "class profile differs from direct hom counts";
  Profile sum = px, prod = px;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sum.values[i] += py.values[i];
    prod.values[i] *= py.values[i];
  }
  if (profile(add(x, y), basis) != sum) return "profile of a sum is not the sum of profiles";
  if (profile(mul(x, y), basis) != prod) return "profile of a product is not the entrywise product";
  return std::nullopt;
}

Outcome check_grothendieck(const Objects& o, const Maps&, const Context& cx) {
  const DecClass x = class_of(o[0]), y = class_of(o[1]);
  const RingElement rx = to_ring(x), ry = to_ring(y);
  if (to_dec(rx) != x) return "to_dec does not invert to_ring";
  if (ring_sub(ring_add(rx, ry), ry) != rx) return "(x + y) - y != x";
  if (!ring_add(rx, ring_neg(rx)).empty()) return "x + (-x) != 0";
  if (ring_mul(rx, ry) != to_ring(mul(x, y))) return "to_ring does not preserve products";
  if (cx.basis && ring_profile(rx, *cx.basis) != profile(x, *cx.basis)) {
    return "ring profile disagrees with the class profile";
  }
  return std::nullopt;
}

Outcome check_separation(const Objects& o, const Maps&, const Context& cx) {
  const Profile pa = profile(o[0], *cx.basis);
  if (pa == profile(o[1], *cx.basis) && canonical_form(o[0]) != canonical_form(o[1])) {
    return "non-isomorphic instances share the profile " + profile_text(pa) + " over " +
           std::to_string(cx.basis->size()) + " test objects";
  }
  return std::nullopt;
}

Outcome check_profile_invariance(const Objects& o, const Maps&, const Context& cx) {
  if (profile(relabel(o[0], cx.seed).instance, *cx.basis) != profile(o[0], *cx.basis)) {
    return "relabeling changed the profile";
  }
  return std::nullopt;
}

Outcome check_triangular(const Objects& o, const Maps&, const Context&) {
  const Instance& row = o[0];
  const Instance& col = o[1];
  const CanonicalForm fr = canonical_form(row), fc = canonical_form(col);
  const std::uint64_t mark = count_homs(col, row);
  if (fr == fc) {
    if (mark == 0) return "zero on the diagonal";
  } else if (marks_before(row, fr, col, fc) && mark != 0) {
    return "nonzero mark " + std::to_string(mark) + " above the diagonal";
  }
  return std::nullopt;
}

Outcome check_marks_injective(const Objects& o, const Maps&, const Context& cx) {
  const RingElement x = signed_class(o[0], o[1]);
  const RingElement y = signed_class(o[2], o[3]);
  if (x != y && ring_profile(x, *cx.basis) == ring_profile(y, *cx.basis)) {
    return "distinct ring elements share the marks " + profile_text(ring_profile(x, *cx.basis));
  }
  return std::nullopt;
}

const std::map<std::string, Property, std::less<>>& properties() {
  static const std::map<std::string, Property, std::less<>> table = {
      {"ext.coproduct-valid", {{"A", "B"}, {}, check_coproduct_valid}},
      {"ext.coprojection-pullbacks", {{"A", "B"}, {}, check_coprojection_pullbacks}},
      {"ext.strict-initial", {{"X"}, {}, check_strict}},
      {"ext.pullback-decomposition",
       {{"A", "X", "Y", "XY"}, {{"f", 0, 3}}, check_pullback_decomposition}},
      {"ext.pullback-universal",
       {{"A", "X", "Y", "W", "XY"}, {{"f", 0, 4}}, check_pullback_universal}},
      {"ext.disjoint-images", {{"X", "A", "B"}, {}, check_disjoint_images}},
      {"dec.witness", {{"X"}, {}, check_dec_witness}},
      {"dec.hom-bound", {{"X"}, {}, check_hom_bound}},
      {"dec.unique", {{"X"}, {}, check_dec_unique}},
      {"dec.cancellation", {{"C", "X", "X2"}, {}, check_cancellation}},
      {"conn.bijection", {{"F", "A", "B"}, {}, check_conn_bijection}},
      {"conn.self-pair", {{"F"}, {}, check_conn_self}},
      {"conn.dichotomy", {{"F"}, {}, check_dichotomy}},
      {"hom.additive", {{"C", "A", "B"}, {}, check_additive}},
      {"hom.multiplicative", {{"D", "A", "B"}, {}, check_multiplicative}},
      {"hom.coproduct-source", {{"F", "G", "Y"}, {}, check_coproduct_source}},
      {"hom.distributive", {{"A", "B", "C"}, {}, check_distributive}},
      {"ring.mul-consistency", {{"F", "G"}, {}, check_mul_consistency}},
      {"ring.semiring-laws", {{"A", "B", "C"}, {}, check_semiring}},
      {"ring.profile-homomorphism", {{"A", "B"}, {}, check_profile_hom, false, true}},
      {"ring.grothendieck", {{"A", "B"}, {}, check_grothendieck, false, true}},
      {"comb.separation", {{"A", "B"}, {}, check_separation, true, true}},
      {"comb.invariance", {{"A"}, {}, check_profile_invariance, false, true}},
      {"burnside.triangular", {{"Row", "Col"}, {}, check_triangular}},
      {"burnside.injective", {{"P1", "N1", "P2", "N2"}, {}, check_marks_injective, false, true}},
  };
  return table;
}

const Property& property(std::string_view id) {
  auto it = properties().find(id);
  if (it == properties().end()) throw std::invalid_argument("unknown property '" + std::string(id) + "'");
  return it->second;
}

// Results of one unit of parallel work.
struct Slot {
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::size_t found = 0;
  std::vector<Witness> failures;
  std::vector<Witness> findings;
};

class SuiteRun {
 public:
  SuiteRun(std::string suite, const SchemaRef& schema, const Bounds& bounds,
           const SuiteOptions& options)
      : schema_(schema), bounds_text_(bounds.to_string(*schema)), options_(options),
        start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(suite);
    report_.schema = schema->name();
    report_.bounds = bounds_text_;
    report_.seed = options.seed;
  }

  const SuiteOptions& options() const { return options_; }

  void set_basis(const TestBasis* basis) { basis_ = basis; }

  // Evaluates a property and records a witness when it does not hold.
  void run(Slot& slot, std::string_view id, Objects objects, Maps maps = {},
           std::uint64_t seed = 0) const {
    const Property& p = property(id);
    ++slot.checks;
    Outcome out;
    try {
      out = p.check(objects, maps, Context{options_, seed, basis_});
    } catch (const std::exception& e) {
      out = std::string("threw: ") + e.what();
    }
    if (!out) return;
    (p.finding ? slot.found : slot.failed) += 1;
    std::vector<Witness>& dest = p.finding ? slot.findings : slot.failures;
    const auto same = std::count_if(dest.begin(), dest.end(),
                                    [&](const Witness& w) { return w.property == id; });
    if (static_cast<std::size_t>(same) >= kWitnessesPerProperty) return;
    Witness w;
    w.property = std::string(id);
    w.detail = *out;
    w.seed = seed;
    if (p.needs_basis) w.bounds = bounds_text_;
    for (std::size_t i = 0; i < objects.size(); ++i) w.objects.push_back({p.objects[i], objects[i]});
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const MapSpec& ms = p.maps[i];
      w.maps.push_back({ms.name, p.objects[ms.source], p.objects[ms.target], maps[i]});
    }
    dest.push_back(std::move(w));
  }

  // A failure of the harness itself (bad configuration, sampling error).
  void fail(Slot& slot, std::string id, std::string detail) const {
    ++slot.checks;
    ++slot.failed;
    Witness w;
    w.property = std::move(id);
    w.detail = std::move(detail);
    slot.failures.push_back(std::move(w));
  }

  void merge(std::vector<Slot>& slots) {
    for (Slot& s : slots) {
      report_.checks += s.checks;
      report_.failed_checks += s.failed;
      report_.finding_checks += s.found;
      keep(report_.failures, s.failures);
      keep(report_.findings, s.findings);
    }
  }

  VerificationReport finish(std::size_t universe, std::size_t trials) {
    report_.universe_size = universe;
    report_.trials = trials;
    report_.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  static void keep(std::vector<Witness>& dest, std::vector<Witness>& src) {
    for (Witness& w : src) {
      const auto same = std::count_if(dest.begin(), dest.end(),
                                      [&](const Witness& x) { return x.property == w.property; });
      if (static_cast<std::size_t>(same) < kWitnessesPerProperty) dest.push_back(std::move(w));
    }
  }

  SchemaRef schema_;
  std::string bounds_text_;
  const SuiteOptions& options_;
  const TestBasis* basis_ = nullptr;
  std::chrono::steady_clock::time_point start_;
  VerificationReport report_;
};

struct Universe {
  std::vector<Instance> all;
  std::vector<CanonicalForm> forms;
  std::vector<Instance> connected;
};

Universe load_universe(const SchemaRef& schema, const Bounds& bounds) {
  Universe u;
  for (auto& e : enumerate_instances(schema, bounds)) {
    if (is_connected(e.representative)) u.connected.push_back(e.representative);
    u.all.push_back(std::move(e.representative));
    u.forms.push_back(std::move(e.form));
  }
  return u;
}

TestBasis basis_of(const SchemaRef& schema, const Universe& u) {
  TestBasis b{schema, {}};
  for (std::size_t i = 0; i < u.all.size(); ++i) {
    if (is_connected(u.all[i])) b.members.push_back({u.forms[i], u.all[i]});
  }
  return b;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Finding: return "FINDING";
    case Status::Fail: return "FAIL";
  }
  return "?";
}

Status VerificationReport::status() const {
  if (failed_checks > 0) return Status::Fail;
  if (finding_checks > 0) return Status::Finding;
  return Status::Pass;
}

std::string Witness::document() const {
  std::string out;
  if (!objects.empty()) out += print_schema(objects.front().instance.schema());
  for (const auto& o : objects) out += print_instance(o.instance, o.name);
  for (const auto& m : maps) out += print_morphism(m.morphism, m.name, m.source, m.target);
  return out;
}

CoproductResult corrupted_coproduct(const Instance& f, const Instance& g) {
  const SchemaRef& s = f.schema_ref();
  require_same_schema(s, g.schema_ref(), "corrupted_coproduct");
  const std::size_t nodes = s->node_count();
  std::vector<std::vector<std::string>> ids(nodes);
  for (std::size_t d = 0; d < nodes; ++d) {
    std::set<std::string> merged;
    for (const auto& x : f.carrier(d)) merged.insert("0:" + x);
    for (const auto& y : g.carrier(d)) merged.insert("0:" + y);
    ids[d].assign(merged.begin(), merged.end());
  }
  auto pos = [&](std::size_t d, const std::string& id) {
    return static_cast<Elem>(std::lower_bound(ids[d].begin(), ids[d].end(), "0:" + id) - ids[d].begin());
  };
  // Shared ids take the left summand's action.
  ElemTable actions(s->arrow_count());
  for (std::size_t a = 0; a < s->arrow_count(); ++a) {
    const std::size_t src = s->source(a), tgt = s->target(a);
    actions[a].resize(ids[src].size());
    for (Elem y = 0; y < g.size(src); ++y) {
      actions[a][pos(src, g.id(src, y))] = pos(tgt, g.id(tgt, g.apply(a, y)));
    }
    for (Elem x = 0; x < f.size(src); ++x) {
      actions[a][pos(src, f.id(src, x))] = pos(tgt, f.id(tgt, f.apply(a, x)));
    }
  }
  Instance sum(s, ids, std::move(actions));
  ElemTable left(nodes), right(nodes);
  for (std::size_t d = 0; d < nodes; ++d) {
    for (Elem x = 0; x < f.size(d); ++x) left[d].push_back(pos(d, f.id(d, x)));
    for (Elem y = 0; y < g.size(d); ++y) right[d].push_back(pos(d, g.id(d, y)));
  }
  return {sum, Morphism(f, sum, std::move(left)), Morphism(g, sum, std::move(right))};
}

VerificationReport suite_extensive(const SchemaRef& schema, const Bounds& bounds,
                                   const SuiteOptions& options) {
  SuiteRun run("extensive", schema, bounds, options);
  const Universe u = load_universe(schema, bounds);
  if (u.all.empty()) return run.finish(0, 0);

  std::vector<Slot> exhaustive(u.all.size());
  parallel_for(u.all.size(), [&](std::size_t i) { run.run(exhaustive[i], "ext.strict-initial", {u.all[i]}); });
  run.merge(exhaustive);

  std::vector<Slot> slots(options.trials);
  parallel_for(options.trials, [&](std::size_t t) {
    Slot& slot = slots[t];
    Rng rng = Rng::stream(options.seed, "extensive", t);
    const Instance& a = rng.pick(u.all);
    const Instance& b = rng.pick(u.all);
    run.run(slot, "ext.coproduct-valid", {a, b});
    run.run(slot, "ext.coprojection-pullbacks", {a, b});
    run.run(slot, "ext.disjoint-images", {rng.pick(u.all), rng.pick(u.all), rng.pick(u.all)});

    const Instance& src = rng.pick(u.all);
    const Instance& x = rng.pick(u.all);
    const Instance& y = rng.pick(u.all);
    const Instance& w = rng.pick(u.all);
    try {
      CoproductResult s = options.coproduct(x, y);
      std::optional<Morphism> f = sample_hom(src, s.sum, rng);
      if (!f) return;
      run.run(slot, "ext.pullback-decomposition", {src, x, y, s.sum}, {*f});
      run.run(slot, "ext.pullback-universal", {src, x, y, w, s.sum}, {*f});
    } catch (const std::exception& e) {
      run.fail(slot, "ext.sampling", std::string("sampling a map into X+Y threw: ") + e.what());
    }
  });
  run.merge(slots);
  return run.finish(u.all.size(), options.trials);
}

VerificationReport suite_decomposition(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options) {
  SuiteRun run("decomposition", schema, bounds, options);
  const Universe u = load_universe(schema, bounds);

  std::vector<Slot> slots(u.all.size());
  parallel_for(u.all.size(), [&](std::size_t i) {
    const Instance& x = u.all[i];
    run.run(slots[i], "dec.witness", {x});
    run.run(slots[i], "dec.hom-bound", {x});
    Rng rng = Rng::stream(options.seed, "decomposition", i);
    for (std::size_t t = 0; t < options.trials; ++t) run.run(slots[i], "dec.unique", {x}, {}, rng.next());
  });
  run.merge(slots);

  // Cancellation: within each connected C, equal forms of C+X force equal X.
  std::vector<Slot> cancel(u.connected.size());
  parallel_for(u.connected.size(), [&](std::size_t c) {
    const Instance& cc = u.connected[c];
    std::map<CanonicalForm, std::size_t> seen;
    for (std::size_t i = 0; i < u.all.size(); ++i) {
      ++cancel[c].checks;
      CanonicalForm f;
      try {
        f = canonical_form(options.coproduct(cc, u.all[i]).sum);
      } catch (const std::exception& e) {
        run.fail(cancel[c], "dec.cancellation", std::string("C+X threw: ") + e.what());
        continue;
      }
      auto [it, fresh] = seen.emplace(std::move(f), i);
      if (!fresh) {
        --cancel[c].checks;
        run.run(cancel[c], "dec.cancellation", {cc, u.all[it->second], u.all[i]});
      }
    }
  });
  run.merge(cancel);
  return run.finish(u.all.size(), options.trials);
}

VerificationReport suite_connectedness(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options) {
  SuiteRun run("connectedness", schema, bounds, options);
  const Universe u = load_universe(schema, bounds);

  std::vector<Slot> slots(u.all.size());
  parallel_for(u.all.size(), [&](std::size_t i) {
    const Instance& f = u.all[i];
    run.run(slots[i], "conn.self-pair", {f});
    run.run(slots[i], "conn.dichotomy", {f});
    if (!is_connected(f)) return;
    Rng rng = Rng::stream(options.seed, "connectedness", i);
    for (std::size_t t = 0; t < options.trials; ++t) {
      const Instance& a = rng.pick(u.all);
      const Instance& b = rng.pick(u.all);
      run.run(slots[i], "conn.bijection", {f, a, b});
    }
  });
  run.merge(slots);
  return run.finish(u.all.size(), options.trials);
}

VerificationReport suite_hom_morphism(const SchemaRef& schema, const Bounds& bounds,
                                      const SuiteOptions& options) {
  SuiteRun run("hom-morphism", schema, bounds, options);
  const Universe u = load_universe(schema, bounds);
  if (u.all.empty()) return run.finish(0, 0);
  const TestBasis basis = basis_of(schema, u);
  run.set_basis(&basis);

  std::vector<Slot> slots(options.trials);
  parallel_for(options.trials, [&](std::size_t t) {
    Slot& slot = slots[t];
    Rng rng = Rng::stream(options.seed, "hom-morphism", t);
    auto any = [&]() -> const Instance& { return rng.pick(u.all); };
    if (!u.connected.empty()) run.run(slot, "hom.additive", {rng.pick(u.connected), any(), any()});
    run.run(slot, "hom.multiplicative", {any(), any(), any()});
    run.run(slot, "hom.coproduct-source", {any(), any(), any()});
    run.run(slot, "hom.distributive", {any(), any(), any()});
    run.run(slot, "ring.mul-consistency", {any(), any()});
    run.run(slot, "ring.semiring-laws", {any(), any(), any()});
    run.run(slot, "ring.profile-homomorphism", {any(), any()});
    run.run(slot, "ring.grothendieck", {any(), any()});
  });
  run.merge(slots);
  return run.finish(u.all.size(), options.trials);
}

VerificationReport suite_combinatorial(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options) {
  SuiteRun run("combinatorial", schema, bounds, options);
  const Universe u = load_universe(schema, bounds);
  const TestBasis basis = basis_of(schema, u);
  run.set_basis(&basis);

  std::vector<Profile> profiles(u.all.size());
  std::vector<Slot> slots(u.all.size());
  parallel_for(u.all.size(), [&](std::size_t i) {
    profiles[i] = profile(u.all[i], basis);
    run.run(slots[i], "comb.invariance", {u.all[i]}, {}, Rng::stream(options.seed, "combinatorial", i).next());
  });
  run.merge(slots);

  std::map<Profile, std::size_t> first;
  std::vector<Slot> collisions(1);
  for (std::size_t i = 0; i < u.all.size(); ++i) {
    auto [it, fresh] = first.emplace(profiles[i], i);
    if (!fresh) run.run(collisions[0], "comb.separation", {u.all[it->second], u.all[i]});
  }
  run.merge(collisions);
  return run.finish(u.all.size(), 0);
}

VerificationReport suite_burnside(const SchemaRef& schema, const Bounds& bounds,
                                  const SuiteOptions& options) {
  SuiteRun run("burnside", schema, bounds, options);
  std::vector<Slot> slots(1);
  MarksTable table;
  try {
    table = table_of_marks(schema, bounds);
  } catch (const DomainError& e) {
    run.fail(slots[0], "burnside.group", e.what());
    run.merge(slots);
    return run.finish(0, 0);
  }
  const std::size_t k = table.transitive.size();
  const SchemaRef& s = schema;

  // Triangularity, read off the computed table.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      ++slots[0].checks;
      const bool bad = (i == j && table.marks[i][j] == 0) || (j > i && table.marks[i][j] != 0);
      if (bad) {
        --slots[0].checks;
        run.run(slots[0], "burnside.triangular",
                {table.transitive[i].representative, table.transitive[j].representative});
      }
    }
  }

  // Injectivity of the mark map on coefficient vectors in [-2, 2]^k. Column
  // profiles are computed once and combined linearly; linearity of
  // ring_profile itself is spot-checked on the trials below.
  TestBasis basis{s, table.transitive};
  run.set_basis(&basis);
  std::vector<Profile> columns;
  for (const auto& e : basis.members) columns.push_back(profile(e.representative, basis));
  auto realize_part = [&](const std::vector<int>& c, int sign) {
    DecClass d(s);
    for (std::size_t i = 0; i < k; ++i) {
      if (c[i] * sign > 0) {
        d.accumulate(basis.members[i].form, basis.members[i].representative,
                     static_cast<std::uint64_t>(c[i] * sign));
      }
    }
    return realize(d);
  };

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k && total <= 1000000; ++i) total *= 5;
  const bool exhaustive = total <= 1000000;
  const std::uint64_t count = exhaustive ? total : options.trials * 100;
  Rng rng = Rng::stream(options.seed, "burnside", 0);
  std::map<Profile, std::vector<int>> seen;
  for (std::uint64_t n = 0; n < count; ++n) {
    std::vector<int> c(k);
    std::uint64_t r = n;
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = exhaustive ? static_cast<int>(r % 5) - 2 : static_cast<int>(rng.below(5)) - 2;
      r /= 5;
    }
    Profile p{std::vector<std::int64_t>(k, 0)};
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t m = 0; m < k; ++m) p.values[m] += c[i] * columns[i].values[m];
    }
    ++slots[0].checks;
    auto [it, fresh] = seen.emplace(std::move(p), c);
    if (!fresh && it->second != c) {
      --slots[0].checks;
      run.run(slots[0], "burnside.injective",
              {realize_part(it->second, 1), realize_part(it->second, -1), realize_part(c, 1),
               realize_part(c, -1)});
    }
  }
  for (std::size_t t = 0; t < options.trials && k > 0; ++t) {
    std::vector<int> c(k);
    for (int& v : c) v = static_cast<int>(rng.below(5)) - 2;
    Profile p{std::vector<std::int64_t>(k, 0)};
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t m = 0; m < k; ++m) p.values[m] += c[i] * columns[i].values[m];
    }
    ++slots[0].checks;
    const Profile direct = ring_profile(signed_class(realize_part(c, 1), realize_part(c, -1)), basis);
    if (direct != p) run.fail(slots[0], "burnside.linearity", "ring_profile is not linear at " + profile_text(Profile{{c.begin(), c.end()}}));
  }
  run.merge(slots);
  return run.finish(k, options.trials);
}

std::vector<std::string> suite_names() {
  return {"extensive", "decomposition", "connectedness", "hom-morphism", "combinatorial", "burnside"};
}

VerificationReport run_suite(std::string_view name, const SchemaRef& schema, const Bounds& bounds,
                             const SuiteOptions& options) {
  if (name == "extensive") return suite_extensive(schema, bounds, options);
  if (name == "decomposition") return suite_decomposition(schema, bounds, options);
  if (name == "connectedness") return suite_connectedness(schema, bounds, options);
  if (name == "hom-morphism") return suite_hom_morphism(schema, bounds, options);
  if (name == "combinatorial") return suite_combinatorial(schema, bounds, options);
  if (name == "burnside") return suite_burnside(schema, bounds, options);
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

bool presents_group(const SchemaRef& schema, const Bounds& bounds) {
  for (std::size_t a = 0; a < schema->arrow_count(); ++a) {
    if (schema->source(a) != schema->target(a)) return false;
  }
  for (const auto& e : enumerate_instances(schema, bounds)) {
    for (std::size_t a = 0; a < schema->arrow_count(); ++a) {
      std::vector<bool> hit(e.representative.size(schema->source(a)), false);
      for (Elem y : e.representative.action(a)) {
        if (hit[y]) return false;
        hit[y] = true;
      }
    }
  }
  return true;
}

std::optional<std::string> replay(const Witness& witness, const SuiteOptions& options) {
  const Property& p = property(witness.property);
  if (witness.objects.size() != p.objects.size() || witness.maps.size() != p.maps.size()) {
    throw std::invalid_argument("witness for '" + witness.property + "' has the wrong shape");
  }
  Objects objects;
  for (const auto& o : witness.objects) objects.push_back(o.instance);
  Maps maps;
  for (const auto& m : witness.maps) maps.push_back(m.morphism);
  std::optional<TestBasis> basis;
  if (p.needs_basis) {
    const SchemaRef& s = objects.front().schema_ref();
    basis = build_basis(s, Bounds::parse(*s, witness.bounds));
  }
  try {
    return p.check(objects, maps, Context{options, witness.seed, basis ? &*basis : nullptr});
  } catch (const std::exception& e) {
    return std::string("threw: ") + e.what();
  }
}

Witness parse_witness(const std::string& property_id, const std::string& detail, std::uint64_t seed,
                      const std::string& bounds, std::string_view document) {
  Document doc = parse_document(document);
  Witness w;
  w.property = property_id;
  w.detail = detail;
  w.seed = seed;
  w.bounds = bounds;
  w.objects = std::move(doc.instances);
  w.maps = std::move(doc.morphisms);
  return w;
}

std::string report_text(const VerificationReport& r, bool timing) {
  std::ostringstream out;
  out << "suite: " << r.suite << "\n"
      << "schema: " << r.schema << "\n"
      << "bounds: " << r.bounds << "\n"
      << "universe: " << r.universe_size << "\n"
      << "seed: " << r.seed << "\n"
      << "trials: " << r.trials << "\n"
      << "checks: " << r.checks << "\n"
      << "failed: " << r.failed_checks << "\n"
      << "findings: " << r.finding_checks << "\n";
  if (timing) out << "elapsed: " << r.elapsed_seconds << "s\n";
  auto witnesses = [&](std::string_view kind, const std::vector<Witness>& ws) {
    for (const Witness& w : ws) {
      out << kind << " " << w.property << ": " << w.detail << "\n";
      if (w.seed) out << "  seed " << w.seed << "\n";
      if (!w.bounds.empty()) out << "  bounds " << w.bounds << "\n";
      std::istringstream doc(w.document());
      for (std::string line; std::getline(doc, line);) out << "  " << line << "\n";
    }
  };
  witnesses("failure", r.failures);
  witnesses("finding", r.findings);
  out << "status: " << to_string(r.status()) << "\n";
  return out.str();
}

std::string report_json(const VerificationReport& r, bool timing) {
  auto witnesses = [](const std::vector<Witness>& ws) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Witness& w : ws) {
      arr.push_back({{"property", w.property},
                     {"detail", w.detail},
                     {"seed", w.seed},
                     {"bounds", w.bounds},
                     {"document", w.document()}});
    }
    return arr;
  };
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["schema"] = r.schema;
  j["bounds"] = r.bounds;
  j["universe_size"] = r.universe_size;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["checks"] = r.checks;
  j["failed_checks"] = r.failed_checks;
  j["finding_checks"] = r.finding_checks;
  j["status"] = std::string(to_string(r.status()));
  j["failures"] = witnesses(r.failures);
  j["findings"] = witnesses(r.findings);
  if (timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j.dump(2) + "\n";
}

}  // namespace decat
