#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "decat/morphism.hpp"

namespace decat {

// Per-node membership flags over a carrier.
using Selection = std::vector<std::vector<bool>>;

struct CoproductResult {
  Instance sum;
  Morphism left;
  Morphism right;
};

struct ProductResult {
  Instance product;
  Morphism first;
  Morphism second;
};

struct PullbackResult {
  Instance apex;
  Morphism first;   // apex -> source of f
  Morphism second;  // apex -> source of g
};

struct SubInstance {
  Instance instance;
  Morphism inclusion;
};

struct Relabeling {
  Instance instance;
  Morphism iso;  // original -> relabeled
};

// All carriers empty.
Instance initial(const SchemaRef& schema);

// Every carrier the singleton {"*"}.
Instance terminal(const SchemaRef& schema);

// Tagged disjoint union: elements of F become "0:<id>", elements of G "1:<id>".
CoproductResult coproduct(const Instance& f, const Instance& g);

// Left fold of binary coproducts, starting from the first summand (the
// initial instance for an empty list). injections[i] maps summand i into the sum.
struct MultiCoproduct {
  Instance sum;
  std::vector<Morphism> injections;
};
MultiCoproduct coproduct(std::span<const Instance> summands, const SchemaRef& schema);

// The unique map out of the sum restricting to u and v.
Morphism copair(const CoproductResult& sum, const Morphism& u, const Morphism& v);

// Pairs of elements "<x|y>" with component-wise actions.
ProductResult product(const Instance& f, const Instance& g);

// The unique map into the product with the given projections.
Morphism pair(const ProductResult& prod, const Morphism& u, const Morphism& v);

// Node-wise fiber product {(x, y) : f(x) = g(y)}. Throws DomainError when the
// targets differ.
PullbackResult pullback(const Morphism& f, const Morphism& g);

// Mediating map of a commuting cone (p: W -> A, q: W -> B) into a pullback.
Morphism mediate(const PullbackResult& pb, const Morphism& p, const Morphism& q);

bool is_closed(const Instance& instance, const Selection& selection);

// Restriction to an action-closed selection. Throws DomainError naming an
// escaping (arrow, element) otherwise.
SubInstance subinstance(const Instance& instance, const Selection& selection);

// Node-wise preimage of an arrow-closed selection of f's target.
SubInstance preimage(const Morphism& f, const Selection& selection);

// Seeded random permutation of every carrier, with fresh identifiers.
Relabeling relabel(const Instance& instance, std::uint64_t seed);

Selection select_all(const Instance& instance, bool value = true);

// Connected components of the element graph (elements joined along every
// arrow), numbered by their minimal element in node-then-element order.
struct ComponentLabels {
  std::size_t count = 0;
  std::vector<std::vector<std::uint32_t>> of;  // of[node][elem]
};
ComponentLabels element_components(const Instance& instance);

}  // namespace decat
