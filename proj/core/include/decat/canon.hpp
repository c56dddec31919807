#pragma once

#include <compare>
#include <string>
#include <vector>

#include "decat/morphism.hpp"

namespace decat {

// Byte-string representative of an isomorphism class within one schema.
//
// Layout: for each node the carrier size, then for each node, each position
// in canonical order and each arrow out of that node (schema order) the
// canonical position of the image. Every number is 4 bytes big-endian, so
// byte order agrees with the numeric sequence order. The initial instance
// encodes to the empty string.
struct CanonicalForm {
  std::string schema;
  std::string bytes;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  // 16 hex digits of a 64-bit FNV-1a hash over schema name and bytes.
  std::string digest() const;
  // First 8 digest digits, used as a short display label.
  std::string label() const { return digest().substr(0, 8); }
};

// labels[d][x] = canonical position of element x of node d.
struct CanonicalLabeling {
  ElemTable labels;
  CanonicalForm form;
};

// For a connected instance the labeling minimizes the encoding over all
// tuples of per-node orderings (branch and bound). A disconnected instance is
// labeled component by component, components in ascending order of their own
// forms; this is isomorphism invariant and keeps the search per component.
CanonicalLabeling canonical_labeling(const Instance& instance);

CanonicalForm canonical_form(const Instance& instance);

// The instance relabeled with ids "0".."n-1" in canonical order, and the
// isomorphism from the input onto it.
struct CanonicalCopy {
  Instance instance;
  Morphism iso;
  CanonicalForm form;
};
CanonicalCopy canonical_instance(const Instance& instance);

// Encoding of `instance` under a given labeling (exposed for testing the
// minimization against brute force).
std::string encode(const Instance& instance, const ElemTable& labels);

struct Decomposition {
  std::vector<Instance> components;  // sub-instances of the original
  std::vector<CanonicalForm> forms;  // forms[i] = canonical_form(components[i])
  Morphism witness;                  // iterated coproduct of components -> original
};

// Union-find over elements; components ordered by canonical bytes, ties by
// their minimal original element. The initial instance has no components.
Decomposition connected_components(const Instance& instance);

bool is_connected(const Instance& instance);

}  // namespace decat
