#pragma once

#include <string>
#include <vector>

#include "decat/instance.hpp"

namespace decat {

// A family of per-node functions between two instances of one schema.
// Construction only checks shapes; naturality is checked by
// validate_morphism.
class Morphism {
 public:
  Morphism() = default;
  Morphism(Instance source, Instance target, ElemTable components);

  const Instance& source() const { return source_; }
  const Instance& target() const { return target_; }
  const ElemTable& components() const { return components_; }
  Elem operator()(std::size_t node, Elem x) const { return components_[node][x]; }

  // Component equality; source and target are assumed to match.
  bool operator==(const Morphism& other) const { return components_ == other.components_; }

 private:
  Instance source_;
  Instance target_;
  ElemTable components_;
};

ValidationResult validate_morphism(const Morphism& m);

Morphism identity(const Instance& instance);

// g after f. Throws DomainError when f's target is not g's source.
Morphism compose(const Morphism& g, const Morphism& f);

// Every component is a bijection.
bool is_iso(const Morphism& m);

// Throws DomainError unless m is an isomorphism.
Morphism inverse(const Morphism& m);

// Component-wise image, as a selection over the target.
std::vector<std::vector<bool>> image(const Morphism& m);

}  // namespace decat
