#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "decat/canon.hpp"
#include "decat/enumerate.hpp"

namespace decat {

// Finitely supported map from connected canonical forms to nonzero
// coefficients, each form carrying its canonical representative.
template <class Coeff>
class Combination {
 public:
  struct Term {
    Instance representative;
    Coeff coefficient;
  };
  using Terms = std::map<CanonicalForm, Term>;

  Combination() = default;
  explicit Combination(SchemaRef schema) : schema_(std::move(schema)) {}

  const SchemaRef& schema() const { return schema_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  Coeff coefficient(const CanonicalForm& form) const {
    auto it = terms_.find(form);
    return it == terms_.end() ? Coeff{0} : it->second.coefficient;
  }

  // Adds `c` to the coefficient of `form`; zero results are dropped.
  void accumulate(const CanonicalForm& form, const Instance& representative, Coeff c);

  bool operator==(const Combination& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    auto it = other.terms_.begin();
    for (const auto& [form, term] : terms_) {
      if (form != it->first || term.coefficient != it->second.coefficient) return false;
      ++it;
    }
    return true;
  }

 private:
  SchemaRef schema_;
  Terms terms_;
};

// An element of the semi-ring of isomorphism classes: multiplicities of
// connected components.
using DecClass = Combination<std::uint64_t>;
// An element of its Grothendieck ring.
using RingElement = Combination<std::int64_t>;

DecClass class_of(const Instance& instance);

DecClass zero(const SchemaRef& schema);
DecClass one(const SchemaRef& schema);
DecClass add(const DecClass& x, const DecClass& y);
// Bilinear: component representatives are multiplied pairwise and decomposed.
DecClass mul(const DecClass& x, const DecClass& y);

// Iterated coproduct of the representatives, with multiplicity.
Instance realize(const DecClass& x);

RingElement to_ring(const DecClass& x);
// Inverse of to_ring on elements without negative coefficients.
std::optional<DecClass> to_dec(const RingElement& r);

RingElement ring_zero(const SchemaRef& schema);
RingElement ring_one(const SchemaRef& schema);
RingElement ring_add(const RingElement& x, const RingElement& y);
RingElement ring_neg(const RingElement& x);
RingElement ring_sub(const RingElement& x, const RingElement& y);
RingElement ring_mul(const RingElement& x, const RingElement& y);
RingElement ring_scale(const RingElement& x, std::int64_t factor);

// Truncated representative system of connected classes.
struct TestBasis {
  SchemaRef schema;
  std::vector<UniverseEntry> members;

  std::size_t size() const { return members.size(); }
};

// Connected members of enumerate_instances(schema, bounds), in canonical order.
TestBasis build_basis(const SchemaRef& schema, const Bounds& bounds);

// entry i = #Hom(C_i, -).
struct Profile {
  std::vector<std::int64_t> values;

  bool operator==(const Profile&) const = default;
  auto operator<=>(const Profile&) const = default;
};

// Sum over components of multiplicity * #Hom(C_i, component).
Profile profile(const DecClass& x, const TestBasis& basis);
// Direct hom counting into the instance.
Profile profile(const Instance& instance, const TestBasis& basis);
Profile ring_profile(const RingElement& r, const TestBasis& basis);

struct MarksTable {
  std::vector<UniverseEntry> transitive;     // decreasing size, ties by form
  std::vector<std::vector<std::uint64_t>> marks;  // marks[i][j] = #Hom(T_j, T_i)
};

// Table of marks over the transitive (connected) instances within the bounds.
// Throws DomainError if some enumerated instance has a non-bijective action,
// i.e. the schema does not present a group. Empty if nothing is admitted.
MarksTable table_of_marks(const SchemaRef& schema, const Bounds& bounds);

}  // namespace decat
