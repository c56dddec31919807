#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "decat/format.hpp"
#include "decat/ring.hpp"

namespace decat {

// Grothendieck-ring arithmetic over named instances:
//
//   expr := term { ('+' | '-') term }
//   term := atom { '*' atom }
//   atom := NAT | IDENT | '(' expr ')'
//
// Operators are left-associative and '*' binds tighter. A literal n stands
// for n copies of the terminal instance.
struct RingExpr {
  enum class Kind { Natural, Name, Add, Sub, Mul };

  Kind kind = Kind::Natural;
  std::uint64_t value = 0;  // Natural
  std::string name;         // Name
  std::shared_ptr<const RingExpr> lhs;
  std::shared_ptr<const RingExpr> rhs;
  std::size_t line = 1;
  std::size_t column = 1;

  // Prefix form, e.g. "(+ A (* 2 B))".
  std::string to_string() const;
};

// Throws ParseError with the position of the offending token.
RingExpr parse_expr(std::string_view text);

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Definitions = std::map<std::string, Instance, std::less<>>;

// Atoms go through class_of and to_ring, literals to n * one. The schema is
// taken from the referenced instances; `schema` is used when the expression
// names none. Throws EvalError for unresolved names or a missing schema and
// SchemaMismatch when names disagree.
RingElement eval_expr(const RingExpr& expr, const Definitions& defs, SchemaRef schema = nullptr);

// Display names for canonical forms: connected definitions name their class
// (smallest name wins); everything else shows CanonicalForm::label().
class ClassNamer {
 public:
  ClassNamer() = default;
  explicit ClassNamer(const Definitions& defs);

  std::string operator()(const CanonicalForm& form) const;

 private:
  std::map<CanonicalForm, std::string> names_;
};

// "{A2: 1, K1: 2}" sorted by display name; the zero element prints as "0".
std::string format_element(const RingElement& r, const ClassNamer& namer);

}  // namespace decat
