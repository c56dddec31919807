#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decat/constructions.hpp"
#include "decat/enumerate.hpp"
#include "decat/format.hpp"
#include "decat/ring.hpp"

namespace decat {

enum class Status { Pass, Finding, Fail };

std::string_view to_string(Status s);

// A replayable counterexample: the property id plus everything its check
// consumes. Morphisms refer to objects by name.
struct Witness {
  std::string property;
  std::string detail;
  std::uint64_t seed = 0;
  std::string bounds;  // bounds text, for properties that need a basis
  std::vector<NamedInstance> objects;
  std::vector<NamedMorphism> maps;

  // Schema, instance and morphism declarations in the text format.
  std::string document() const;
};

inline constexpr std::size_t kWitnessesPerProperty = 5;

struct VerificationReport {
  std::string suite;
  std::string schema;
  std::string bounds;
  std::size_t universe_size = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t checks = 0;  // property evaluations performed
  std::size_t failed_checks = 0;
  std::size_t finding_checks = 0;
  // At most kWitnessesPerProperty of each kind are kept per property.
  std::vector<Witness> failures;
  std::vector<Witness> findings;
  double elapsed_seconds = 0;

  Status status() const;
};

using CoproductFn = std::function<CoproductResult(const Instance&, const Instance&)>;

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  // The coproduct every check builds on; self-test mode swaps in a broken one.
  CoproductFn coproduct = [](const Instance& a, const Instance& b) { return decat::coproduct(a, b); };
};

// Coproduct that tags both summands alike, merging elements with equal ids.
// Only for checking that the harness catches a broken construction.
CoproductResult corrupted_coproduct(const Instance& f, const Instance& g);

// Pullback squares along coprojections, strictness of the initial object,
// splitting of maps into a sum, disjointness of coprojection images.
VerificationReport suite_extensive(const SchemaRef& schema, const Bounds& bounds,
                                   const SuiteOptions& options);

// Existence with a valid witness, invariance under relabeling and re-bracketing,
// cancellation, and #Hom(X, X+X) = prod_i #Hom(X_i, X+X) >= 2^n.
VerificationReport suite_decomposition(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options);

// Union-find connectedness against the coproduct-bijection test, for (F, F)
// and `trials` sampled pairs per instance; plus the initial-or-splits dichotomy.
VerificationReport suite_connectedness(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options);

// Additivity and multiplicativity of hom counts, distributivity, and the
// semi-ring and profile laws, on `trials` sampled triples.
VerificationReport suite_hom_morphism(const SchemaRef& schema, const Bounds& bounds,
                                      const SuiteOptions& options);

// Exhaustive profile scan; collisions are FINDINGs. Ignores trials.
VerificationReport suite_combinatorial(const SchemaRef& schema, const Bounds& bounds,
                                       const SuiteOptions& options);

// Triangular table of marks with positive diagonal, and injectivity of the
// mark map on coefficients in [-2, 2].
VerificationReport suite_burnside(const SchemaRef& schema, const Bounds& bounds,
                                  const SuiteOptions& options);

std::vector<std::string> suite_names();

// Dispatches by name (see suite_names). Throws std::invalid_argument.
VerificationReport run_suite(std::string_view name, const SchemaRef& schema, const Bounds& bounds,
                             const SuiteOptions& options);

// Whether every instance within the bounds acts by bijections.
bool presents_group(const SchemaRef& schema, const Bounds& bounds);

// Re-runs the witness's property check. Returns the failure message when the
// failure (or finding) reproduces, nullopt when the check passes.
std::optional<std::string> replay(const Witness& witness, const SuiteOptions& options = {});

// Rebuilds a witness from its serialized parts.
Witness parse_witness(const std::string& property, const std::string& detail, std::uint64_t seed,
                      const std::string& bounds, std::string_view document);

// Line-oriented text and JSON. Elapsed time is included only on request so
// that reruns compare byte for byte.
std::string report_text(const VerificationReport& report, bool timing = false);
std::string report_json(const VerificationReport& report, bool timing = false);

}  // namespace decat
