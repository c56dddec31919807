#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "decat/morphism.hpp"
#include "decat/rng.hpp"

namespace decat {

// Hom(X, Y) in deterministic search order.
struct HomSet {
  Instance source;
  Instance target;
  std::vector<Morphism> morphisms;

  std::size_t count() const { return morphisms.size(); }
};

// Visits the component tables of every morphism X -> Y in search order.
// Elements outside the image of every arrow are branched on first, then any
// element still undetermined, in node-then-element order; candidate images
// ascend, and each assignment immediately forces the images of the element's
// successors along every arrow. Return false from the visitor to
// stop early. Throws SchemaMismatch.
void for_each_hom(const Instance& x, const Instance& y,
                  const std::function<bool(const ElemTable&)>& visit);

HomSet enumerate_homs(const Instance& x, const Instance& y);

// #Hom(X, Y). Counts each connected component of X separately and multiplies.
// Throws std::overflow_error past 2^64 - 1.
std::uint64_t count_homs(const Instance& x, const Instance& y);

// An isomorphism X -> Y if one exists.
std::optional<Morphism> find_iso(const Instance& x, const Instance& y);

// Uniformly random element of Hom(X, Y) when the hom-set has at most
// `exact_limit` members; beyond that, the first hit of a randomized
// backtracking descent. Empty when Hom(X, Y) is empty.
std::optional<Morphism> sample_hom(const Instance& x, const Instance& y, Rng& rng,
                                   std::uint64_t exact_limit = 10000);

// Whether Hom(C, A) + Hom(C, B) -> Hom(C, A + B), given by post-composition
// with the coprojections, is a bijection.
bool check_conn_bijection(const Instance& c, const Instance& a, const Instance& b);

}  // namespace decat
