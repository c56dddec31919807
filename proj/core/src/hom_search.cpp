#include "decat/hom_search.hpp"

#include <optional>
#include <set>
#include <stdexcept>

#include "decat/constructions.hpp"

namespace decat {

namespace {

using Slot = std::pair<std::size_t, Elem>;  // (node, element of X)

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("hom count overflow");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("hom count overflow");
  return r;
}

// Branching order. Assigning an element forces its images along every arrow,
// so elements outside the image of all arrows go first, preferring those
// with a successor already determined; elements still undetermined after
// that (cycles) follow in node-then-element order.
std::vector<Slot> global_order(const Instance& x) {
  const Schema& s = x.schema();
  ElemTable hit(s.node_count()), reached(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    hit[d].assign(x.size(d), 0);
    reached[d].assign(x.size(d), 0);
  }
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    for (Elem e = 0; e < x.size(s.source(a)); ++e) hit[s.target(a)][x.apply(a, e)] = 1;
  }
  std::vector<Slot> order, stack;
  auto reach = [&](std::size_t node, Elem elem) {
    order.emplace_back(node, elem);
    stack.assign(1, {node, elem});
    while (!stack.empty()) {
      auto [d, e] = stack.back();
      stack.pop_back();
      if (reached[d][e]) continue;
      reached[d][e] = 1;
      for (std::size_t a : s.out_arrows(d)) stack.emplace_back(s.target(a), x.apply(a, e));
    }
  };
  auto adjacent = [&](std::size_t d, Elem e) {
    for (std::size_t a : s.out_arrows(d)) {
      if (reached[s.target(a)][x.apply(a, e)]) return true;
    }
    return false;
  };
  while (true) {
    std::optional<Slot> free_source, next_source, any;
    for (std::size_t d = 0; d < s.node_count() && !next_source; ++d) {
      for (Elem e = 0; e < x.size(d); ++e) {
        if (reached[d][e]) continue;
        if (!any) any = Slot{d, e};
        if (hit[d][e]) continue;
        if (!free_source) free_source = Slot{d, e};
        if (adjacent(d, e)) {
          next_source = Slot{d, e};
          break;
        }
      }
    }
    const std::optional<Slot> pick = next_source ? next_source : free_source ? free_source : any;
    if (!pick) return order;
    reach(pick->first, pick->second);
  }
}

// Backtracking over the slots of X in a fixed order. Every assignment is
// closed under the arrows of the schema before the search moves on.
class Searcher {
 public:
  Searcher(const Instance& x, const Instance& y, bool injective, std::vector<Slot> order)
      : x_(x), y_(y), schema_(x.schema()), injective_(injective), order_(std::move(order)) {
    assign_.resize(schema_.node_count());
    used_.resize(schema_.node_count());
    for (std::size_t d = 0; d < schema_.node_count(); ++d) {
      assign_[d].assign(x_.size(d), kNoElem);
      used_[d].assign(y_.size(d), false);
    }
  }

  // Calls visit(assignment) per solution; returns false if visit asked to stop.
  template <class Visit>
  bool run(Visit&& visit, Rng* rng = nullptr) {
    return descend(0, visit, rng);
  }

  std::uint64_t count() { return count_from(0); }

  const ElemTable& assignment() const { return assign_; }

 private:
  bool assign(std::size_t node, Elem elem, Elem image) {
    stack_.clear();
    stack_.push_back({node, elem, image});
    while (!stack_.empty()) {
      auto [d, e, img] = stack_.back();
      stack_.pop_back();
      Elem& cur = assign_[d][e];
      if (cur != kNoElem) {
        if (cur != img) return false;
        continue;
      }
      if (injective_ && used_[d][img]) return false;
      cur = img;
      if (injective_) used_[d][img] = true;
      trail_.emplace_back(d, e);
      for (std::size_t a : schema_.out_arrows(d)) {
        stack_.push_back({schema_.target(a), x_.apply(a, e), y_.apply(a, img)});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [d, e] = trail_.back();
      trail_.pop_back();
      if (injective_) used_[d][assign_[d][e]] = false;
      assign_[d][e] = kNoElem;
    }
  }

  std::size_t next_free(std::size_t k) const {
    while (k < order_.size() && assign_[order_[k].first][order_[k].second] != kNoElem) ++k;
    return k;
  }

  template <class Visit>
  bool descend(std::size_t k, Visit& visit, Rng* rng) {
    k = next_free(k);
    if (k == order_.size()) return visit(assign_);
    const auto [d, e] = order_[k];
    std::vector<Elem> candidates(y_.size(d));
    for (Elem c = 0; c < candidates.size(); ++c) candidates[c] = c;
    if (rng) rng->shuffle(candidates);
    for (Elem c : candidates) {
      const std::size_t mark = trail_.size();
      bool keep_going = true;
      if (assign(d, e, c)) keep_going = descend(k + 1, visit, rng);
      undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  std::uint64_t count_from(std::size_t k) {
    k = next_free(k);
    if (k == order_.size()) return 1;
    const auto [d, e] = order_[k];
    std::uint64_t total = 0;
    for (Elem c = 0; c < y_.size(d); ++c) {
      const std::size_t mark = trail_.size();
      if (assign(d, e, c)) total = checked_add(total, count_from(k + 1));
      undo(mark);
    }
    return total;
  }

  struct Pending {
    std::size_t node;
    Elem elem;
    Elem image;
  };

  const Instance& x_;
  const Instance& y_;
  const Schema& schema_;
  bool injective_;
  std::vector<Slot> order_;
  ElemTable assign_;
  std::vector<std::vector<bool>> used_;
  std::vector<Slot> trail_;
  std::vector<Pending> stack_;
};

}  // namespace

void for_each_hom(const Instance& x, const Instance& y,
                  const std::function<bool(const ElemTable&)>& visit) {
  require_same_schema(x.schema_ref(), y.schema_ref(), "hom search");
  Searcher search(x, y, false, global_order(x));
  search.run([&](const ElemTable& t) { return visit(t); });
}

HomSet enumerate_homs(const Instance& x, const Instance& y) {
  HomSet out{x, y, {}};
  for_each_hom(x, y, [&](const ElemTable& t) {
    out.morphisms.emplace_back(x, y, t);
    return true;
  });
  return out;
}

std::uint64_t count_homs(const Instance& x, const Instance& y) {
  require_same_schema(x.schema_ref(), y.schema_ref(), "count_homs");
  const ComponentLabels comps = element_components(x);
  std::vector<std::vector<Slot>> orders(comps.count);
  for (const Slot& slot : global_order(x)) orders[comps.of[slot.first][slot.second]].push_back(slot);
  std::uint64_t total = 1;
  for (auto& order : orders) {
    Searcher search(x, y, false, std::move(order));
    const std::uint64_t n = search.count();
    if (n == 0) return 0;
    total = checked_mul(total, n);
  }
  return total;
}

std::optional<Morphism> find_iso(const Instance& x, const Instance& y) {
  require_same_schema(x.schema_ref(), y.schema_ref(), "find_iso");
  for (std::size_t d = 0; d < x.schema().node_count(); ++d) {
    if (x.size(d) != y.size(d)) return std::nullopt;
  }
  // Injective on equal finite carriers means bijective, and the inverse of a
  // bijective natural family is natural.
  Searcher search(x, y, true, global_order(x));
  std::optional<Morphism> found;
  search.run([&](const ElemTable& t) {
    found.emplace(x, y, t);
    return false;
  });
  return found;
}

std::optional<Morphism> sample_hom(const Instance& x, const Instance& y, Rng& rng,
                                   std::uint64_t exact_limit) {
  require_same_schema(x.schema_ref(), y.schema_ref(), "sample_hom");
  const std::uint64_t n = count_homs(x, y);
  if (n == 0) return std::nullopt;
  std::optional<Morphism> found;
  if (n <= exact_limit) {
    std::uint64_t pick = rng.below(n);
    for_each_hom(x, y, [&](const ElemTable& t) {
      if (pick-- == 0) {
        found.emplace(x, y, t);
        return false;
      }
      return true;
    });
    return found;
  }
  Searcher search(x, y, false, global_order(x));
  search.run(
      [&](const ElemTable& t) {
        found.emplace(x, y, t);
        return false;
      },
      &rng);
  return found;
}

bool check_conn_bijection(const Instance& c, const Instance& a, const Instance& b) {
  require_same_schema(c.schema_ref(), a.schema_ref(), "check_conn_bijection");
  require_same_schema(c.schema_ref(), b.schema_ref(), "check_conn_bijection");
  const CoproductResult sum = coproduct(a, b);
  std::set<ElemTable> images;
  std::size_t left = 0;
  for (const Morphism& f : enumerate_homs(c, a).morphisms) {
    images.insert(compose(sum.left, f).components());
    ++left;
  }
  for (const Morphism& g : enumerate_homs(c, b).morphisms) {
    images.insert(compose(sum.right, g).components());
    ++left;
  }
  if (images.size() != left) return false;  // not injective
  return images.size() == count_homs(c, sum.sum);
}

}  // namespace decat
