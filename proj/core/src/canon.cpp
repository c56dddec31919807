#include "decat/canon.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "decat/constructions.hpp"

namespace decat {

namespace {

void put(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

// Branch and bound for the minimal encoding of one instance. Positions are
// visited in encoding order; the element owning label i of node d is chosen
// when that label is first needed, and every unlabeled image receives the next
// free label of its node at once. Giving it any later label would make the
// current entry larger, so this loses no optimal labeling. Among candidates
// for a position only those producing the smallest entries are expanded.
//
// A leaf that ties the best encoding yields an automorphism (best labels
// composed with the inverse of the current ones). Two exact prunings follow:
// the search backs up to the level where the two paths diverge, since the
// current subtree there is the image of one already searched; and candidates
// in one orbit of the automorphisms fixing every labeled element are
// expanded once.
class LabelSearch {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  explicit LabelSearch(const Instance& inst) : f_(inst), s_(inst.schema()) {
    const std::size_t n = s_.node_count();
    label_.resize(n);
    at_.resize(n);
    next_.assign(n, 0);
    for (std::size_t d = 0; d < n; ++d) {
      label_[d].assign(f_.size(d), kNoElem);
      at_[d].assign(f_.size(d), kNoElem);
      if (s_.out_arrows(d).empty()) continue;
      for (Elem i = 0; i < f_.size(d); ++i) positions_.emplace_back(d, i);
    }
    choice_.assign(positions_.size(), kNoElem);
  }

  ElemTable run() {
    search(0, false);
    return best_labels_;
  }

 private:
  void give(std::size_t d, Elem x) {
    label_[d][x] = next_[d];
    at_[d][next_[d]] = x;
    ++next_[d];
    trail_.emplace_back(d, x);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [d, x] = trail_.back();
      trail_.pop_back();
      --next_[d];
      at_[d][next_[d]] = kNoElem;
      label_[d][x] = kNoElem;
    }
  }

  void emit(std::size_t d, Elem x) {
    for (std::size_t a : s_.out_arrows(d)) {
      const std::size_t t = s_.target(a);
      const Elem y = f_.apply(a, x);
      if (label_[t][y] == kNoElem) give(t, y);
      cur_.push_back(label_[t][y]);
    }
  }

  // -1: new entries beat the best, 0: tie, 1: worse.
  int compare_tail(std::size_t from) const {
    for (std::size_t k = from; k < cur_.size(); ++k) {
      if (cur_[k] < best_[k]) return -1;
      if (cur_[k] > best_[k]) return 1;
    }
    return 0;
  }

  std::size_t step(std::size_t k, bool less) {
    if (!less && have_best_) {
      const int c = compare_tail(cur_.size() - s_.out_arrows(positions_[k].first).size());
      if (c > 0) return kNone;
      less = c < 0;
    }
    return search(k + 1, less);
  }

  ElemTable completed_labels() const {
    ElemTable out = label_;
    // Elements never reached are interchangeable; label them in order.
    for (std::size_t d = 0; d < out.size(); ++d) {
      Elem nxt = next_[d];
      for (Elem& l : out[d]) {
        if (l == kNoElem) l = nxt++;
      }
    }
    return out;
  }

  std::size_t leaf(bool less) {
    if (!have_best_ || less) {
      have_best_ = true;
      ++updates_;
      best_ = cur_;
      best_labels_ = completed_labels();
      best_choice_ = choice_;
      return kNone;
    }
    // Equal encodings: x -> the element best labels like x is an automorphism.
    const ElemTable labels = completed_labels();
    ElemTable gamma(labels.size());
    bool trivial = true;
    for (std::size_t d = 0; d < labels.size(); ++d) {
      std::vector<Elem> best_at(labels[d].size());
      for (Elem x = 0; x < best_labels_[d].size(); ++x) best_at[best_labels_[d][x]] = x;
      gamma[d].resize(labels[d].size());
      for (Elem x = 0; x < labels[d].size(); ++x) {
        gamma[d][x] = best_at[labels[d][x]];
        trivial = trivial && gamma[d][x] == x;
      }
    }
    if (!trivial) automorphisms_.push_back(std::move(gamma));
    for (std::size_t k = 0; k < choice_.size(); ++k) {
      if (choice_[k] != best_choice_[k]) return k;
    }
    return kNone;
  }

  // Orbit representatives of node d under the automorphisms fixing every
  // labeled element; rep[x] == x for elements outside any nontrivial orbit.
  std::vector<Elem> orbits(std::size_t d) const {
    std::vector<Elem> rep(f_.size(d));
    std::iota(rep.begin(), rep.end(), Elem{0});
    auto find = [&](Elem x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    for (const ElemTable& g : automorphisms_) {
      const bool fixes = std::all_of(trail_.begin(), trail_.end(),
                                     [&](const auto& e) { return g[e.first][e.second] == e.second; });
      if (!fixes) continue;
      for (Elem x = 0; x < rep.size(); ++x) {
        const Elem a = find(x), b = find(g[d][x]);
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Elem x = 0; x < rep.size(); ++x) rep[x] = find(x);
    return rep;
  }

  std::size_t search(std::size_t k, bool less) {
    if (k == positions_.size()) return leaf(less);
    const auto [d, i] = positions_[k];
    const std::size_t base = cur_.size();
    if (at_[d][i] != kNoElem) {
      const std::size_t mark = trail_.size();
      emit(d, at_[d][i]);
      const std::size_t jump = step(k, less);
      undo(mark);
      cur_.resize(base);
      return jump;
    }
    // Entries each free candidate would produce; keep the minimal ones.
    std::vector<Elem> candidates;
    std::vector<Elem> best_tuple;
    std::vector<Elem> tuple;
    for (Elem x = 0; x < f_.size(d); ++x) {
      if (label_[d][x] != kNoElem) continue;
      const std::size_t mark = trail_.size();
      give(d, x);
      emit(d, x);
      tuple.assign(cur_.begin() + static_cast<std::ptrdiff_t>(base), cur_.end());
      undo(mark);
      cur_.resize(base);
      if (candidates.empty() || tuple < best_tuple) {
        candidates.assign(1, x);
        best_tuple = tuple;
      } else if (tuple == best_tuple) {
        candidates.push_back(x);
      }
    }
    std::vector<Elem> done;
    std::size_t known = 0;
    std::vector<Elem> rep;
    for (Elem x : candidates) {
      if (!done.empty() && automorphisms_.size() > known) {
        known = automorphisms_.size();
        rep = orbits(d);
      }
      if (!rep.empty() && std::any_of(done.begin(), done.end(),
                                      [&](Elem y) { return rep[y] == rep[x]; })) {
        continue;
      }
      done.push_back(x);
      const std::size_t mark = trail_.size();
      const std::uint64_t seen = updates_;
      choice_[k] = x;
      give(d, x);
      emit(d, x);
      const std::size_t jump = step(k, less);
      undo(mark);
      cur_.resize(base);
      choice_[k] = kNoElem;
      // A new best found below shares the current prefix.
      if (updates_ != seen) less = false;
      if (jump != kNone && jump < k) return jump;
    }
    return kNone;
  }

  const Instance& f_;
  const Schema& s_;
  ElemTable label_;
  ElemTable at_;
  std::vector<Elem> next_;
  std::vector<std::pair<std::size_t, Elem>> positions_;
  std::vector<std::pair<std::size_t, Elem>> trail_;
  std::vector<Elem> cur_;
  std::vector<Elem> best_;
  ElemTable best_labels_;
  std::vector<Elem> choice_;
  std::vector<Elem> best_choice_;
  std::vector<ElemTable> automorphisms_;
  bool have_best_ = false;
  std::uint64_t updates_ = 0;
};

}  // namespace

std::string CanonicalForm::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (unsigned char c : schema) feed(c);
  feed(0);
  for (unsigned char c : bytes) feed(c);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string encode(const Instance& instance, const ElemTable& labels) {
  const Schema& s = instance.schema();
  if (instance.total_size() == 0) return {};
  std::string out;
  for (std::size_t d = 0; d < s.node_count(); ++d) put(out, static_cast<std::uint32_t>(instance.size(d)));
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    if (s.out_arrows(d).empty()) continue;
    std::vector<Elem> at(instance.size(d));
    for (Elem x = 0; x < instance.size(d); ++x) at[labels[d][x]] = x;
    for (Elem x : at) {
      for (std::size_t a : s.out_arrows(d)) put(out, labels[s.target(a)][instance.apply(a, x)]);
    }
  }
  return out;
}

CanonicalLabeling canonical_labeling(const Instance& instance) {
  const Schema& s = instance.schema();
  const ComponentLabels comps = element_components(instance);
  if (comps.count <= 1) {
    ElemTable labels = LabelSearch(instance).run();
    CanonicalForm form{s.name(), encode(instance, labels)};
    return {std::move(labels), std::move(form)};
  }

  struct Part {
    SubInstance sub;
    ElemTable labels;
    std::string bytes;
  };
  std::vector<Part> parts;
  parts.reserve(comps.count);
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    Selection sel = select_all(instance, false);
    for (std::size_t d = 0; d < s.node_count(); ++d) {
      for (Elem x = 0; x < instance.size(d); ++x) sel[d][x] = comps.of[d][x] == c;
    }
    SubInstance sub = subinstance(instance, sel);
    ElemTable labels = LabelSearch(sub.instance).run();
    std::string bytes = encode(sub.instance, labels);
    parts.push_back({std::move(sub), std::move(labels), std::move(bytes)});
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Part& a, const Part& b) { return a.bytes < b.bytes; });

  ElemTable labels(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) labels[d].assign(instance.size(d), kNoElem);
  std::vector<Elem> offset(s.node_count(), 0);
  for (const Part& p : parts) {
    for (std::size_t d = 0; d < s.node_count(); ++d) {
      for (Elem x = 0; x < p.sub.instance.size(d); ++x) {
        labels[d][p.sub.inclusion(d, x)] = offset[d] + p.labels[d][x];
      }
      offset[d] += static_cast<Elem>(p.sub.instance.size(d));
    }
  }
  CanonicalForm form{s.name(), encode(instance, labels)};
  return {std::move(labels), std::move(form)};
}

CanonicalForm canonical_form(const Instance& instance) {
  return canonical_labeling(instance).form;
}

CanonicalCopy canonical_instance(const Instance& instance) {
  CanonicalLabeling lab = canonical_labeling(instance);
  const Schema& s = instance.schema();
  std::vector<std::vector<std::string>> ids(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    auto fresh = index_ids(instance.size(d));
    for (Elem x = 0; x < instance.size(d); ++x) ids[d].push_back(fresh[lab.labels[d][x]]);
  }
  ElemTable actions(instance.actions());
  Instance copy(instance.schema_ref(), std::move(ids), std::move(actions));
  // index_ids sort numerically, so the new position of x is its label.
  Morphism iso(instance, copy, lab.labels);
  return {copy, std::move(iso), std::move(lab.form)};
}

Decomposition connected_components(const Instance& instance) {
  const Schema& s = instance.schema();
  const ComponentLabels comps = element_components(instance);
  struct Part {
    SubInstance sub;
    CanonicalForm form;
    std::uint32_t order;  // component number = rank of its minimal element
  };
  std::vector<Part> parts;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    Selection sel = select_all(instance, false);
    for (std::size_t d = 0; d < s.node_count(); ++d) {
      for (Elem x = 0; x < instance.size(d); ++x) sel[d][x] = comps.of[d][x] == c;
    }
    SubInstance sub = subinstance(instance, sel);
    CanonicalForm form = canonical_form(sub.instance);
    parts.push_back({std::move(sub), std::move(form), c});
  }
  std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
    if (a.form.bytes != b.form.bytes) return a.form.bytes < b.form.bytes;
    return a.order < b.order;
  });

  Decomposition out;
  for (const Part& p : parts) {
    out.components.push_back(p.sub.instance);
    out.forms.push_back(p.form);
  }
  MultiCoproduct sum = coproduct(std::span<const Instance>(out.components), instance.schema_ref());
  ElemTable w(s.node_count());
  for (std::size_t d = 0; d < s.node_count(); ++d) w[d].assign(sum.sum.size(d), kNoElem);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Morphism& inj = sum.injections[i];
    const Morphism& incl = parts[i].sub.inclusion;
    for (std::size_t d = 0; d < s.node_count(); ++d) {
      for (Elem x = 0; x < incl.source().size(d); ++x) w[d][inj(d, x)] = incl(d, x);
    }
  }
  out.witness = Morphism(sum.sum, instance, std::move(w));
  return out;
}

bool is_connected(const Instance& instance) { return element_components(instance).count == 1; }

}  // namespace decat
