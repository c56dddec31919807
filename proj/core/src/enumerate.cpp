#include "decat/enumerate.hpp"

#include <charconv>
#include <limits>
#include <map>
#include <stdexcept>

#include "decat/instance.hpp"

namespace decat {

namespace {

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("bounds: '" + std::string(text) + "' is not a count");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

// Calls f(sizes) for every admitted size vector, odometer order.
template <class F>
void for_each_size(const Bounds& bounds, F&& f) {
  const std::size_t n = bounds.max_size.size();
  std::vector<std::size_t> sizes(n, 0);
  while (true) {
    if (bounds.admits(sizes)) f(sizes);
    std::size_t d = n;
    while (d > 0) {
      --d;
      if (sizes[d] < bounds.max_size[d]) {
        ++sizes[d];
        break;
      }
      sizes[d] = 0;
      if (d == 0) return;
    }
    if (n == 0) return;
  }
}

// Fills action tables slot by slot for one size vector.
class TableSearch {
 public:
  TableSearch(const Schema& s, const std::vector<std::size_t>& sizes) : s_(s), sizes_(sizes) {
    tables_.resize(s.arrow_count());
    for (std::size_t a = 0; a < s.arrow_count(); ++a) {
      tables_[a].assign(sizes[s.source(a)], kNoElem);
      for (Elem x = 0; x < sizes[s.source(a)]; ++x) slots_.emplace_back(a, x);
    }
  }

  template <class F>
  void run(F&& emit) {
    descend(0, emit);
  }

 private:
  Elem eval(const ResolvedPath& p, Elem x) const {
    for (std::size_t a : p.arrows) {
      x = tables_[a][x];
      if (x == kNoElem) return kNoElem;
    }
    return x;
  }

  bool consistent() const {
    for (const auto& [lhs, rhs] : s_.resolved_relations()) {
      for (Elem x = 0; x < sizes_[lhs.start]; ++x) {
        const Elem l = eval(lhs, x);
        if (l == kNoElem) continue;
        const Elem r = eval(rhs, x);
        if (r != kNoElem && l != r) return false;
      }
    }
    return true;
  }

  template <class F>
  void descend(std::size_t k, F& emit) {
    if (k == slots_.size()) {
      emit(tables_);
      return;
    }
    const auto [a, x] = slots_[k];
    const std::size_t range = sizes_[s_.target(a)];
    for (Elem y = 0; y < range; ++y) {
      tables_[a][x] = y;
      if (consistent()) descend(k + 1, emit);
    }
    tables_[a][x] = kNoElem;
  }

  const Schema& s_;
  const std::vector<std::size_t>& sizes_;
  ElemTable tables_;
  std::vector<std::pair<std::size_t, Elem>> slots_;
};

}  // namespace

Bounds Bounds::uniform(const Schema& schema, std::size_t n) {
  return Bounds{std::vector<std::size_t>(schema.node_count(), n), std::nullopt};
}

Bounds Bounds::parse(const Schema& schema, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.find('=') == std::string_view::npos) {
    return uniform(schema, parse_count(text));
  }
  Bounds b{std::vector<std::size_t>(schema.node_count(), 0), std::nullopt};
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("bounds: expected <node>=<n>, got '" + std::string(item) + "'");
    }
    const std::string_view key = trim(item.substr(0, eq));
    const std::size_t value = parse_count(trim(item.substr(eq + 1)));
    if (key == "total") {
      b.max_total = value;
      continue;
    }
    auto d = schema.node_index(key);
    if (!d) throw std::invalid_argument("bounds: unknown node '" + std::string(key) + "'");
    b.max_size[*d] = value;
  }
  return b;
}

std::string Bounds::to_string(const Schema& schema) const {
  std::string out;
  for (std::size_t d = 0; d < max_size.size(); ++d) {
    if (d) out += ',';
    out += schema.nodes()[d] + "=" + std::to_string(max_size[d]);
  }
  if (max_total) out += (out.empty() ? "" : ",") + std::string("total=") + std::to_string(*max_total);
  return out;
}

bool Bounds::admits(const std::vector<std::size_t>& sizes) const {
  std::size_t total = 0;
  for (std::size_t d = 0; d < sizes.size(); ++d) {
    if (sizes[d] > max_size[d]) return false;
    total += sizes[d];
  }
  return !max_total || total <= *max_total;
}

std::uint64_t raw_candidate_count(const Schema& schema, const Bounds& bounds) {
  if (bounds.max_size.size() != schema.node_count()) {
    throw std::invalid_argument("bounds do not match the schema");
  }
  std::uint64_t total = 0;
  for_each_size(bounds, [&](const std::vector<std::size_t>& sizes) {
    std::uint64_t n = 1;
    for (std::size_t a = 0; a < schema.arrow_count(); ++a) {
      for (std::size_t i = 0; i < sizes[schema.source(a)]; ++i) {
        n = sat_mul(n, sizes[schema.target(a)]);
      }
    }
    total = sat_add(total, n);
  });
  return total;
}

std::vector<UniverseEntry> enumerate_instances(const SchemaRef& schema, const Bounds& bounds) {
  require_valid(*schema);
  const Schema& s = *schema;
  if (bounds.max_size.size() != s.node_count()) {
    throw std::invalid_argument("bounds do not match the schema");
  }
  std::map<std::string, Instance> classes;
  for_each_size(bounds, [&](const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::string>> ids(s.node_count());
    for (std::size_t d = 0; d < s.node_count(); ++d) ids[d] = index_ids(sizes[d]);
    TableSearch search(s, sizes);
    search.run([&](const ElemTable& tables) {
      Instance raw(schema, ids, tables);
      CanonicalCopy copy = canonical_instance(raw);
      classes.try_emplace(copy.form.bytes, copy.instance);
    });
  });
  std::vector<UniverseEntry> out;
  out.reserve(classes.size());
  for (auto& [bytes, inst] : classes) out.push_back({CanonicalForm{s.name(), bytes}, inst});
  return out;
}

}  // namespace decat
