#include "decat/format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "decat/presets.hpp"

namespace decat {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

const NamedInstance* Document::find_instance(std::string_view name) const {
  for (const auto& ni : instances) {
    if (ni.name == name) return &ni;
  }
  return nullptr;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool elem_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '.': case ':': case '<': case '>': case '|': case '*': case '\'':
    case '+': case '/': case '^': case '~': case '!': case '?': case '$': case '%':
    case '&': case '(': case ')': case '[': case ']':
      return true;
    default:
      return false;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const SchemaResolver& resolver) : text_(text), resolver_(resolver) {}

  Document run() {
    skip();
    while (!at_end()) {
      const std::string kw = ident("declaration keyword");
      if (kw == "schema") {
        parse_schema();
      } else if (kw == "instance") {
        parse_instance();
      } else if (kw == "morphism") {
        parse_morphism();
      } else {
        fail_back(kw.size(), "expected 'schema', 'instance' or 'morphism', got '" + kw + "'");
      }
      skip();
    }
    return std::move(doc_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }
  [[noreturn]] void fail_at(std::size_t line, std::size_t col, const std::string& msg) const {
    throw ParseError(line, col, msg);
  }
  // Error positioned at a token of length n just consumed on this line.
  [[noreturn]] void fail_back(std::size_t n, const std::string& msg) const {
    throw ParseError(line_, col_ > n ? col_ - n : 1, msg);
  }

  std::string describe_here() const {
    if (at_end()) return "end of input";
    return std::string("'") + peek() + "'";
  }

  std::string ident(const char* what) {
    skip();
    if (!ident_start(peek())) fail(std::string("expected ") + what + ", got " + describe_here());
    std::string out;
    while (!at_end() && ident_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  std::string element() {
    skip();
    if (!elem_char(peek())) fail("expected an element identifier, got " + describe_here());
    std::string out;
    while (!at_end() && elem_char(peek())) {
      out += peek();
      advance();
    }
    return out;
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "', got " + describe_here());
    advance();
  }

  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect_arrow() {
    skip();
    if (peek() != '-' || pos_ + 1 >= text_.size() || text_[pos_ + 1] != '>') {
      fail("expected '->', got " + describe_here());
    }
    advance();
    advance();
  }

  Path parse_path() {
    std::string first = ident("path");
    if (first == "id" && peek() == '@') {
      advance();
      return Path{ident("node after 'id@'"), {}};
    }
    Path p{"", {first}};
    while (peek() == '.') {
      advance();
      p.arrows.push_back(ident("arrow in path"));
    }
    return p;
  }

  void parse_schema() {
    const std::string name = ident("schema name");
    expect('{');
    std::vector<std::string> nodes;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    while (!accept('}')) {
      const std::string kw = ident("'node', 'arrow', 'relation' or '}'");
      if (kw == "node") {
        nodes.push_back(ident("node name"));
      } else if (kw == "arrow") {
        Arrow a;
        a.name = ident("arrow name");
        expect(':');
        a.source = ident("source node");
        expect_arrow();
        a.target = ident("target node");
        arrows.push_back(std::move(a));
      } else if (kw == "relation") {
        Relation r;
        r.lhs = parse_path();
        expect('=');
        r.rhs = parse_path();
        relations.push_back(std::move(r));
      } else {
        fail_back(kw.size(), "expected 'node', 'arrow' or 'relation', got '" + kw + "'");
      }
      expect(';');
    }
    // Non-identity paths start where their first arrow does.
    for (Relation& r : relations) {
      for (Path* p : {&r.lhs, &r.rhs}) {
        if (!p->start.empty()) continue;
        for (const Arrow& a : arrows) {
          if (a.name == p->arrows.front()) p->start = a.source;
        }
      }
    }
    doc_.schemas.push_back(
        make_schema(name, std::move(nodes), std::move(arrows), std::move(relations)));
  }

  SchemaRef resolve(const std::string& name, std::size_t line, std::size_t col) {
    for (auto it = doc_.schemas.rbegin(); it != doc_.schemas.rend(); ++it) {
      if ((*it)->name() == name) return *it;
    }
    SchemaRef s = resolver_ ? resolver_(name) : nullptr;
    if (!s) fail_at(line, col, "unknown schema '" + name + "'");
    return s;
  }

  // { a->b, c->d }
  std::vector<std::pair<std::string, std::string>> parse_pairs() {
    std::vector<std::pair<std::string, std::string>> out;
    expect('{');
    if (accept('}')) return out;
    do {
      std::string x = element();
      expect_arrow();
      std::string y = element();
      out.emplace_back(std::move(x), std::move(y));
    } while (accept(','));
    expect('}');
    return out;
  }

  void parse_instance() {
    const std::string name = ident("instance name");
    expect(':');
    skip();
    const std::size_t line = line_, col = col_;
    const std::string schema_name = ident("schema name");
    SchemaRef schema = resolve(schema_name, line, col);
    if (!schema->valid()) {
      fail_at(line, col, "schema '" + schema_name + "' is invalid: " +
                             schema->validation().violations.front().message);
    }
    expect('{');
    std::map<std::string, std::vector<std::string>> carriers;
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> actions;
    while (!accept('}')) {
      skip();
      const std::size_t kl = line_, kc = col_;
      const std::string key = ident("node or arrow name");
      expect('=');
      if (schema->node_index(key)) {
        if (carriers.count(key)) fail_at(kl, kc, "carrier of '" + key + "' given twice");
        std::vector<std::string> elems;
        expect('{');
        if (!accept('}')) {
          do {
            elems.push_back(element());
          } while (accept(','));
          expect('}');
        }
        carriers[key] = std::move(elems);
      } else if (schema->arrow_index(key)) {
        if (actions.count(key)) fail_at(kl, kc, "action of '" + key + "' given twice");
        actions[key] = parse_pairs();
      } else {
        fail_at(kl, kc, "'" + key + "' is neither a node nor an arrow of '" + schema_name + "'");
      }
      expect(';');
    }
    try {
      doc_.instances.push_back({name, Instance::from_maps(schema, carriers, actions)});
    } catch (const std::invalid_argument& e) {
      fail_at(line, col, std::string("instance '") + name + "': " + e.what());
    }
  }

  void parse_morphism() {
    const std::string name = ident("morphism name");
    expect(':');
    skip();
    const std::size_t line = line_, col = col_;
    const std::string src = ident("source instance");
    expect_arrow();
    const std::string tgt = ident("target instance");
    const NamedInstance* s = doc_.find_instance(src);
    const NamedInstance* t = doc_.find_instance(tgt);
    if (!s) fail_at(line, col, "unknown instance '" + src + "'");
    if (!t) fail_at(line, col, "unknown instance '" + tgt + "'");
    const Instance& from = s->instance;
    const Instance& to = t->instance;
    if (!same_schema(from.schema_ref(), to.schema_ref())) {
      fail_at(line, col, "morphism '" + name + "' joins instances of different schemas");
    }
    const Schema& schema = from.schema();
    ElemTable comps(schema.node_count());
    for (std::size_t d = 0; d < schema.node_count(); ++d) comps[d].assign(from.size(d), kNoElem);
    expect('{');
    while (!accept('}')) {
      skip();
      const std::size_t kl = line_, kc = col_;
      const std::string node = ident("node name");
      auto d = schema.node_index(node);
      if (!d) fail_at(kl, kc, "unknown node '" + node + "'");
      expect('=');
      for (const auto& [x, y] : parse_pairs()) {
        Elem ex = from.find(*d, x);
        if (ex == kNoElem) fail_at(kl, kc, "'" + x + "' is not an element of " + src + "." + node);
        Elem ey = to.find(*d, y);
        if (ey == kNoElem) fail_at(kl, kc, "'" + y + "' is not an element of " + tgt + "." + node);
        comps[*d][ex] = ey;
      }
      expect(';');
    }
    for (std::size_t d = 0; d < schema.node_count(); ++d) {
      for (Elem x = 0; x < from.size(d); ++x) {
        if (comps[d][x] == kNoElem) {
          fail_at(line, col, "morphism '" + name + "' leaves '" + from.id(d, x) + "' at '" +
                                 schema.nodes()[d] + "' unmapped");
        }
      }
    }
    doc_.morphisms.push_back({name, src, tgt, Morphism(from, to, std::move(comps))});
  }

  std::string_view text_;
  const SchemaResolver& resolver_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Document doc_;
};

std::string join_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) out += ", ";
    out += pairs[i].first + "->" + pairs[i].second;
  }
  return out + "}";
}

}  // namespace

SchemaResolver builtin_resolver() {
  return [](const std::string& name) { return builtin_schema(name); };
}

SchemaResolver file_resolver(const std::filesystem::path& dir) {
  return [dir](const std::string& name) -> SchemaRef {
    if (SchemaRef s = builtin_schema(name)) return s;
    for (const auto& candidate :
         {dir / (name + ".schema"), dir / ".." / "schemas" / (name + ".schema")}) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(candidate, ec)) continue;
      std::ifstream in(candidate);
      std::stringstream buf;
      buf << in.rdbuf();
      Document doc = parse_document(buf.str(), builtin_resolver());
      for (const auto& s : doc.schemas) {
        if (s->name() == name) return s;
      }
    }
    return nullptr;
  };
}

Document parse_document(std::string_view text, const SchemaResolver& resolver) {
  return Parser(text, resolver).run();
}

Document load_document(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read '" + file.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), file_resolver(file.parent_path()));
}

std::string print_schema(const Schema& schema) {
  std::ostringstream out;
  out << "schema " << schema.name() << " {\n";
  for (const auto& n : schema.nodes()) out << "  node " << n << ";\n";
  for (const auto& a : schema.arrows()) {
    out << "  arrow " << a.name << ": " << a.source << " -> " << a.target << ";\n";
  }
  for (const auto& r : schema.relations()) {
    out << "  relation " << to_string(r.lhs) << " = " << to_string(r.rhs) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string print_instance(const Instance& instance, std::string_view name) {
  const Schema& s = instance.schema();
  std::ostringstream out;
  out << "instance " << name << " : " << s.name() << " {\n";
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    out << "  " << s.nodes()[d] << " = {";
    for (std::size_t i = 0; i < instance.size(d); ++i) {
      out << (i ? ", " : "") << instance.id(d, static_cast<Elem>(i));
    }
    out << "};\n";
  }
  for (std::size_t a = 0; a < s.arrow_count(); ++a) {
    std::vector<std::pair<std::string, std::string>> pairs;
    const std::size_t from = s.source(a);
    const std::size_t to = s.target(a);
    for (Elem x = 0; x < instance.size(from); ++x) {
      const Elem y = instance.apply(a, x);
      pairs.emplace_back(instance.id(from, x), y < instance.size(to) ? instance.id(to, y) : "?");
    }
    out << "  " << s.arrows()[a].name << " = " << join_pairs(pairs) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string print_morphism(const Morphism& m, std::string_view name, std::string_view source,
                           std::string_view target) {
  const Schema& s = m.source().schema();
  std::ostringstream out;
  out << "morphism " << name << " : " << source << " -> " << target << " {\n";
  for (std::size_t d = 0; d < s.node_count(); ++d) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (Elem x = 0; x < m.source().size(d); ++x) {
      const Elem y = m(d, x);
      pairs.emplace_back(m.source().id(d, x), y < m.target().size(d) ? m.target().id(d, y) : "?");
    }
    out << "  " << s.nodes()[d] << " = " << join_pairs(pairs) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace decat
