#include "decat/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <vector>

#include "decat/constructions.hpp"

namespace decat {

namespace {

struct Token {
  enum class Type { Nat, Ident, Plus, Minus, Star, LParen, RParen, End };
  Type type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    const std::size_t l = line, cc = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
        throw ParseError(l, cc, "identifiers cannot start with a digit");
      }
      out.push_back({Token::Type::Nat, std::string(s.substr(i, j - i)), l, cc});
      bump(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Type::Ident, std::string(s.substr(i, j - i)), l, cc});
      bump(j - i);
    } else {
      Token::Type t;
      switch (c) {
        case '+': t = Token::Type::Plus; break;
        case '-': t = Token::Type::Minus; break;
        case '*': t = Token::Type::Star; break;
        case '(': t = Token::Type::LParen; break;
        case ')': t = Token::Type::RParen; break;
        default:
          throw ParseError(l, cc, std::string("unexpected character '") + c + "'");
      }
      out.push_back({t, std::string(1, c), l, cc});
      bump(1);
    }
  }
  out.push_back({Token::Type::End, "", line, col});
  return out;
}

class ExprParser {
 public:
  explicit ExprParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  RingExpr parse() {
    RingExpr e = expr();
    if (cur().type != Token::Type::End) fail("expected an operator or end of input");
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = cur();
    const std::string what = t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, msg + ", got " + what);
  }

  static RingExpr binary(RingExpr::Kind kind, RingExpr lhs, RingExpr rhs, const Token& op) {
    RingExpr e;
    e.kind = kind;
    e.line = op.line;
    e.column = op.column;
    e.lhs = std::make_shared<const RingExpr>(std::move(lhs));
    e.rhs = std::make_shared<const RingExpr>(std::move(rhs));
    return e;
  }

  RingExpr expr() {
    RingExpr lhs = term();
    while (cur().type == Token::Type::Plus || cur().type == Token::Type::Minus) {
      const Token op = cur();
      ++pos_;
      lhs = binary(op.type == Token::Type::Plus ? RingExpr::Kind::Add : RingExpr::Kind::Sub,
                   std::move(lhs), term(), op);
    }
    return lhs;
  }

  RingExpr term() {
    RingExpr lhs = atom();
    while (cur().type == Token::Type::Star) {
      const Token op = cur();
      ++pos_;
      lhs = binary(RingExpr::Kind::Mul, std::move(lhs), atom(), op);
    }
    return lhs;
  }

  RingExpr atom() {
    const Token t = cur();
    RingExpr e;
    e.line = t.line;
    e.column = t.column;
    switch (t.type) {
      case Token::Type::Nat: {
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e.value);
        if (ec != std::errc{}) throw ParseError(t.line, t.column, "literal out of range");
        e.kind = RingExpr::Kind::Natural;
        ++pos_;
        return e;
      }
      case Token::Type::Ident:
        e.kind = RingExpr::Kind::Name;
        e.name = t.text;
        ++pos_;
        return e;
      case Token::Type::LParen: {
        ++pos_;
        RingExpr inner = expr();
        if (cur().type != Token::Type::RParen) fail("expected ')'");
        ++pos_;
        return inner;
      }
      default:
        fail("expected a number, a name or '('");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect_names(const RingExpr& e, std::set<std::string>& out) {
  if (e.kind == RingExpr::Kind::Name) out.insert(e.name);
  if (e.lhs) collect_names(*e.lhs, out);
  if (e.rhs) collect_names(*e.rhs, out);
}

RingElement evaluate(const RingExpr& e, const Definitions& defs, const SchemaRef& schema,
                     std::map<std::string, RingElement>& cache) {
  switch (e.kind) {
    case RingExpr::Kind::Natural: {
      if (e.value > static_cast<std::uint64_t>(INT64_MAX)) throw EvalError("literal out of range");
      return ring_scale(ring_one(schema), static_cast<std::int64_t>(e.value));
    }
    case RingExpr::Kind::Name: {
      auto it = cache.find(e.name);
      if (it == cache.end()) {
        it = cache.emplace(e.name, to_ring(class_of(defs.find(e.name)->second))).first;
      }
      return it->second;
    }
    case RingExpr::Kind::Add:
      return ring_add(evaluate(*e.lhs, defs, schema, cache), evaluate(*e.rhs, defs, schema, cache));
    case RingExpr::Kind::Sub:
      return ring_sub(evaluate(*e.lhs, defs, schema, cache), evaluate(*e.rhs, defs, schema, cache));
    case RingExpr::Kind::Mul:
      return ring_mul(evaluate(*e.lhs, defs, schema, cache), evaluate(*e.rhs, defs, schema, cache));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::string RingExpr::to_string() const {
  switch (kind) {
    case Kind::Natural:
      return std::to_string(value);
    case Kind::Name:
      return name;
    case Kind::Add:
      return "(+ " + lhs->to_string() + " " + rhs->to_string() + ")";
    case Kind::Sub:
      return "(- " + lhs->to_string() + " " + rhs->to_string() + ")";
    case Kind::Mul:
      return "(* " + lhs->to_string() + " " + rhs->to_string() + ")";
  }
  return "?";
}

RingExpr parse_expr(std::string_view text) { return ExprParser(tokenize(text)).parse(); }

RingElement eval_expr(const RingExpr& expr, const Definitions& defs, SchemaRef schema) {
  std::set<std::string> names;
  collect_names(expr, names);
  SchemaRef resolved;
  for (const auto& n : names) {
    auto it = defs.find(n);
    if (it == defs.end()) throw EvalError("unresolved identifier '" + n + "'");
    if (!resolved) {
      resolved = it->second.schema_ref();
    } else {
      require_same_schema(resolved, it->second.schema_ref(), "eval_expr '" + n + "'");
    }
  }
  if (!resolved) resolved = std::move(schema);
  if (!resolved) throw EvalError("expression names no instance and no schema was given");
  std::map<std::string, RingElement> cache;
  return evaluate(expr, defs, resolved, cache);
}

ClassNamer::ClassNamer(const Definitions& defs) {
  for (const auto& [name, inst] : defs) {
    if (!is_connected(inst)) continue;
    // Definitions iterate in name order, so the first name seen is the smallest.
    names_.emplace(canonical_form(inst), name);
  }
}

std::string ClassNamer::operator()(const CanonicalForm& form) const {
  auto it = names_.find(form);
  return it == names_.end() ? form.label() : it->second;
}

std::string format_element(const RingElement& r, const ClassNamer& namer) {
  if (r.empty()) return "0";
  std::vector<std::pair<std::string, std::int64_t>> rows;
  for (const auto& [form, term] : r.terms()) rows.emplace_back(namer(form), term.coefficient);
  std::sort(rows.begin(), rows.end());
  std::string out = "{";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += rows[i].first + ": " + std::to_string(rows[i].second);
  }
  return out + "}";
}

}  // namespace decat
