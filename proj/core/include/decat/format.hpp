#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "decat/morphism.hpp"

namespace decat {

// Syntax error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct NamedInstance {
  std::string name;
  Instance instance;
};

struct NamedMorphism {
  std::string name;
  std::string source;  // instance names within the same document
  std::string target;
  Morphism morphism;
};

// Schema, instance and morphism declarations in file order:
//
//   schema <name> { node <id>; arrow <id>: <src> -> <tgt>; relation <path> = <path>; }
//   instance <name> : <schema> { <node> = {e1, e2}; <arrow> = {e1->x1, e2->x2}; }
//   morphism <name> : <instance> -> <instance> { <node> = {e1->x1, ...}; }
//
// Paths are "a.b.c" (left to right) or "id@<node>". '#' starts a line comment.
// Instances and morphisms are parsed but not validated; callers run
// validate_instance / validate_morphism.
struct Document {
  std::vector<SchemaRef> schemas;
  std::vector<NamedInstance> instances;
  std::vector<NamedMorphism> morphisms;

  const NamedInstance* find_instance(std::string_view name) const;
};

// Maps a schema name not declared in the document to a schema, or nullptr.
using SchemaResolver = std::function<SchemaRef(const std::string&)>;

// Builtin schemas only.
SchemaResolver builtin_resolver();

// Builtins, then "<name>.schema" in `dir`, then in "<dir>/../schemas".
SchemaResolver file_resolver(const std::filesystem::path& dir);

Document parse_document(std::string_view text, const SchemaResolver& resolver = builtin_resolver());

// Reads and parses a file; schemas resolve next to it. Throws
// std::runtime_error if the file cannot be read.
Document load_document(const std::filesystem::path& file);

std::string print_schema(const Schema& schema);
std::string print_instance(const Instance& instance, std::string_view name);
std::string print_morphism(const Morphism& m, std::string_view name, std::string_view source,
                           std::string_view target);

}  // namespace decat
