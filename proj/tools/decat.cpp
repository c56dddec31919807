// Command-line front end: file validation, hom-sets, decomposition, canonical
// forms, ring arithmetic, profiles, enumeration, marks and the verification
// suites.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "decat/canon.hpp"
#include "decat/enumerate.hpp"
#include "decat/expr.hpp"
#include "decat/format.hpp"
#include "decat/harness.hpp"
#include "decat/hom_search.hpp"
#include "decat/presets.hpp"
#include "decat/ring.hpp"

namespace fs = std::filesystem;
using namespace decat;

namespace {

constexpr std::uint64_t kCandidateLimit = 1000000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string describe(const Violation& v) {
  return v.kind + ": " + v.message;
}

void require_valid_instance(const NamedInstance& ni) {
  ValidationResult r = validate_instance(ni.instance);
  if (!r) throw UsageError("instance '" + ni.name + "' is invalid: " + describe(r.violations.front()));
}

Document load(const std::string& path) {
  if (!fs::is_regular_file(path)) throw UsageError("no such file: " + path);
  try {
    return load_document(path);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

NamedInstance load_instance(const std::string& path) {
  Document doc = load(path);
  if (doc.instances.empty()) throw UsageError(path + ": no instance declared");
  require_valid_instance(doc.instances.front());
  return doc.instances.front();
}

SchemaRef load_schema(const std::string& spec) {
  if (SchemaRef s = builtin_schema(spec)) return s;
  if (fs::is_regular_file(spec)) {
    Document doc = load(spec);
    if (doc.schemas.empty()) throw UsageError(spec + ": no schema declared");
    require_valid(*doc.schemas.front());
    return doc.schemas.front();
  }
  throw UsageError("unknown schema '" + spec + "' (not a builtin and not a file)");
}

// Every instance declared in the *.inst files of a directory.
Definitions load_defs(const std::string& dir) {
  if (!fs::is_directory(dir)) throw UsageError("no such directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".inst") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Definitions defs;
  for (const auto& f : files) {
    Document doc = load(f.string());
    for (auto& ni : doc.instances) {
      require_valid_instance(ni);
      if (!defs.emplace(ni.name, ni.instance).second) {
        throw UsageError("instance '" + ni.name + "' is defined twice in " + dir);
      }
    }
  }
  return defs;
}

Bounds parse_bounds(const Schema& schema, const std::string& text) {
  try {
    return Bounds::parse(schema, text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --upto: ") + e.what());
  }
}

Bounds default_bounds(const Schema& schema) {
  return Bounds::uniform(schema, schema.node_count() == 1 ? 4 : 3);
}

void guard(const Schema& schema, const Bounds& bounds, bool force) {
  const std::uint64_t n = raw_candidate_count(schema, bounds);
  if (n > kCandidateLimit && !force) {
    throw UsageError("bounds " + bounds.to_string(schema) + " admit " + std::to_string(n) +
                     " raw candidates (limit " + std::to_string(kCandidateLimit) +
                     "); pass --force to run anyway");
  }
}

std::string row(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

int cmd_validate(const std::string& path) {
  Document doc;
  try {
    doc = load(path);
  } catch (const std::invalid_argument& e) {
    // Instances over an invalid schema are rejected while parsing.
    std::cout << path << ": " << e.what() << "\n";
    return 1;
  }
  bool ok = true;
  auto report = [&](std::string_view kind, const std::string& name, const ValidationResult& r) {
    if (r) {
      std::cout << kind << " " << name << ": ok\n";
      return;
    }
    ok = false;
    for (const auto& v : r.violations) std::cout << kind << " " << name << ": " << describe(v) << "\n";
  };
  for (const auto& s : doc.schemas) report("schema", s->name(), validate_schema(*s));
  for (const auto& ni : doc.instances) report("instance", ni.name, validate_instance(ni.instance));
  for (const auto& nm : doc.morphisms) report("morphism", nm.name, validate_morphism(nm.morphism));
  return ok ? 0 : 1;
}

int cmd_hom(const std::string& c_path, const std::string& a_path, bool list) {
  const NamedInstance c = load_instance(c_path);
  const NamedInstance a = load_instance(a_path);
  require_same_schema(c.instance.schema_ref(), a.instance.schema_ref(), "hom");
  if (!list) {
    std::cout << count_homs(c.instance, a.instance) << "\n";
    return 0;
  }
  std::size_t i = 0;
  for_each_hom(c.instance, a.instance, [&](const ElemTable& t) {
    Morphism m(c.instance, a.instance, t);
    std::cout << print_morphism(m, "h" + std::to_string(i++), c.name, a.name);
    return true;
  });
  return 0;
}

int cmd_decompose(const std::string& path, const std::optional<std::string>& defs_dir) {
  const NamedInstance x = load_instance(path);
  const std::string dir = defs_dir ? *defs_dir : fs::path(path).parent_path().string();
  const ClassNamer namer(load_defs(dir.empty() ? "." : dir));
  std::map<std::string, std::uint64_t> rows;
  const DecClass cls = class_of(x.instance);
  for (const auto& [form, term] : cls.terms()) rows[namer(form)] += term.coefficient;
  for (const auto& [name, mult] : rows) std::cout << name << " x" << mult << "\n";
  return 0;
}

int cmd_canon(const std::string& path) {
  const NamedInstance x = load_instance(path);
  CanonicalCopy c = canonical_instance(x.instance);
  std::cout << c.form.digest() << "\n" << print_instance(c.instance, x.name);
  return 0;
}

int cmd_eval(const std::string& text, const std::string& defs_dir,
             const std::optional<std::string>& schema) {
  RingExpr e;
  try {
    e = parse_expr(text);
  } catch (const ParseError& err) {
    throw UsageError(std::string("syntax error: ") + err.what());
  }
  const Definitions defs = load_defs(defs_dir);
  RingElement r;
  try {
    r = eval_expr(e, defs, schema ? load_schema(*schema) : nullptr);
  } catch (const EvalError& err) {
    throw UsageError(err.what());
  }
  std::cout << format_element(r, ClassNamer(defs)) << "\n";
  return 0;
}

int cmd_profile(const std::string& path, const std::string& upto, bool force) {
  const NamedInstance x = load_instance(path);
  const Schema& s = x.instance.schema();
  const Bounds b = parse_bounds(s, upto);
  guard(s, b, force);
  std::cout << row(profile(x.instance, build_basis(x.instance.schema_ref(), b)).values) << "\n";
  return 0;
}

int cmd_enumerate(const std::string& schema_name, const std::string& upto, bool force) {
  const SchemaRef s = load_schema(schema_name);
  const Bounds b = parse_bounds(*s, upto);
  guard(*s, b, force);
  const auto universe = enumerate_instances(s, b);
  std::cout << "# " << universe.size() << " instances, bounds " << b.to_string(*s) << "\n";
  for (std::size_t i = 0; i < universe.size(); ++i) {
    std::cout << print_instance(universe[i].representative, "U" + std::to_string(i));
  }
  return 0;
}

int cmd_marks(const std::string& schema_name, const std::string& upto, bool force) {
  const SchemaRef s = load_schema(schema_name);
  const Bounds b = parse_bounds(*s, upto);
  guard(*s, b, force);
  MarksTable t;
  try {
    t = table_of_marks(s, b);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  for (const auto& r : t.marks) std::cout << row({r.begin(), r.end()}) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string schema;
  std::optional<std::string> upto;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::optional<std::string> report;
  bool self_test = false;
  bool force = false;
  bool timing = false;
  bool json = false;
};

int cmd_verify(const VerifyArgs& args) {
  const SchemaRef s = load_schema(args.schema);
  const Bounds b = args.upto ? parse_bounds(*s, *args.upto) : default_bounds(*s);
  guard(*s, b, args.force);

  std::vector<std::string> suites;
  if (args.suite == "all") {
    for (const auto& name : suite_names()) {
      if (name != "burnside" || presents_group(s, b)) suites.push_back(name);
    }
  } else {
    const auto names = suite_names();
    if (std::find(names.begin(), names.end(), args.suite) == names.end()) {
      throw UsageError("unknown suite '" + args.suite + "'");
    }
    suites.push_back(args.suite);
  }

  SuiteOptions options;
  options.seed = args.seed;
  options.trials = args.trials;
  if (args.self_test) options.coproduct = corrupted_coproduct;

  std::vector<VerificationReport> reports;
  for (const auto& name : suites) reports.push_back(run_suite(name, s, b, options));

  Status overall = Status::Pass;
  for (const auto& r : reports) {
    if (r.status() == Status::Fail) overall = Status::Fail;
    if (r.status() == Status::Finding && overall == Status::Pass) overall = Status::Finding;
  }

  auto json_of = [&]() {
    if (reports.size() == 1) return report_json(reports.front(), args.timing);
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      std::string doc = report_json(reports[i], args.timing);
      doc.pop_back();
      out += doc + (i + 1 < reports.size() ? ",\n" : "\n");
    }
    return out + "]\n";
  };

  if (args.json) {
    std::cout << json_of();
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) std::cout << "\n";
      std::cout << report_text(reports[i], args.timing);
    }
    if (reports.size() > 1) std::cout << "\noverall: " << to_string(overall) << "\n";
  }
  if (args.report) {
    std::ofstream out(*args.report);
    if (!out) throw UsageError("cannot write report to " + *args.report);
    out << json_of();
  }
  switch (overall) {
    case Status::Pass: return 0;
    case Status::Finding: return 2;
    case Status::Fail: return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite instances of finitely presented schemas: homs, decomposition, "
               "isomorphism classes and their rings."};
  app.require_subcommand(1);
  std::function<int()> action;

  std::string file, file2, expr, defs_dir, upto, schema;
  std::optional<std::string> opt_defs, opt_schema;
  bool list = false, count = false, force = false;
  VerifyArgs verify;

  auto* validate = app.add_subcommand("validate", "Validate the schemas, instances and morphisms in a file");
  validate->add_option("file", file, "Input file")->required();
  validate->callback([&] { action = [&] { return cmd_validate(file); }; });

  auto* hom = app.add_subcommand("hom", "Count or list the maps between two instances");
  hom->add_option("source", file, "Source instance file")->required();
  hom->add_option("target", file2, "Target instance file")->required();
  auto* count_flag = hom->add_flag("--count", count, "Print #Hom (default)");
  hom->add_flag("--list", list, "Print every map")->excludes(count_flag);
  hom->callback([&] { action = [&] { return cmd_hom(file, file2, list); }; });

  auto* decompose = app.add_subcommand("decompose", "Print connected components with multiplicities");
  decompose->add_option("file", file, "Instance file")->required();
  decompose->add_option("--defs", opt_defs, "Directory of named instances (default: the file's)");
  decompose->callback([&] { action = [&] { return cmd_decompose(file, opt_defs); }; });

  auto* canon = app.add_subcommand("canon", "Print the canonical digest and relabeled instance");
  canon->add_option("file", file, "Instance file")->required();
  canon->callback([&] { action = [&] { return cmd_canon(file); }; });

  auto* eval = app.add_subcommand("eval", "Evaluate a ring expression over named instances");
  eval->add_option("expr", expr, "Expression, e.g. \"A2*A2 - A2\"")->required();
  eval->add_option("--defs", defs_dir, "Directory of *.inst files")->required();
  eval->add_option("--schema", opt_schema, "Schema for expressions without names");
  eval->callback([&] { action = [&] { return cmd_eval(expr, defs_dir, opt_schema); }; });

  auto* prof = app.add_subcommand("profile", "Hom-count profile over the connected basis");
  prof->add_option("file", file, "Instance file")->required();
  prof->add_option("--upto", upto, "Basis bounds, e.g. V=3,E=3")->required();
  prof->add_flag("--force", force, "Ignore the candidate guard");
  prof->callback([&] { action = [&] { return cmd_profile(file, upto, force); }; });

  auto* enumerate = app.add_subcommand("enumerate", "List canonical representatives within bounds");
  enumerate->add_option("--schema", schema, "Builtin name or schema file")->required();
  enumerate->add_option("--upto", upto, "Bounds, e.g. V=3,E=3")->required();
  enumerate->add_flag("--force", force, "Ignore the candidate guard");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(schema, upto, force); }; });

  auto* marks = app.add_subcommand("marks", "Table of marks of a group schema");
  marks->add_option("--schema", schema, "Builtin name or schema file")->required();
  marks->add_option("--upto", upto, "Bounds, e.g. X=6")->required();
  marks->add_flag("--force", force, "Ignore the candidate guard");
  marks->callback([&] { action = [&] { return cmd_marks(schema, upto, force); }; });

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  ver->add_option("--suite", verify.suite, "Suite name or 'all'")->capture_default_str();
  ver->add_option("--schema", verify.schema, "Builtin name or schema file")->required();
  ver->add_option("--upto", verify.upto, "Universe bounds (default 3 per node, 4 for one node)");
  ver->add_option("--seed", verify.seed, "Seed")->capture_default_str();
  ver->add_option("--trials", verify.trials, "Sampled tuples per property")->capture_default_str();
  ver->add_option("--report", verify.report, "Write the JSON report here");
  ver->add_flag("--json", verify.json, "Print JSON instead of text");
  ver->add_flag("--self-test", verify.self_test, "Use a deliberately broken coproduct");
  ver->add_flag("--force", verify.force, "Ignore the candidate guard");
  ver->add_flag("--timing", verify.timing, "Include elapsed time in reports");
  ver->callback([&] { action = [&] { return cmd_verify(verify); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
