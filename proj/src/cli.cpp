#include "topomono/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "topomono/catalog.hpp"
#include "topomono/error.hpp"
#include "topomono/preorder.hpp"
#include "topomono/random.hpp"
#include "topomono/trace_identities.hpp"

namespace topomono {

namespace {

// ---- text rendering ----

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool is_flat(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) {
           return is_scalar(e) || (e.is_array() && std::all_of(e.begin(), e.end(), is_scalar));
         });
}

// Arrays of arrays print one row per line, whatever the row length.
bool is_matrix(const Json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_array() && is_flat(e); });
}

std::string inline_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render(const Json& j, int indent, std::ostream& os);

void render_field(const std::string& key, const Json& v, int indent, std::ostream& os) {
  const std::string pad(indent, ' ');
  if (is_matrix(v)) {
    os << pad << key << ":\n";
    for (const auto& row : v) os << pad << "  " << row.dump() << "\n";
  } else if (is_scalar(v) || is_flat(v)) {
    os << pad << key << ": " << inline_value(v) << "\n";
  } else {
    os << pad << key << ":\n";
    render(v, indent + 2, os);
  }
}

void render(const Json& j, int indent, std::ostream& os) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    if (j.empty()) os << pad << "(none)\n";
    for (auto it = j.begin(); it != j.end(); ++it) render_field(it.key(), it.value(), indent, os);
  } else if (j.is_array()) {
    if (j.empty()) os << pad << "(none)\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_scalar(j[i]) || is_flat(j[i])) {
        os << pad << "- " << inline_value(j[i]) << "\n";
      } else {
        os << pad << "- [" << i << "]\n";
        render(j[i], indent + 2, os);
      }
    }
  } else {
    os << pad << inline_value(j) << "\n";
  }
}

// ---- report pieces ----

Json labels_json(const ModularData& md) { return md.ring().names(); }

Json certificate_json(const MonotoneCertificate& c) {
  Json j;
  j["mode"] = c.mode;
  if (c.M) j["M"] = to_json(*c.M);
  if (c.N) j["N"] = to_json(*c.N);
  if (c.X) j["X"] = to_json(*c.X);
  if (c.Y) {
    j["Y"] = to_json(*c.Y);
    // The preorder is stated as S2 = X S1 Y'^T; Y' = Y^T.
    j["Y_preorder"] = to_json(Eigen::MatrixXd(c.Y->transpose()));
  }
  Json r = Json::object();
  for (const auto& [k, v] : c.residuals) r[k] = v;
  j["residuals"] = std::move(r);
  return j;
}

Json preorder_json(const PreorderResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["solutions_found"] = r.solutions_found;
  j["candidates_examined"] = r.candidates_examined;
  if (r.obstruction) {
    const auto& o = *r.obstruction;
    j["obstruction"] = {{"mode", o.mode},
                        {"entry_bound", o.entry_bound},
                        {"row_dimension_cap", o.row_dimension_cap},
                        {"exhaustive", o.exhaustive},
                        {"reason", o.reason}};
  } else {
    j["obstruction"] = nullptr;
  }
  if (!r.note.empty()) j["note"] = r.note;
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_json(c));
  j["certificates"] = std::move(certs);
  return j;
}

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::feasible: return kExitOk;
    case Verdict::obstructed: return kExitNegative;
    case Verdict::unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int exit_for(CombinedVerdict v) {
  switch (v) {
    case CombinedVerdict::no_obstruction: return kExitOk;
    case CombinedVerdict::obstructed: return kExitNegative;
    case CombinedVerdict::unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

Json report_json(const ValidationReport& rep) {
  return {{"valid", rep.ok()}, {"violations", rep.violations}, {"warnings", rep.warnings}};
}

// ---- options ----

struct Globals {
  std::optional<double> tol;
  std::string output = "text";
  bool timing = false;
};

struct CatalogArgs {
  std::string name;
  std::string out;
};

struct ModelArgs {
  std::string file;
  bool strict = false;
  std::size_t samples = 100;
  std::uint64_t seed = kDefaultSeed;
};

struct TransportArgs {
  std::string functor;
  std::string deform = "given";
  std::uint64_t seed = kDefaultSeed;
};

struct PreorderArgs {
  std::string source;
  std::string target;
  std::string mode = "full";
  int bound = 6;
  std::uint64_t seed = kDefaultSeed;
  int multistart = 8;
  int iterations = 400;
  std::size_t max_certificates = 16;
};

double model_tol(const Globals& g) { return g.tol ? *g.tol : default_tolerance(); }

ModularData load_with_tol(const std::string& spec, const Globals& g, bool validate = true) {
  auto md = load_model(spec, validate);
  return g.tol ? md.with_tolerance(*g.tol) : md;
}

// ---- commands ----

int cmd_catalog_list(Json& result) {
  Json models = Json::array();
  for (const auto& name : catalog_names()) {
    const auto md = resolve_catalog(name);
    models.push_back({{"name", name},
                      {"rank", md.rank()},
                      {"modular", catalog_is_modular(name)},
                      {"global_dim_sq", md.global_dim_sq()},
                      {"labels", labels_json(md)}});
  }
  result["models"] = std::move(models);
  return kExitOk;
}

int cmd_validate(const ModelArgs& a, const Globals& g, Json& config, Json& result) {
  config["strict"] = a.strict;
  config["tolerance"] = model_tol(g);
  std::error_code ec;
  if (std::filesystem::is_regular_file(a.file, ec)) {
    const auto doc = read_json_file(a.file);
    if (doc.is_object() && doc.value("format", "") == "topomono-functor") {
      const auto fd = load_functor(a.file);
      result["kind"] = "functor";
      result["source"] = fd.source.name();
      result["target"] = fd.target.name();
      const auto rep = validate_functor(fd, {.tolerance = model_tol(g)});
      result.update(report_json(rep));
      return rep.ok() ? kExitOk : kExitNegative;
    }
  }
  const auto md = load_with_tol(a.file, g, false);
  result["kind"] = "category";
  result["name"] = md.name();
  result["rank"] = md.rank();
  const auto rep = validate_modular_data(md, a.strict);
  result.update(report_json(rep));
  return rep.ok() ? kExitOk : kExitNegative;
}

int cmd_invariants(const ModelArgs& a, const Globals& g, Json& config, Json& result) {
  config["tolerance"] = model_tol(g);
  const auto md = load_with_tol(a.file, g);
  result["name"] = md.name();
  result["labels"] = labels_json(md);
  result["dims"] = to_json(md.dims());
  result["global_dim_sq"] = md.global_dim_sq();
  result["theta"] = to_json(md.theta());
  result["S"] = to_json(md.S());
  result["modular"] = validate_modular_data(md, true).ok();
  return kExitOk;
}

int cmd_verify(const ModelArgs& a, const Globals& g, Json& config, Json& result) {
  const double tol = g.tol ? *g.tol : 1e-8;
  config["samples"] = a.samples;
  config["seed"] = a.seed;
  config["tolerance"] = tol;
  const auto md = load_with_tol(a.file, g);
  const auto suite = run_trace_identity_suite(md, a.samples, a.seed, tol);
  result["name"] = md.name();
  result["pointed"] = suite.pointed;
  Json checks = Json::array();
  for (const auto& c : suite.checks)
    checks.push_back({{"name", c.name},
                      {"agreed", std::to_string(c.agreed) + "/" + std::to_string(c.total)},
                      {"max_error", c.max_error},
                      {"pass", c.pass()}});
  result["checks"] = std::move(checks);
  if (!suite.pointed)
    result["note"] =
        "not every simple is invertible: identities are checked internally, without the explicit "
        "contraction path";
  result["all_pass"] = suite.all_pass();
  return suite.all_pass() ? kExitOk : kExitNegative;
}

int cmd_transport(const TransportArgs& a, const Globals& g, Json& config, Json& result) {
  const double tol = g.tol ? *g.tol : 1e-8;
  config["deform"] = a.deform;
  if (a.deform == "random") config["seed"] = a.seed;
  config["tolerance"] = tol;
  auto fd = load_functor(a.functor);
  result["source"] = fd.source.name();
  result["target"] = fd.target.name();
  result["source_labels"] = labels_json(fd.source);
  result["target_labels"] = labels_json(fd.target);
  result["M"] = to_json(fd.M);

  const FunctorCheckOptions fopts{.tolerance = tol};
  const auto rep = validate_functor(fd, fopts);
  if (!rep.ok()) {
    result["functor"] = report_json(rep);
    return kExitNegative;
  }
  if (a.deform == "none") {
    fd = fd.with_deformations({});
  } else if (a.deform == "random") {
    Rng rng(a.seed);
    std::vector<std::optional<Blocks>> defs;
    for (std::size_t z = 0; z < fd.source.rank(); ++z)
      defs.emplace_back(random_unitary_deformation(fd.image(z), rng).T().blocks());
    fd = fd.with_deformations(std::move(defs));
  }
  const auto tr = transport_matrices(fd, fopts);
  const auto check = verify_theorem(tr, fd, tol);
  result["X"] = to_json(tr.X);
  result["Y"] = to_json(tr.Y);
  result["N"] = to_json(tr.N);
  result["residuals"] = {{"s_relation", tr.residuals.s_relation},
                         {"x_dims", tr.residuals.x_dims},
                         {"y_dims", tr.residuals.y_dims},
                         {"twist", tr.residuals.twist}};
  Json checks = Json::array();
  for (const auto& c : check.checks)
    checks.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}});
  result["checks"] = std::move(checks);
  result["all_pass"] = check.all_pass();
  return check.all_pass() ? kExitOk : kExitNegative;
}

int cmd_preorder(const PreorderArgs& a, const Globals& g, Json& config, Json& result) {
  const double tol = model_tol(g);
  config["mode"] = a.mode;
  config["tolerance"] = tol;
  config["bound"] = a.bound;
  config["max_certificates"] = a.max_certificates;
  if (a.mode == "s" || a.mode == "full") {
    config["seed"] = a.seed;
    config["multistart"] = a.multistart;
    config["iterations"] = a.iterations;
  }
  const auto md2 = load_with_tol(a.source, g);
  const auto md1 = load_with_tol(a.target, g);
  result["source"] = md2.name();
  result["target"] = md1.name();
  result["orientation"] = "source = degraded state, target = clean state";

  FullConfig fc;
  fc.twist.bound = a.bound;
  fc.twist.max_certificates = a.max_certificates;
  fc.twist.tolerance = tol;
  fc.functor.bound = a.bound;
  fc.functor.max_certificates = a.max_certificates;
  fc.functor.tolerance = tol;
  fc.s.seed = a.seed;
  fc.s.multistart = a.multistart;
  fc.s.iterations = a.iterations;
  fc.s.tolerance = tol;
  fc.s.functor = fc.functor;

  if (a.mode == "twist") {
    const auto r = check_twist_preorder(md2.theta(), md2.dims(), md1.theta(), md1.dims(), fc.twist);
    result["twist"] = preorder_json(r);
    return exit_for(r.verdict);
  }
  if (a.mode == "functor") {
    const auto r = check_functor_search(md2, md1, fc.functor);
    result["functor"] = preorder_json(r);
    return exit_for(r.verdict);
  }
  if (a.mode == "s") {
    auto so = fc.s;
    so.structured = false;
    const auto r = check_s_preorder(md2, md1, so);
    result["s"] = preorder_json(r);
    return exit_for(r.verdict);
  }
  const auto rep = check_preorder_full(md2, md1, fc);
  result["verdict"] = to_string(rep.verdict);
  result["statement"] = rep.statement;
  result["twist"] = preorder_json(rep.twist);
  result["functor"] = preorder_json(rep.functor);
  result["s"] = preorder_json(rep.s);
  return exit_for(rep.verdict);
}

void emit(const Json& report, const Globals& g, std::ostream& out) {
  if (g.output == "machine")
    out << pretty_json(report) << "\n";
  else
    render_text(report, out);
}

}  // namespace

void render_text(const Json& report, std::ostream& os) { render(report, 0, os); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotone checks for modular data under finite-depth channels", "topomono"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Numerical tolerance (default 1e-9, or TOPOMONO_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--timing", g.timing, "Include wall-clock time in the report");

  CatalogArgs cat;
  auto* catalog = app.add_subcommand("catalog", "Built-in models");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "List built-in models");
  auto* cat_export = catalog->add_subcommand("export", "Write a built-in model as a category file");
  cat_export->add_option("name", cat.name, "Catalog name or spec")->required();
  cat_export->add_option("--out", cat.out, "Output file (default: stdout)");

  ModelArgs model;
  auto* validate = app.add_subcommand("validate", "Validate a category or functor file");
  validate->add_option("file", model.file, "File or catalog spec")->required();
  validate->add_flag("--strict", model.strict, "Also check modularity and the Verlinde formula");

  auto* invariants = app.add_subcommand("invariants", "Print S, theta, d and D^2");
  invariants->add_option("file", model.file, "File or catalog spec")->required();

  auto* verify = app.add_subcommand("verify-lemmas", "Randomized trace-identity suite");
  verify->add_option("file", model.file, "File or catalog spec")->required();
  verify->add_option("--samples", model.samples, "Random draws")->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", model.seed, "Random seed");

  TransportArgs ta;
  auto* transport = app.add_subcommand("transport", "Transport solutions through a functor");
  transport->add_option("--functor", ta.functor, "Functor file")->required();
  transport->add_option("--deform", ta.deform, "Deformations: as given in the file, none, or random unitary")
      ->check(CLI::IsMember({"given", "none", "random"}));
  transport->add_option("--seed", ta.seed, "Random seed for --deform random");

  PreorderArgs pa;
  auto* preorder = app.add_subcommand("check-preorder", "Check whether source can follow from target");
  preorder->add_option("--source", pa.source, "Degraded state's category (file or catalog spec)")
      ->required();
  preorder->add_option("--target", pa.target, "Clean state's category (file or catalog spec)")
      ->required();
  preorder->add_option("--mode", pa.mode, "Which check")
      ->check(CLI::IsMember({"twist", "s", "functor", "full"}));
  preorder->add_option("--bound", pa.bound, "Entry bound")->check(CLI::Range(1, 64));
  preorder->add_option("--seed", pa.seed, "Seed for the S-matrix heuristic");
  preorder->add_option("--multistart", pa.multistart, "Heuristic restarts")->check(CLI::Range(1, 10000));
  preorder->add_option("--iters", pa.iterations, "Heuristic iterations per start")
      ->check(CLI::Range(1, 1000000));
  preorder->add_option("--max-certificates", pa.max_certificates, "Certificates to report")
      ->check(CLI::Range(1, 100000));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
        out << sub->help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Json report;
  report["argv"] = args;
  Json config = Json::object();
  Json result = Json::object();
  std::string command;
  int code = kExitUsage;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (catalog->parsed()) {
      if (cat_list->parsed()) {
        command = "catalog list";
        code = cmd_catalog_list(result);
      } else {
        command = "catalog export";
        const auto md = resolve_catalog(cat.name);
        const auto doc = category_to_json(md, "catalog:" + cat.name);
        if (cat.out.empty()) {
          out << pretty_json(doc) << "\n";
          return kExitOk;
        }
        std::ofstream f(cat.out);
        if (!f) throw InputError(cat.out + ": cannot write file");
        f << pretty_json(doc) << "\n";
        result["written"] = cat.out;
        result["name"] = md.name();
        code = kExitOk;
      }
    } else if (validate->parsed()) {
      command = "validate";
      code = cmd_validate(model, g, config, result);
    } else if (invariants->parsed()) {
      command = "invariants";
      code = cmd_invariants(model, g, config, result);
    } else if (verify->parsed()) {
      command = "verify-lemmas";
      code = cmd_verify(model, g, config, result);
    } else if (transport->parsed()) {
      command = "transport";
      code = cmd_transport(ta, g, config, result);
    } else if (preorder->parsed()) {
      command = "check-preorder";
      code = cmd_preorder(pa, g, config, result);
    }
  } catch (const ResourceError& e) {
    result["error"] = e.what();
    result["verdict"] = "UNKNOWN";
    code = kExitUnknown;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (g.output == "machine") {
      Json j;
      j["command"] = command;
      j["argv"] = args;
      j["error"] = e.what();
      j["exit_code"] = kExitUsage;
      out << pretty_json(j) << "\n";
    }
    return kExitUsage;
  }

  Json full;
  full["command"] = command;
  full["argv"] = args;
  full["config"] = std::move(config);
  full["result"] = std::move(result);
  full["exit_code"] = code;
  if (g.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    full["timing_ms"] = ms.count();
  }
  emit(full, g, out);
  return code;
}

}  // namespace topomono
