#include "topomono/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "topomono/catalog.hpp"

namespace topomono {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& path, const std::string& msg) {
  throw InputError(where + ": " + path + ": " + msg);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where,
                  const std::string& path) {
  if (!obj.is_object()) bad(where, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, path + "." + key, "missing field");
  return *it;
}

cplx parse_complex(const Json& j, const std::string& where, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  bad(where, path, "expected a number or a [re, im] pair");
}

std::size_t label_index(const std::map<std::string, std::size_t>& idx, const Json& j,
                        const std::string& where, const std::string& path) {
  if (!j.is_string()) bad(where, path, "expected a label name");
  auto it = idx.find(j.get<std::string>());
  if (it == idx.end()) bad(where, path, "unknown label '" + j.get<std::string>() + "'");
  return it->second;
}

Eigen::MatrixXcd parse_complex_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols,
                                      const std::string& where, const std::string& path) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    bad(where, path, "expected " + std::to_string(rows) + " rows");
  Eigen::MatrixXcd M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      bad(where, rp, "expected " + std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      M(r, c) = parse_complex(j[r][c], where, rp + "[" + std::to_string(c) + "]");
  }
  return M;
}

void check_version(const Json& doc, const std::string& where) {
  const auto& v = field(doc, "format_version", where, "$");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    bad(where, "$.format_version", "unsupported format version (expected " +
                                        std::to_string(kFormatVersion) + ")");
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Eigen::MatrixXd& M) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Eigen::MatrixXi& M) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Eigen::MatrixXcd& M) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ModularData parse_category(const Json& doc, const std::string& where) {
  if (!doc.is_object()) bad(where, "$", "expected a JSON object");
  check_version(doc, where);
  const auto& ring = field(doc, "ring", where, "$");
  const auto& jl = field(ring, "labels", where, "$.ring");
  if (!jl.is_array() || jl.empty()) bad(where, "$.ring.labels", "expected a nonempty array");
  const std::size_t n = jl.size();
  if (n > kMaxRank) bad(where, "$.ring.labels", "rank exceeds " + std::to_string(kMaxRank));

  std::vector<std::string> old_names;
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = "$.ring.labels[" + std::to_string(i) + "]";
    if (!jl[i].is_string()) bad(where, p, "expected a string");
    const auto s = jl[i].get<std::string>();
    if (s.empty()) bad(where, p, "empty label name");
    if (!idx.emplace(s, i).second) bad(where, p, "duplicate label '" + s + "'");
    old_names.push_back(s);
  }

  std::size_t vac = 0;
  if (ring.contains("vacuum")) vac = label_index(idx, ring["vacuum"], where, "$.ring.vacuum");

  std::vector<int> old_fusion(n * n * n, 0);
  const auto& jf = field(ring, "fusion", where, "$.ring");
  if (!jf.is_array()) bad(where, "$.ring.fusion", "expected an array of [a, b, c, N]");
  for (std::size_t k = 0; k < jf.size(); ++k) {
    const auto p = "$.ring.fusion[" + std::to_string(k) + "]";
    const auto& t = jf[k];
    if (!t.is_array() || t.size() != 4) bad(where, p, "expected [a, b, c, N]");
    const auto a = label_index(idx, t[0], where, p + "[0]");
    const auto b = label_index(idx, t[1], where, p + "[1]");
    const auto c = label_index(idx, t[2], where, p + "[2]");
    if (!t[3].is_number_integer() || t[3].get<int>() < 0)
      bad(where, p + "[3]", "multiplicity must be a nonnegative integer");
    auto& slot = old_fusion[(a * n + b) * n + c];
    if (slot != 0) bad(where, p, "duplicate fusion entry");
    slot = t[3].get<int>();
  }

  std::vector<std::size_t> old_dual(n);
  if (ring.contains("dual")) {
    const auto& jd = ring["dual"];
    if (!jd.is_array() || jd.size() != n)
      bad(where, "$.ring.dual", "expected one label per ring label");
    for (std::size_t i = 0; i < n; ++i)
      old_dual[i] = label_index(idx, jd[i], where, "$.ring.dual[" + std::to_string(i) + "]");
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<std::size_t> hits;
      bool multi = false;
      for (std::size_t b = 0; b < n; ++b) {
        const int m = old_fusion[(a * n + b) * n + vac];
        if (m > 0) hits.push_back(b);
        if (m > 1) multi = true;
      }
      if (hits.size() != 1 || multi)
        bad(where, "$.ring.dual",
            "missing, and the dual of '" + old_names[a] + "' is " +
                (hits.empty() ? "undetermined" : "ambiguous") + " from N_{ab}^vacuum");
      old_dual[a] = hits[0];
    }
  }

  // new index -> old index, vacuum first
  std::vector<std::size_t> perm{vac};
  for (std::size_t i = 0; i < n; ++i)
    if (i != vac) perm.push_back(i);
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;

  std::vector<std::string> names(n);
  std::vector<std::size_t> dual(n);
  std::vector<int> fusion(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = old_names[perm[i]];
    dual[i] = inv[old_dual[perm[i]]];
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        fusion[(a * n + b) * n + c] = old_fusion[(perm[a] * n + perm[b]) * n + perm[c]];
  auto ringp = make_ring(std::move(names), std::move(dual), std::move(fusion));

  const auto& mod = field(doc, "modular", where, "$");
  const auto N = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXcd oldS = parse_complex_matrix(field(mod, "S", where, "$.modular"), N, N,
                                                     where, "$.modular.S");
  const auto& jt = field(mod, "theta", where, "$.modular");
  if (!jt.is_array() || jt.size() != n) bad(where, "$.modular.theta", "expected one entry per label");
  Eigen::MatrixXcd S(N, N);
  Eigen::VectorXcd theta(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    theta(i) = parse_complex(jt[perm[i]], where, "$.modular.theta[" + std::to_string(perm[i]) + "]");
    for (Eigen::Index j = 0; j < N; ++j) S(i, j) = oldS(perm[i], perm[j]);
  }
  Eigen::VectorXd dims(N);
  if (mod.contains("dims")) {
    const auto& jd = mod["dims"];
    if (!jd.is_array() || jd.size() != n) bad(where, "$.modular.dims", "expected one entry per label");
    for (Eigen::Index i = 0; i < N; ++i) {
      if (!jd[perm[i]].is_number())
        bad(where, "$.modular.dims[" + std::to_string(perm[i]) + "]", "expected a number");
      dims(i) = jd[perm[i]].get<double>();
    }
  } else {
    dims = quantum_dims(*ringp);
  }
  double tol = default_tolerance();
  if (mod.contains("tolerance")) {
    if (!mod["tolerance"].is_number() || !(mod["tolerance"].get<double>() > 0))
      bad(where, "$.modular.tolerance", "expected a positive number");
    tol = mod["tolerance"].get<double>();
  }
  std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>()
                                                                     : std::string{};
  return ModularData(std::move(ringp), std::move(S), std::move(theta), std::move(dims), tol,
                     std::move(name));
}

ModularData category_from_json(const Json& doc, const std::string& where) {
  auto md = parse_category(doc, where);
  auto rep = validate_modular_data(md, false);
  if (!rep.ok()) {
    std::string msg = where + ": validation failed:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ValidationError(msg, std::move(rep));
  }
  return md;
}

Json category_to_json(const ModularData& md, const std::string& provenance) {
  const auto& R = md.ring();
  const std::size_t n = R.rank();
  Json doc;
  doc["format"] = "topomono-category";
  doc["format_version"] = kFormatVersion;
  doc["name"] = md.name();
  if (!provenance.empty()) doc["provenance"] = provenance;
  Json ring;
  ring["labels"] = R.names();
  ring["vacuum"] = R.name(0);
  Json dual = Json::array();
  for (std::size_t a = 0; a < n; ++a) dual.push_back(R.name(R.dual(a)));
  ring["dual"] = std::move(dual);
  Json fusion = Json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (R.N(a, b, c) != 0) fusion.push_back(Json::array({R.name(a), R.name(b), R.name(c), R.N(a, b, c)}));
  ring["fusion"] = std::move(fusion);
  doc["ring"] = std::move(ring);
  Json mod;
  mod["S"] = to_json(md.S());
  mod["theta"] = to_json(md.theta());
  mod["dims"] = to_json(md.dims());
  mod["tolerance"] = md.tolerance();
  doc["modular"] = std::move(mod);
  return doc;
}

namespace {

bool inline_array(const Json& j, int depth) {
  if (!j.is_array()) return !j.is_object();
  if (depth == 0) return false;
  return std::all_of(j.begin(), j.end(), [&](const Json& e) { return inline_array(e, depth - 1); });
}

void pretty(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && (!inline_array(j, 2) || j.dump().size() > 100)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      pretty(j[i], indent + 2, out);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      pretty(j[i], indent, out);
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty_json(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": parse error: " + e.what());
  }
}

ModularData load_category(const std::filesystem::path& path) {
  return category_from_json(read_json_file(path), path.string());
}

ModularData load_category_unchecked(const std::filesystem::path& path) {
  return parse_category(read_json_file(path), path.string());
}

void save_category(const ModularData& md, const std::filesystem::path& path,
                   const std::string& provenance) {
  std::ofstream out(path);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << pretty_json(category_to_json(md, provenance)) << "\n";
}

ModularData load_model(const std::string& path_or_spec, bool validate) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_spec, ec))
    return validate ? load_category(path_or_spec) : load_category_unchecked(path_or_spec);
  auto md = resolve_catalog(path_or_spec);
  const double tol = default_tolerance();
  return tol == md.tolerance() ? md : md.with_tolerance(tol);
}

namespace {

ModularData resolve_ref(const Json& ref, const std::filesystem::path& base,
                        const std::string& where, const std::string& path) {
  if (ref.is_string()) {
    const auto s = ref.get<std::string>();
    std::error_code ec;
    const auto p = base / s;
    if (std::filesystem::is_regular_file(p, ec)) return load_category(p);
    try {
      return load_model(s);
    } catch (const InputError& e) {
      bad(where, path, e.what());
    }
  }
  if (ref.is_object()) return category_from_json(ref, where + ": " + path);
  bad(where, path, "expected a catalog name, a file name or an inline category");
}

}  // namespace

TensorFunctorData parse_functor(const Json& doc, const std::filesystem::path& base_dir,
                                const std::string& where) {
  if (!doc.is_object()) bad(where, "$", "expected a JSON object");
  check_version(doc, where);
  auto source = resolve_ref(field(doc, "source", where, "$"), base_dir, where, "$.source");
  auto target = resolve_ref(field(doc, "target", where, "$"), base_dir, where, "$.target");
  const auto r2 = static_cast<Eigen::Index>(source.rank());
  const auto r1 = static_cast<Eigen::Index>(target.rank());

  const auto& jm = field(doc, "M", where, "$");
  if (!jm.is_array() || static_cast<Eigen::Index>(jm.size()) != r2)
    bad(where, "$.M", "expected " + std::to_string(r2) + " rows (one per source label)");
  Eigen::MatrixXi M(r2, r1);
  for (Eigen::Index z = 0; z < r2; ++z) {
    const auto p = "$.M[" + std::to_string(z) + "]";
    if (!jm[z].is_array() || static_cast<Eigen::Index>(jm[z].size()) != r1)
      bad(where, p, "expected " + std::to_string(r1) + " entries (one per target label)");
    for (Eigen::Index a = 0; a < r1; ++a) {
      if (!jm[z][a].is_number_integer() || jm[z][a].get<int>() < 0)
        bad(where, p + "[" + std::to_string(a) + "]", "expected a nonnegative integer");
      M(z, a) = jm[z][a].get<int>();
    }
  }

  std::vector<std::optional<Blocks>> defs(source.rank());
  if (doc.contains("deformations")) {
    const auto& jd = doc["deformations"];
    if (!jd.is_object()) bad(where, "$.deformations", "expected an object keyed by source label");
    for (auto it = jd.begin(); it != jd.end(); ++it) {
      const auto p = "$.deformations." + it.key();
      std::size_t z = 0;
      try {
        z = source.ring().index_of(it.key());
      } catch (const InputError&) {
        bad(where, p, "unknown source label");
      }
      if (!it.value().is_object()) bad(where, p, "expected an object keyed by target label");
      Blocks blocks;
      for (Eigen::Index a = 0; a < r1; ++a)
        blocks.push_back(Eigen::MatrixXcd::Identity(M(z, a), M(z, a)));
      for (auto bt = it.value().begin(); bt != it.value().end(); ++bt) {
        std::size_t a = 0;
        try {
          a = target.ring().index_of(bt.key());
        } catch (const InputError&) {
          bad(where, p + "." + bt.key(), "unknown target label");
        }
        blocks[a] = parse_complex_matrix(bt.value(), M(z, a), M(z, a), where, p + "." + bt.key());
      }
      defs[z] = std::move(blocks);
    }
  }
  return TensorFunctorData(std::move(source), std::move(target), std::move(M), std::move(defs));
}

TensorFunctorData load_functor(const std::filesystem::path& path) {
  return parse_functor(read_json_file(path), path.parent_path(), path.string());
}

Json functor_to_json(const TensorFunctorData& fd, const Json& source_ref, const Json& target_ref) {
  Json doc;
  doc["format"] = "topomono-functor";
  doc["format_version"] = kFormatVersion;
  doc["source"] = source_ref;
  doc["target"] = target_ref;
  doc["M"] = to_json(fd.M);
  Json defs = Json::object();
  for (std::size_t z = 0; z < fd.deformations.size(); ++z) {
    if (!fd.deformations[z]) continue;
    Json per = Json::object();
    for (std::size_t a = 0; a < fd.target.rank(); ++a)
      if ((*fd.deformations[z])[a].size() > 0)
        per[fd.target.ring().name(a)] = to_json((*fd.deformations[z])[a]);
    defs[fd.source.ring().name(z)] = std::move(per);
  }
  if (!defs.empty()) doc["deformations"] = std::move(defs);
  return doc;
}

double default_tolerance() {
  if (const char* env = std::getenv("TOPOMONO_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0) return v;
    throw InputError("TOPOMONO_TOL must be a positive number, got '" + std::string(env) + "'");
  }
  return kDefaultTolerance;
}

}  // namespace topomono
