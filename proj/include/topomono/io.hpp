#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "topomono/error.hpp"
#include "topomono/functor.hpp"
#include "topomono/modular_data.hpp"

namespace topomono {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Load failure carrying the violated invariants.
class ValidationError : public InputError {
 public:
  ValidationError(const std::string& what, ValidationReport report)
      : InputError(what), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Parses a category document without validating it. The vacuum is moved to
/// index 0; a missing dual permutation is derived from N_{ab}^0.
/// `where` prefixes diagnostics (usually the file name).
ModularData parse_category(const Json& doc, const std::string& where = "category");

/// parse_category followed by non-strict validation (ValidationError on failure).
ModularData category_from_json(const Json& doc, const std::string& where = "category");

Json category_to_json(const ModularData& md, const std::string& provenance = {});

ModularData load_category(const std::filesystem::path& path);
ModularData load_category_unchecked(const std::filesystem::path& path);
void save_category(const ModularData& md, const std::filesystem::path& path,
                   const std::string& provenance = {});

/// An existing file path, else a catalog spec (see resolve_catalog).
ModularData load_model(const std::string& path_or_spec, bool validate = true);

TensorFunctorData parse_functor(const Json& doc, const std::filesystem::path& base_dir,
                                const std::string& where = "functor");
TensorFunctorData load_functor(const std::filesystem::path& path);
Json functor_to_json(const TensorFunctorData& fd, const Json& source_ref, const Json& target_ref);

/// Indented JSON with short numeric arrays kept on one line (rows of a
/// matrix, [re, im] pairs). Numbers use the shortest round-trip form.
std::string pretty_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

/// Default tolerance, overridable with the TOPOMONO_TOL environment variable.
double default_tolerance();

Json complex_to_json(cplx z);
Json to_json(const Eigen::MatrixXd& M);
Json to_json(const Eigen::MatrixXi& M);
Json to_json(const Eigen::MatrixXcd& M);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::VectorXcd& v);

}  // namespace topomono
