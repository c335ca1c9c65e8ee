#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "topomono/catalog.hpp"
#include "topomono/error.hpp"
#include "topomono/io.hpp"

using namespace topomono;

namespace {

bool identical(const ModularData& a, const ModularData& b) {
  return a.ring() == b.ring() && a.S() == b.S() && a.theta() == b.theta() && a.dims() == b.dims() &&
         a.tolerance() == b.tolerance() && a.name() == b.name();
}

std::string error_of(const Json& doc) {
  try {
    category_from_json(doc, "doc");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

Json z2_doc() {
  return Json::parse(R"({
    "format": "topomono-category", "format_version": 1, "name": "z2",
    "ring": {"labels": ["e", "1"], "vacuum": "1",
             "fusion": [["1","1","1",1], ["1","e","e",1], ["e","1","e",1], ["e","e","1",1]]},
    "modular": {"S": [[[1,0],[1,0]], [[1,0],[1,0]]], "theta": [[1,0], [1,0]]}
  })");
}

}  // namespace

TEST_CASE("catalog models round-trip exactly") {
  const auto dir = std::filesystem::temp_directory_path() / "topomono_io_test";
  std::filesystem::create_directories(dir);
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const auto md = resolve_catalog(name);
    CHECK(identical(category_from_json(category_to_json(md)), md));
    const auto path = dir / "model.json";
    save_category(md, path, "test");
    CHECK(identical(load_category(path), md));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("vacuum is moved to index 0 and duals are derived") {
  const auto md = category_from_json(z2_doc());
  CHECK(md.ring().name(0) == "1");
  CHECK(md.ring().name(1) == "e");
  CHECK(md.ring().dual(1) == 1);
  CHECK(md.dims()(1) == doctest::Approx(1));
  CHECK(md.name() == "z2");
}

TEST_CASE("undetermined dual is an error") {
  auto doc = z2_doc();
  doc["ring"]["fusion"] = Json::parse(R"([["1","1","1",1], ["1","e","e",1], ["e","1","e",1]])");
  const auto msg = error_of(doc);
  CHECK(msg.find("dual of 'e'") != std::string::npos);
}

TEST_CASE("explicit duals are honoured") {
  const auto md = resolve_catalog("toric_code_z3");
  auto doc = category_to_json(md);
  CHECK(identical(category_from_json(doc), md));
  doc["ring"].erase("dual");
  CHECK(category_from_json(doc).ring() == md.ring());
}

TEST_CASE("validation failures name the entry") {
  auto doc = category_to_json(resolve_catalog("toric_code_z2"));
  doc["modular"]["S"][0][1] = Json::array({2, 0});
  const auto msg = error_of(doc);
  CHECK(msg.find("S[1,e]") != std::string::npos);
  try {
    category_from_json(doc);
  } catch (const ValidationError& e) {
    CHECK_FALSE(e.report().ok());
  }
}

TEST_CASE("parse errors carry the field path") {
  auto doc = z2_doc();
  doc["ring"]["fusion"][0][1] = "x";
  CHECK(error_of(doc).find("$.ring.fusion[0][1]: unknown label 'x'") != std::string::npos);

  doc = z2_doc();
  doc["modular"]["theta"] = Json::array({1});
  CHECK(error_of(doc).find("$.modular.theta") != std::string::npos);

  doc = z2_doc();
  doc["format_version"] = 2;
  CHECK(error_of(doc).find("format version") != std::string::npos);

  doc = z2_doc();
  doc["ring"]["fusion"].push_back(Json::array({"e", "e", "1", 1}));
  CHECK(error_of(doc).find("duplicate fusion entry") != std::string::npos);

  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("functor files") {
  const auto fd = load_functor(std::filesystem::path(TOPOMONO_DOCS_DIR) / "e-embed.json");
  CHECK(fd.source.name() == "decohered_toric_code");
  CHECK(fd.target.name() == "toric_code_z2");
  CHECK(fd.M.rows() == 2);
  REQUIRE(fd.deformations[1]);
  CHECK((*fd.deformations[1])[1](0, 0) == cplx(0, 1));
  CHECK_FALSE(fd.deformations[0]);

  const auto doc = functor_to_json(fd, "decohered_toric_code", "toric_code_z2");
  const auto again = parse_functor(doc, TOPOMONO_DOCS_DIR);
  CHECK(again.M == fd.M);
  CHECK((*again.deformations[1])[1] == (*fd.deformations[1])[1]);

  auto bad = doc;
  bad["deformations"]["q"] = Json::object();
  CHECK_THROWS_WITH_AS(parse_functor(bad, "."), doctest::Contains("unknown source label"), InputError);
  bad = doc;
  bad["M"][0] = Json::array({1, 0, 0});
  CHECK_THROWS_AS(parse_functor(bad, "."), InputError);
}

TEST_CASE("compact JSON keeps full precision") {
  const auto md = resolve_catalog("fibonacci");
  const auto text = pretty_json(category_to_json(md));
  CHECK(identical(category_from_json(Json::parse(text)), md));
}

TEST_CASE("tolerance from the environment") {
  CHECK(default_tolerance() == kDefaultTolerance);
  setenv("TOPOMONO_TOL", "1e-6", 1);
  CHECK(default_tolerance() == 1e-6);
  CHECK(load_model("semion").tolerance() == 1e-6);
  setenv("TOPOMONO_TOL", "junk", 1);
  CHECK_THROWS_AS(default_tolerance(), InputError);
  unsetenv("TOPOMONO_TOL");
}
