#include <doctest.h>

#include <cstring>
#include <string>

#include "mumford.h"

namespace {
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  mmf_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("version and example names") {
  CHECK(std::string(mmf_version()) == "1.0.0");
  std::string names = take(mmf_example_names());
  CHECK(names.find("tate") != std::string::npos);
  CHECK(names.find("mon-sep") != std::string::npos);
}

TEST_CASE("example handles and describe") {
  char* err = nullptr;
  mmf_data* d = mmf_example("tate", &err);
  REQUIRE(d != nullptr);
  char* out = nullptr;
  REQUIRE(mmf_describe(d, &out, &err) == MMF_OK);
  std::string s = take(out);
  CHECK(s.find("\"smooth\": true") != std::string::npos);
  CHECK(s.find("\"K_trivial\": true") != std::string::npos);
  mmf_data_free(d);
}

TEST_CASE("invalid JSON is a validation error") {
  char* err = nullptr;
  mmf_data* d = mmf_data_parse("{not json", &err);
  CHECK(d == nullptr);
  std::string msg = take(err);
  CHECK(msg.find("invalid JSON") != std::string::npos);
}

TEST_CASE("unknown example reports the available names") {
  char* err = nullptr;
  mmf_data* d = mmf_example("nope", &err);
  CHECK(d == nullptr);
  std::string msg = take(err);
  CHECK(msg.find("tate") != std::string::npos);
}

TEST_CASE("theta via the C surface") {
  char* err = nullptr;
  mmf_data* d = mmf_example("tate", &err);
  REQUIRE(d != nullptr);
  char* out = nullptr;
  REQUIRE(mmf_theta(d, "0/1", 1, 3, "text", &out, &err) == MMF_OK);
  std::string text = take(out);
  CHECK(text == "z^-2 u^(3) * 1\nz^-1 u^(1) * 1\nz^0 u^(0) * 1\nz^1 u^(0) * 1\n"
                "z^2 u^(1) * 1\nz^3 u^(3) * 1\n");
  // Bad class: validation error.
  CHECK(mmf_theta(d, "1/2", 1, 3, "text", &out, &err) == MMF_EVALIDATION);
  take(err);
  mmf_data_free(d);
}

TEST_CASE("relations via the C surface") {
  char* err = nullptr;
  mmf_data* d = mmf_example("tate", &err);
  char* out = nullptr;
  REQUIRE(mmf_relations(d, 3, 3, "text", &out, &err) == MMF_OK);
  std::string text = take(out);
  CHECK(text == "T[0]T[1/3]T[2/3] - T[1/3]T[1/3]T[1/3] - T[2/3]T[2/3]T[2/3] = 0\n");
  mmf_data_free(d);
}

TEST_CASE("delaunay and voronoi via the C surface") {
  char* err = nullptr;
  char* out = nullptr;
  REQUIRE(mmf_delaunay("[[4,1],[1,3]]", &out, &err) == MMF_OK);
  std::string s = take(out);
  CHECK(s.find("\"census\"") != std::string::npos);
  REQUIRE(mmf_voronoi_cell("[[4,1],[1,3]]", &out, &err) == MMF_OK);
  s = take(out);
  CHECK(s.find("\"facet_count\": 6") != std::string::npos);
  REQUIRE(mmf_same_delaunay("[[2,1],[1,2]]", "[[4,1],[1,3]]", &out, &err) == MMF_OK);
  CHECK(take(out) == "true");
  CHECK(mmf_delaunay("[[1,1],[1,1]]", &out, &err) == MMF_EVALIDATION);
  take(err);
}

TEST_CASE("basechange and resolve via the C surface") {
  char* err = nullptr;
  mmf_data* base = mmf_example("tate", &err);
  mmf_data* bc = nullptr;
  REQUIRE(mmf_basechange(base, "[[3]]", &bc, &err) == MMF_OK);
  mmf_data_free(base);
  char* out = nullptr;
  REQUIRE(mmf_resolve(bc, 0, &out, &err) == MMF_OK);
  std::string s = take(out);
  CHECK(s.find("\"final_semistable\": true") != std::string::npos);
  CHECK(s.find("\"dual_complex_h1\": 1") != std::string::npos);
  mmf_data_free(bc);
  // mon-sep carries its map as metadata.
  mmf_data* ms = mmf_example("mon-sep", &err);
  REQUIRE(mmf_resolve(ms, 0, &out, &err) == MMF_OK);
  s = take(out);
  CHECK(s.find("\"grid_denominator\": 32") != std::string::npos);
  mmf_data_free(ms);
}

TEST_CASE("weights via the C surface") {
  char* err = nullptr;
  char* out = nullptr;
  REQUIRE(mmf_weights(R"({"g": 1, "Ns": [[[0,1],[0,0]]]})", &out, &err) == MMF_OK);
  std::string s = take(out);
  CHECK(s.find("\"maximal\": true") != std::string::npos);
}

TEST_CASE("svg via the C surface") {
  char* err = nullptr;
  mmf_data* d = mmf_example("theta3", &err);
  char* out = nullptr;
  REQUIRE(mmf_svg(d, &out, &err) == MMF_OK);
  CHECK(take(out).find("<svg") == 0);
  mmf_data_free(d);
  mmf_data* r = mmf_example("r10", &err);
  CHECK(mmf_svg(r, &out, &err) == MMF_EVALIDATION);
  take(err);
  mmf_data_free(r);
}
