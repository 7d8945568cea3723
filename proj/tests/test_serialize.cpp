#include <doctest.h>

#include "core/builtin_examples.hpp"
#include "core/svg.hpp"

using namespace mumford;

TEST_CASE("rational json round trip") {
  for (const Rat& q : {Rat(0), Rat(7), Rat(-3), Rat(1, 2), Rat(-5, 3)})
    CHECK(rat_from_json(rat_to_json(q)) == q);
  CHECK(rat_from_json(Json::parse("\"1/2\"")) == Rat(1, 2));
  CHECK_THROWS_AS(rat_from_json(Json::parse("\"x\"")), std::invalid_argument);
}

TEST_CASE("matrix parsing accepts the CLI form syntax") {
  IntMat m = intmat_from_json(Json::parse("[[4,1],[1,3]]"));
  CHECK(m.at(0, 0) == 4);
  CHECK(m.at(1, 0) == 1);
  CHECK(intmat_from_json(intmat_to_json(m)) == m);
}

TEST_CASE("builtin examples parse, validate, and round-trip") {
  for (const std::string& name : builtin_example_names()) {
    Config c = builtin_example(name);
    CHECK(c.data.name == name);
    c.data.validate();
    Json j = config_to_json(c);
    Config c2 = config_from_json(j);
    CHECK(c2.data.g == c.data.g);
    CHECK(c2.data.k == c.data.k);
    CHECK(c2.data.d == c.data.d);
    // Sections agree as functions on a sample grid.
    for (size_t s = 0; s < c.data.k; ++s)
      for (int a = -2; a <= 2; ++a)
        for (int b = -1; b <= 1; ++b) {
          RatVec v;
          v.push_back(Rat(a, 2));
          if (c.data.g >= 2) v.push_back(Rat(b, 2));
          while (v.size() < c.data.g) v.push_back(Rat(0));
          CHECK(c.data.sections[s].value(v) == c2.data.sections[s].value(v));
        }
  }
}

TEST_CASE("builtin example list") {
  auto names = builtin_example_names();
  CHECK(names == std::vector<std::string>{"tate", "theta1", "theta3", "shifted-theta", "r10",
                                          "mon-sep"});
  CHECK_THROWS_AS(builtin_example("nope"), std::invalid_argument);
}

TEST_CASE("theta1 is the weighted theta-graph section") {
  Config c = builtin_example("theta1");
  IntMat q = quadratic_part_int(c.data.sections[0]);
  CHECK(q == IntMat(2, 2, {Int(4), Int(1), Int(1), Int(3)}));
}

TEST_CASE("mon-sep carries its base change") {
  Config c = builtin_example("mon-sep");
  REQUIRE(c.basechange.has_value());
  CHECK(c.basechange->R == IntMat(3, 2, {Int(2), Int(1), Int(0), Int(4), Int(3), Int(1)}));
  REQUIRE(c.separation.has_value());
  CHECK(*c.separation == 4);
}

TEST_CASE("section json with forms") {
  Json j = Json::parse(R"({"B": [[2,1],[1,2]], "L": [2,2]})");
  PLSection b = section_from_json(j, 2, Int(1));
  CHECK(b.forms().size() == 1);
  Json back = section_to_json(b);
  PLSection b2 = section_from_json(back, 2, Int(1));
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      CHECK(b.value({Rat(x), Rat(y)}) == b2.value({Rat(x), Rat(y)}));
}

TEST_CASE("graph json") {
  Graph g = graph_from_json(Json::parse(R"({"vertices": 2, "edges": [[0,1],[0,1],[1,0]]})"));
  CHECK(g.vertices == 2);
  CHECK(g.edges.size() == 3);
}

TEST_CASE("describe report fields") {
  Config c = builtin_example("tate");
  Json d = describe_to_json(c.data);
  CHECK(d.at("K_trivial") == true);
  CHECK(d.at("report").at("smooth") == true);
  CHECK(d.at("report").at("nodal") == true);
  CHECK(d.at("dual_complex_h1") == 1);
  CHECK(d.at("transversely_shifted_matroidal") == true);
}

TEST_CASE("theta text format") {
  Config c = builtin_example("tate");
  ThetaSeries s = theta_expand(c.data, {Rat(0)}, Int(1), Int(3));
  std::string text = theta_to_text(s);
  CHECK(text.find("z^0 u^(0) * 1") != std::string::npos);
  CHECK(text.find("z^-2 u^(3) * 1") != std::string::npos);
}

TEST_CASE("weights report") {
  Json input = Json::parse(R"({"g": 1, "Ns": [[[0,1],[0,0]]]})");
  Json rep = weights_report_from_json(input);
  CHECK(rep.at("maximal") == true);
  CHECK(rep.at("w_minus2_rank") == 1);
  CHECK(rep.at("forms")[0] == Json::parse("[[1]]"));
}

TEST_CASE("svg output: tate and theta3") {
  Config tate = builtin_example("tate");
  std::string svg1 = emit_svg(tate.data);
  CHECK(svg1.find("<svg") == 0);
  CHECK(svg1.find("circle") != std::string::npos);
  Config t3 = builtin_example("theta3");
  std::string svg2 = emit_svg(t3.data);
  // Three wall classes with three distinct colors.
  CHECK(svg2.find("#d62728") != std::string::npos);
  CHECK(svg2.find("#2ca02c") != std::string::npos);
  CHECK(svg2.find("#1f77b4") != std::string::npos);
  // Deterministic output.
  CHECK(emit_svg(t3.data) == svg2);
  Config r10c = builtin_example("r10");
  CHECK_THROWS_AS(emit_svg(r10c.data), std::invalid_argument);
}
