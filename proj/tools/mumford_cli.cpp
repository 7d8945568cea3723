// mumford: batch front-end over the shared C library.
//
// Subcommands ingest a configuration (from --input, stdin, or a built-in
// example), run one computation, and print the result to stdout. Exit codes:
// 0 success, 2 validation error, 3 refusal (immersed faces / window
// certification failure).
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include "mumford.h"

namespace {

int status_to_exit(mmf_status s) {
  switch (s) {
    case MMF_OK: return 0;
    case MMF_EVALIDATION: return 2;
    case MMF_EREFUSED: return 3;
    default: return 4;
  }
}

[[noreturn]] void fail(mmf_status s, char* err) {
  std::cerr << "error: " << (err ? err : "unknown") << "\n";
  mmf_string_free(err);
  std::exit(status_to_exit(s));
}

std::string read_stream(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Loads the working configuration: --example, --input file, or stdin.
mmf_data* load_data(const std::string& example, const std::string& input) {
  char* err = nullptr;
  mmf_data* data = nullptr;
  if (!example.empty()) {
    data = mmf_example(example.c_str(), &err);
  } else if (!input.empty() && input != "-") {
    FILE* f = std::fopen(input.c_str(), "rb");
    if (!f) {
      std::cerr << "error: cannot open " << input << "\n";
      std::exit(2);
    }
    std::string text;
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
    data = mmf_data_parse(text.c_str(), &err);
  } else {
    std::string text = read_stream(std::cin);
    data = mmf_data_parse(text.c_str(), &err);
  }
  if (!data) fail(MMF_EVALIDATION, err);
  return data;
}

void print_and_free(char* s) {
  std::cout << s;
  size_t len = std::strlen(s);
  if (len == 0 || s[len - 1] != '\n') std::cout << "\n";
  mmf_string_free(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorial models of multivariable Mumford degenerations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mmf_version());

  std::string example, input, cls, form, form2, matrix, indices, format = "text";
  long weight = 1, trunc = 3, degree = 1, separation = 0;

  auto add_data_opts = [&](CLI::App* cmd) {
    cmd->add_option("--example", example, "built-in example name");
    cmd->add_option("--input", input, "configuration JSON file (default: stdin)");
  };

  auto* c_example = app.add_subcommand("example", "print a built-in configuration");
  std::string example_name;
  c_example->add_option("name", example_name, "one of: tate, theta1, theta3, shifted-theta, r10, mon-sep");

  auto* c_describe = app.add_subcommand("describe", "summary, singularities, K-triviality, dual complex");
  add_data_opts(c_describe);

  auto* c_strata = app.add_subcommand("strata", "stratification over a coordinate subset");
  add_data_opts(c_strata);
  c_strata->add_option("--I", indices, "1-based coordinate subset, e.g. 1,2")->required();

  auto* c_faces = app.add_subcommand("faces", "overgraph face records with dual cones");
  add_data_opts(c_faces);

  auto* c_theta = app.add_subcommand("theta", "truncated theta expansion");
  add_data_opts(c_theta);
  c_theta->add_option("--class", cls, "class like 0/1 or 0/1,1/2")->required();
  c_theta->add_option("--weight", weight, "weight (divisible by d)")->required();
  c_theta->add_option("--trunc", trunc, "total u-degree bound")->required();
  c_theta->add_option("--format", format, "text | json");

  auto* c_rel = app.add_subcommand("relations", "central-fiber relations mod (u)");
  add_data_opts(c_rel);
  c_rel->add_option("--weight", weight)->required();
  c_rel->add_option("--degree", degree)->required();
  c_rel->add_option("--format", format, "text | json");

  auto* c_del = app.add_subcommand("delaunay", "Delaunay decomposition of a form");
  c_del->add_option("--form", form, "symmetric matrix, e.g. [[4,1],[1,3]]")->required();

  auto* c_vor = app.add_subcommand("voronoi-cell", "Voronoi cell of the origin");
  c_vor->add_option("--form", form)->required();

  auto* c_same = app.add_subcommand("same-delaunay", "compare two Delaunay decompositions");
  c_same->add_option("--form", form)->required();
  c_same->add_option("--form2", form2)->required();

  auto* c_bc = app.add_subcommand("basechange", "monomial base change");
  add_data_opts(c_bc);
  c_bc->add_option("--matrix", matrix, "exponent matrix, e.g. [[2,1],[0,4],[3,1]]")->required();

  auto* c_res = app.add_subcommand("resolve", "two-stage semistable resolution");
  add_data_opts(c_res);
  c_res->add_option("--matrix", matrix, "exponent matrix (optional if carried by the input)");
  c_res->add_option("--separation", separation, "bend separation constant N");

  auto* c_wt = app.add_subcommand("weights", "monodromy weight filtration and forms");
  c_wt->add_option("--input", input, "JSON {g, Ns:[...]} file (default: stdin)");

  auto* c_svg = app.add_subcommand("svg", "SVG of the bending complex (g <= 2)");
  add_data_opts(c_svg);

  CLI11_PARSE(app, argc, argv);

  char* err = nullptr;
  char* out = nullptr;
  mmf_status st = MMF_OK;

  if (*c_example) {
    mmf_data* data = nullptr;
    if (example_name.empty()) {
      print_and_free(mmf_example_names());
      return 0;
    }
    data = mmf_example(example_name.c_str(), &err);
    if (!data) fail(MMF_EVALIDATION, err);
    print_and_free(mmf_data_to_json(data));
    mmf_data_free(data);
    return 0;
  }
  if (*c_describe) {
    mmf_data* data = load_data(example, input);
    st = mmf_describe(data, &out, &err);
    mmf_data_free(data);
  } else if (*c_strata) {
    mmf_data* data = load_data(example, input);
    st = mmf_strata(data, indices.c_str(), &out, &err);
    mmf_data_free(data);
  } else if (*c_faces) {
    mmf_data* data = load_data(example, input);
    st = mmf_faces(data, &out, &err);
    mmf_data_free(data);
  } else if (*c_theta) {
    mmf_data* data = load_data(example, input);
    st = mmf_theta(data, cls.c_str(), weight, trunc, format.c_str(), &out, &err);
    mmf_data_free(data);
  } else if (*c_rel) {
    mmf_data* data = load_data(example, input);
    st = mmf_relations(data, weight, degree, format.c_str(), &out, &err);
    mmf_data_free(data);
  } else if (*c_del) {
    st = mmf_delaunay(form.c_str(), &out, &err);
  } else if (*c_vor) {
    st = mmf_voronoi_cell(form.c_str(), &out, &err);
  } else if (*c_same) {
    st = mmf_same_delaunay(form.c_str(), form2.c_str(), &out, &err);
  } else if (*c_bc) {
    mmf_data* data = load_data(example, input);
    mmf_data* next = nullptr;
    st = mmf_basechange(data, matrix.c_str(), &next, &err);
    mmf_data_free(data);
    if (st == MMF_OK) {
      out = mmf_data_to_json(next);
      mmf_data_free(next);
    }
  } else if (*c_res) {
    mmf_data* data = load_data(example, input);
    if (!matrix.empty()) {
      mmf_data* next = nullptr;
      st = mmf_basechange(data, matrix.c_str(), &next, &err);
      mmf_data_free(data);
      if (st != MMF_OK) fail(st, err);
      data = next;
    }
    st = mmf_resolve(data, separation, &out, &err);
    mmf_data_free(data);
  } else if (*c_wt) {
    std::string text;
    if (!input.empty() && input != "-") {
      FILE* f = std::fopen(input.c_str(), "rb");
      if (!f) {
        std::cerr << "error: cannot open " << input << "\n";
        return 2;
      }
      char buf[4096];
      size_t n;
      while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
      std::fclose(f);
    } else {
      text = read_stream(std::cin);
    }
    st = mmf_weights(text.c_str(), &out, &err);
  } else if (*c_svg) {
    mmf_data* data = load_data(example, input);
    st = mmf_svg(data, &out, &err);
    mmf_data_free(data);
  }

  if (st != MMF_OK) fail(st, err);
  if (out) print_and_free(out);
  return 0;
}
