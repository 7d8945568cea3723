// Implementation of the C interface on top of the core library.
#include "mumford.h"

#include <cstring>
#include <string>

#include "core/builtin_examples.hpp"
#include "core/svg.hpp"

using namespace mumford;

struct mmf_data {
  Config config;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_err(char** err, const std::string& msg) {
  if (err) *err = dup_string(msg);
}

// Runs the body, mapping exceptions onto status codes. Refusals (immersed
// faces, window certification) surface as domain_error.
template <typename F>
mmf_status guarded(char** err, F&& body) {
  try {
    body();
    return MMF_OK;
  } catch (const std::invalid_argument& e) {
    set_err(err, e.what());
    return MMF_EVALIDATION;
  } catch (const std::domain_error& e) {
    set_err(err, e.what());
    return MMF_EREFUSED;
  } catch (const std::exception& e) {
    set_err(err, e.what());
    return MMF_EINTERNAL;
  }
}

std::vector<size_t> parse_indices(const char* s, size_t k) {
  std::vector<size_t> I;
  if (!s) throw std::invalid_argument("missing index list");
  std::string str(s);
  size_t pos = 0;
  while (pos < str.size()) {
    size_t comma = str.find(',', pos);
    std::string tok = str.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw std::invalid_argument("malformed index list");
    long v = std::stol(tok);
    if (v < 1 || (size_t)v > k) throw std::invalid_argument("index out of range: " + tok);
    I.push_back((size_t)v - 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (I.empty()) throw std::invalid_argument("empty index list");
  return I;
}

RatVec parse_class(const char* s, size_t g) {
  if (!s) throw std::invalid_argument("missing theta class");
  std::string str(s);
  RatVec v;
  size_t pos = 0;
  while (pos < str.size()) {
    size_t comma = str.find(',', pos);
    std::string tok = str.substr(pos, comma == std::string::npos ? comma : comma - pos);
    v.push_back(parse_rat(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != g)
    throw std::invalid_argument("theta class needs " + std::to_string(g) + " coordinates");
  return v;
}

}  // namespace

extern "C" {

const char* mmf_version(void) { return "1.0.0"; }

mmf_data* mmf_data_parse(const char* json, char** err) {
  mmf_data* out = nullptr;
  guarded(err, [&] {
    if (!json) throw std::invalid_argument("null configuration");
    Json j;
    try {
      j = Json::parse(json);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
    out = new mmf_data{config_from_json(j)};
  });
  return out;
}

mmf_data* mmf_example(const char* name, char** err) {
  mmf_data* out = nullptr;
  guarded(err, [&] {
    if (!name) throw std::invalid_argument("null example name");
    out = new mmf_data{builtin_example(name)};
  });
  return out;
}

void mmf_data_free(mmf_data* data) { delete data; }

char* mmf_data_to_json(const mmf_data* data) {
  if (!data) return nullptr;
  return dup_string(config_to_json(data->config).dump(2));
}

char* mmf_example_names(void) {
  Json out = Json::array();
  for (const std::string& n : builtin_example_names()) out.push_back(n);
  return dup_string(out.dump());
}

mmf_status mmf_describe(const mmf_data* data, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!data || !json_out) throw std::invalid_argument("null argument");
    *json_out = dup_string(describe_to_json(data->config.data).dump(2));
  });
}

mmf_status mmf_strata(const mmf_data* data, const char* indices, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!data || !json_out) throw std::invalid_argument("null argument");
    std::vector<size_t> I = parse_indices(indices, data->config.data.k);
    *json_out = dup_string(stratification_to_json(stratification(data->config.data, I)).dump(2));
  });
}

mmf_status mmf_faces(const mmf_data* data, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!data || !json_out) throw std::invalid_argument("null argument");
    *json_out = dup_string(faces_to_json(overgraph_faces(data->config.data)).dump(2));
  });
}

mmf_status mmf_theta(const mmf_data* data, const char* cls, long weight, long trunc,
                     const char* format, char** out, char** err) {
  return guarded(err, [&] {
    if (!data || !out) throw std::invalid_argument("null argument");
    RatVec v = parse_class(cls, data->config.data.g);
    ThetaSeries s = theta_expand(data->config.data, v, Int(weight), Int(trunc));
    if (format && std::string(format) == "text")
      *out = dup_string(theta_to_text(s));
    else
      *out = dup_string(theta_to_json(s).dump(2));
  });
}

mmf_status mmf_relations(const mmf_data* data, long weight, long degree, const char* format,
                         char** out, char** err) {
  return guarded(err, [&] {
    if (!data || !out) throw std::invalid_argument("null argument");
    CentralFiberRelations r =
        central_fiber_relations(data->config.data, Int(weight), Int(degree));
    if (format && std::string(format) == "text")
      *out = dup_string(relations_to_text(r));
    else
      *out = dup_string(relations_to_json(r).dump(2));
  });
}

mmf_status mmf_delaunay(const char* form_json, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!form_json || !json_out) throw std::invalid_argument("null argument");
    IntMat B = intmat_from_json(Json::parse(form_json));
    *json_out = dup_string(delaunay_to_json(delaunay(B)).dump(2));
  });
}

mmf_status mmf_voronoi_cell(const char* form_json, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!form_json || !json_out) throw std::invalid_argument("null argument");
    IntMat B = intmat_from_json(Json::parse(form_json));
    *json_out = dup_string(voronoi_to_json(voronoi_cell(B)).dump(2));
  });
}

mmf_status mmf_same_delaunay(const char* form1_json, const char* form2_json, char** json_out,
                             char** err) {
  return guarded(err, [&] {
    if (!form1_json || !form2_json || !json_out) throw std::invalid_argument("null argument");
    IntMat B1 = intmat_from_json(Json::parse(form1_json));
    IntMat B2 = intmat_from_json(Json::parse(form2_json));
    *json_out = dup_string(same_delaunay(B1, B2) ? "true" : "false");
  });
}

mmf_status mmf_weights(const char* input_json, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!input_json || !json_out) throw std::invalid_argument("null argument");
    *json_out = dup_string(weights_report_from_json(Json::parse(input_json)).dump(2));
  });
}

mmf_status mmf_basechange(const mmf_data* data, const char* matrix_json, mmf_data** out,
                          char** err) {
  return guarded(err, [&] {
    if (!data || !matrix_json || !out) throw std::invalid_argument("null argument");
    MonomialMap map;
    map.R = intmat_from_json(Json::parse(matrix_json));
    Config next;
    next.data = monomial_base_change(data->config.data, map);
    next.basechange = map;
    next.separation = data->config.separation;
    *out = new mmf_data{std::move(next)};
  });
}

mmf_status mmf_resolve(const mmf_data* data, long separation, char** json_out, char** err) {
  return guarded(err, [&] {
    if (!data || !json_out) throw std::invalid_argument("null argument");
    const Config& c = data->config;
    if (!c.basechange)
      throw std::invalid_argument("no base-change map attached (run basechange first)");
    // The handle may hold the base data (example metadata) or the pullback
    // itself; the section count tells them apart.
    MumfordData bc = c.data.k == c.basechange->R.cols
                         ? c.data
                         : monomial_base_change(c.data, *c.basechange);
    ResolutionPlan plan = ResolutionPlan::standard_for(*c.basechange);
    if (separation > 0)
      plan.separation = Int(separation);
    else if (c.separation)
      plan.separation = *c.separation;
    *json_out = dup_string(resolve_to_json(resolve_pipeline(bc, *c.basechange, plan)).dump(2));
  });
}

mmf_status mmf_svg(const mmf_data* data, char** svg_out, char** err) {
  return guarded(err, [&] {
    if (!data || !svg_out) throw std::invalid_argument("null argument");
    *svg_out = dup_string(emit_svg(data->config.data));
  });
}

void mmf_string_free(char* s) { delete[] s; }

}  // extern "C"
