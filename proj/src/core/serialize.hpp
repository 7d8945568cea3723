// JSON (de)serialization of the public data types and the report formats
// used by the shared library and the CLI.
#pragma once

#include <json.hpp>

#include "basechange.hpp"
#include "delaunay.hpp"
#include "monodromy.hpp"
#include "theta.hpp"

namespace mumford {

using Json = nlohmann::json;

// Rationals serialize as integers when integral, otherwise as "p/q" strings;
// both forms (plus doubles for integers) are accepted on input.
Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json intmat_to_json(const IntMat& m);
IntMat intmat_from_json(const Json& j);

Json section_to_json(const PLSection& b);
PLSection section_from_json(const Json& j, size_t g, const Int& d);

// A run configuration: the Mumford data plus optional base-change metadata.
struct Config {
  MumfordData data;
  std::optional<MonomialMap> basechange;
  std::optional<Int> separation;
};

Json config_to_json(const Config& c);
Config config_from_json(const Json& j);

Graph graph_from_json(const Json& j);

Json census_to_json(const std::map<int, size_t>& census);
Json report_to_json(const SingularityReport& rep);
Json stratification_to_json(const Stratification& s);
Json theta_to_json(const ThetaSeries& s);
std::string theta_to_text(const ThetaSeries& s);
Json relations_to_json(const CentralFiberRelations& r);
std::string relations_to_text(const CentralFiberRelations& r);
Json delaunay_to_json(const DelaunayComplex& d);
Json voronoi_to_json(const VoronoiCell& v);
Json faces_to_json(const std::vector<FaceRecord>& recs);
Json resolve_to_json(const ResolveResult& r);

// The `describe` report: summary, singularity report, K-triviality, dual
// complex census and H1.
Json describe_to_json(const MumfordData& data);

// Monodromy report from {"g": n, "Ns": [...matrices...]}.
Json weights_report_from_json(const Json& input);

}  // namespace mumford
