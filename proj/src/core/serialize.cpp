#include "serialize.hpp"

#include <sstream>

namespace mumford {

Json rat_to_json(const Rat& q) {
  if (den(q) == 1) {
    // Keep exactness: emit as number when it fits, else as string.
    Int n = num(q);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return Json((long long)n.convert_to<long long>());
    return Json(n.str());
  }
  return Json(to_string(q));
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat((long long)j.get<long long>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    long long r = (long long)v;
    if ((double)r != v) throw std::invalid_argument("non-integral float in rational position");
    return Rat(r);
  }
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw std::invalid_argument("expected a rational (integer or \"p/q\")");
}

namespace {

Json ratvec_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& q : v) out.push_back(rat_to_json(q));
  return out;
}

RatVec ratvec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RatVec out;
  for (const Json& e : j) out.push_back(rat_from_json(e));
  return out;
}

Json intvec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(rat_to_json(Rat(x)));
  return out;
}

IntVec intvec_from_json(const Json& j) { return to_int_checked(ratvec_from_json(j)); }

std::string key_of(const std::vector<size_t>& I) {
  std::string s;
  for (size_t i = 0; i < I.size(); ++i) s += (i ? "," : "") + std::to_string(I[i] + 1);
  return s;
}

}  // namespace

Json intmat_to_json(const IntMat& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows; ++i) rows.push_back(intvec_to_json(m.row(i)));
  return rows;
}

IntMat intmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix");
  std::vector<IntVec> rows;
  for (const Json& r : j) rows.push_back(intvec_from_json(r));
  for (const IntVec& r : rows)
    if (r.size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
  return IntMat::from_rows(rows);
}

namespace {

Json atom_json_families(const PLSection& b, const IntVec& normal) {
  Json offsets = Json::array(), params = Json::array();
  for (const HyperplaneFamilyAtom& f : b.families()) {
    if (f.normal != normal) continue;
    offsets.push_back(rat_to_json(f.offset));
    params.push_back(rat_to_json(f.param));
  }
  Json out;
  out["normal"] = intvec_to_json(normal);
  out["offsets"] = offsets;
  out["params"] = params;
  return out;
}

void parse_atom_into(PLSection& b, const Json& a) {
  if (a.contains("normal")) {
    IntVec normal = intvec_from_json(a.at("normal"));
    const Json& offs = a.at("offsets");
    Json params = a.contains("params") ? a.at("params") : Json::array();
    for (size_t i = 0; i < offs.size(); ++i) {
      Rat p = i < params.size() ? rat_from_json(params[i]) : Rat(1);
      b.add_family(normal, rat_from_json(offs[i]), p);
    }
    return;
  }
  if (a.contains("B")) {
    IntMat B = intmat_from_json(a.at("B"));
    IntVec L;
    if (a.contains("L")) {
      L = intvec_from_json(a.at("L"));
    } else {
      for (size_t i = 0; i < B.rows; ++i) L.push_back(B.at(i, i));
    }
    PLSection form = pl_from_form(B, L);
    Rat s = a.contains("scale") ? rat_from_json(a.at("scale")) : Rat(1);
    if (s != 1) {
      if (den(s) != 1 || s <= 0) throw std::invalid_argument("form scale must be a positive integer");
      PLSection scaled(b.g(), b.denominator());
      scaled.add_scaled(form, num(s));
      b.add_scaled(scaled, Int(1));
    } else {
      b.add_scaled(form, Int(1));
    }
    return;
  }
  if (a.contains("linear")) {
    Rat c = a.contains("constant") ? rat_from_json(a.at("constant")) : Rat(0);
    b.add_affine(ratvec_from_json(a.at("linear")), c);
    return;
  }
  throw std::invalid_argument("unrecognized section atom");
}

}  // namespace

Json section_to_json(const PLSection& b) {
  Json atoms = Json::array();
  std::vector<IntVec> seen;
  for (const HyperplaneFamilyAtom& f : b.families()) {
    if (std::find(seen.begin(), seen.end(), f.normal) != seen.end()) continue;
    seen.push_back(f.normal);
    atoms.push_back(atom_json_families(b, f.normal));
  }
  for (const FormAtom& fa : b.forms()) {
    Json a;
    a["B"] = intmat_to_json(fa.B);
    a["L"] = intvec_to_json(fa.L);
    if (fa.scale != 1) a["scale"] = rat_to_json(fa.scale);
    atoms.push_back(a);
  }
  if (!is_zero(b.linear_part()) || b.constant_part() != 0) {
    Json a;
    a["linear"] = ratvec_to_json(b.linear_part());
    if (b.constant_part() != 0) a["constant"] = rat_to_json(b.constant_part());
    atoms.push_back(a);
  }
  if (atoms.size() == 1) return atoms[0];
  Json out;
  out["atoms"] = atoms;
  return out;
}

PLSection section_from_json(const Json& j, size_t g, const Int& d) {
  PLSection b(g, d);
  if (j.contains("atoms")) {
    for (const Json& a : j.at("atoms")) parse_atom_into(b, a);
  } else {
    parse_atom_into(b, j);
  }
  return b;
}

Json config_to_json(const Config& c) {
  Json out;
  out["g"] = c.data.g;
  out["k"] = c.data.k;
  out["d"] = rat_to_json(Rat(c.data.d));
  if (!c.data.name.empty()) out["name"] = c.data.name;
  Json secs = Json::array();
  for (const PLSection& b : c.data.sections) secs.push_back(section_to_json(b));
  out["sections"] = secs;
  if (c.basechange) {
    Json bc;
    bc["matrix"] = intmat_to_json(c.basechange->R);
    if (c.separation) bc["separation"] = rat_to_json(Rat(*c.separation));
    out["basechange"] = bc;
  }
  return out;
}

Config config_from_json(const Json& j) {
  Config c;
  c.data.g = j.at("g").get<size_t>();
  c.data.k = j.at("k").get<size_t>();
  Rat d = j.contains("d") ? rat_from_json(j.at("d")) : Rat(1);
  if (den(d) != 1 || d < 1) throw std::invalid_argument("d must be a positive integer");
  c.data.d = num(d);
  if (j.contains("name")) c.data.name = j.at("name").get<std::string>();
  if (!j.contains("sections") || !j.at("sections").is_array())
    throw std::invalid_argument("config needs a sections array");
  for (const Json& s : j.at("sections"))
    c.data.sections.push_back(section_from_json(s, c.data.g, c.data.d));
  c.data.validate();
  if (j.contains("basechange")) {
    MonomialMap m;
    m.R = intmat_from_json(j.at("basechange").at("matrix"));
    m.validate(c.data.k);
    c.basechange = m;
    if (j.at("basechange").contains("separation")) {
      Rat s = rat_from_json(j.at("basechange").at("separation"));
      c.separation = num(s);
    }
  }
  return c;
}

Graph graph_from_json(const Json& j) {
  Graph g;
  g.vertices = j.at("vertices").get<size_t>();
  for (const Json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
    g.edges.push_back({e[0].get<size_t>(), e[1].get<size_t>()});
  }
  return g;
}

Json census_to_json(const std::map<int, size_t>& census) {
  Json out = Json::object();
  for (auto& [dim, count] : census) out[std::to_string(dim)] = count;
  return out;
}

Json report_to_json(const SingularityReport& rep) {
  Json out;
  out["smooth"] = rep.smooth;
  out["nodal"] = rep.nodal();
  out["strict"] = rep.strict;
  Json per = Json::object();
  for (auto& [I, lf] : rep.per_stratum) per[key_of(I)] = to_string(lf);
  out["per_stratum"] = per;
  Json wit = Json::array();
  for (const FaceRecord& fr : rep.witnesses) {
    Json w;
    w["stratum"] = key_of(fr.I);
    w["face_dim"] = fr.face_dim;
    Json rays = Json::array();
    for (const IntVec& r : fr.dual_cone.rays) rays.push_back(intvec_to_json(r));
    w["dual_cone_rays"] = rays;
    wit.push_back(w);
  }
  out["witnesses"] = wit;
  return out;
}

Json stratification_to_json(const Stratification& s) {
  Json out;
  out["I"] = key_of(s.I);
  out["census"] = census_to_json(s.complex.census());
  out["abelian_dim"] = s.complex.cylinder_dirs.size();
  Json comps = Json::array();
  for (const auto& c : s.components) {
    Json cj;
    Json poly = Json::array();
    for (const RatVec& v : c.polytope) poly.push_back(ratvec_to_json(v));
    cj["polytope"] = poly;
    cj["compact"] = c.compact;
    cj["abelian_dim"] = c.abelian_dim;
    cj["self_glued"] = c.self_glued;
    if (c.compact) cj["normalized_volume"] = rat_to_json(normalized_volume(s.complex.dim, c.polytope));
    comps.push_back(cj);
  }
  out["components"] = comps;
  return out;
}

Json theta_to_json(const ThetaSeries& s) {
  Json terms = Json::array();
  for (const ThetaTerm& t : s.terms) {
    Json tj;
    tj["z"] = intvec_to_json(t.z_exp);
    tj["u"] = intvec_to_json(t.u_exp);
    tj["coeff"] = rat_to_json(Rat(t.coeff));
    terms.push_back(tj);
  }
  Json out;
  out["weight"] = rat_to_json(Rat(s.weight));
  out["class"] = ratvec_to_json(s.cls);
  out["trunc"] = rat_to_json(Rat(s.trunc));
  out["terms"] = terms;
  return out;
}

std::string theta_to_text(const ThetaSeries& s) {
  std::ostringstream os;
  for (const ThetaTerm& t : s.terms) {
    os << "z^";
    if (t.z_exp.size() == 1) {
      os << t.z_exp[0].str();
    } else {
      os << "(";
      for (size_t i = 0; i < t.z_exp.size(); ++i) os << (i ? "," : "") << t.z_exp[i].str();
      os << ")";
    }
    os << " u^(";
    for (size_t i = 0; i < t.u_exp.size(); ++i) os << (i ? "," : "") << t.u_exp[i].str();
    os << ") * " << t.coeff.str() << "\n";
  }
  return os.str();
}

Json relations_to_json(const CentralFiberRelations& r) {
  Json out;
  out["weight"] = rat_to_json(Rat(r.w));
  out["degree"] = rat_to_json(Rat(r.degree));
  Json cls = Json::array();
  for (const RatVec& c : r.classes) cls.push_back(ratvec_to_json(c));
  out["classes"] = cls;
  Json monos = Json::array();
  for (const auto& m : r.monomials) {
    Json mj = Json::array();
    for (size_t i : m) mj.push_back(i);
    monos.push_back(mj);
  }
  out["monomials"] = monos;
  Json rels = Json::array();
  for (const IntVec& rel : r.relations) rels.push_back(intvec_to_json(rel));
  out["relations"] = rels;
  return out;
}

std::string relations_to_text(const CentralFiberRelations& r) {
  std::ostringstream os;
  auto mono_name = [&](const std::vector<size_t>& m) {
    std::string s;
    for (size_t i : m) {
      s += "T[";
      const RatVec& c = r.classes[i];
      for (size_t t = 0; t < c.size(); ++t) s += (t ? "," : "") + to_string(c[t]);
      s += "]";
    }
    return s;
  };
  if (r.relations.empty()) {
    os << "no relations\n";
    return os.str();
  }
  for (const IntVec& rel : r.relations) {
    bool first = true;
    for (size_t j = 0; j < rel.size(); ++j) {
      if (rel[j] == 0) continue;
      if (!first) os << (rel[j] > 0 ? " + " : " - ");
      else if (rel[j] < 0)
        os << "-";
      Int a = abs(rel[j]);
      if (a != 1) os << a.str() << " ";
      os << mono_name(r.monomials[j]);
      first = false;
    }
    os << " = 0\n";
  }
  return os.str();
}

Json delaunay_to_json(const DelaunayComplex& d) {
  Json out;
  out["form"] = intmat_to_json(d.form);
  out["census"] = census_to_json(d.census);
  Json cells = Json::array();
  for (const CellClass& cc : d.complex.cells) {
    Json cj;
    cj["dim"] = cc.dim;
    Json verts = Json::array();
    for (const RatVec& v : cc.verts) verts.push_back(ratvec_to_json(v));
    cj["vertices"] = verts;
    cells.push_back(cj);
  }
  out["cells"] = cells;
  return out;
}

Json voronoi_to_json(const VoronoiCell& v) {
  Json out;
  Json verts = Json::array();
  for (const RatVec& p : v.vertices) verts.push_back(ratvec_to_json(p));
  out["vertices"] = verts;
  Json facets = Json::array();
  for (const HalfspaceQ& h : v.hrep.facets) {
    Json f;
    f["normal"] = intvec_to_json(h.normal);
    f["rhs"] = rat_to_json(h.rhs);
    facets.push_back(f);
  }
  out["facets"] = facets;
  out["facet_count"] = v.hrep.facets.size();
  return out;
}

Json faces_to_json(const std::vector<FaceRecord>& recs) {
  Json out = Json::array();
  for (const FaceRecord& fr : recs) {
    Json f;
    f["stratum"] = key_of(fr.I);
    f["face_dim"] = fr.face_dim;
    f["abelian_dim"] = fr.abelian_dim;
    f["compact"] = fr.compact;
    f["standard_affine"] = fr.standard_affine;
    f["flat"] = fr.flat;
    Json img = Json::array();
    for (size_t i : fr.image_face) img.push_back(i + 1);
    f["image_face"] = img;
    Json rays = Json::array();
    for (const IntVec& r : fr.dual_cone.rays) rays.push_back(intvec_to_json(r));
    f["dual_cone_rays"] = rays;
    out.push_back(f);
  }
  return out;
}

Json resolve_to_json(const ResolveResult& r) {
  Json out;
  out["stage1"] = config_to_json(Config{r.stage1, std::nullopt, std::nullopt});
  out["grid_denominator"] = rat_to_json(Rat(r.grid_denominator));
  out["stage1_report"] = report_to_json(r.stage1_report);
  out["stage1_nodal_by_colors"] = r.stage1_nodal_by_colors;
  out["final_cone_count"] = r.final_cones.size();
  out["final_all_standard_affine"] = r.final_all_standard_affine;
  out["final_semistable"] = r.final_semistable;
  out["dual_complex_census"] = census_to_json(r.stage1_dual_complex.census());
  out["dual_complex_h1"] = r.stage1_dual_complex.h1_rank();
  return out;
}

Json describe_to_json(const MumfordData& data) {
  Json out;
  out["name"] = data.name;
  out["g"] = data.g;
  out["k"] = data.k;
  out["d"] = rat_to_json(Rat(data.d));
  out["total_form"] = intmat_to_json(data.total_form_int());
  out["report"] = report_to_json(classify_singularities(data));
  out["K_trivial"] = is_K_trivial(data);
  PeriodicComplex t = dual_complex(data);
  out["dual_complex_census"] = census_to_json(t.census());
  out["dual_complex_h1"] = t.h1_rank();
  ArrangementRecovery rec = recover_shifted_matroidal(data);
  out["transversely_shifted_matroidal"] = rec.recognized;
  if (rec.recognized) out["matroid_rep"] = intmat_to_json(rec.rep.columns);
  return out;
}

Json weights_report_from_json(const Json& input) {
  size_t g = input.at("g").get<size_t>();
  std::vector<IntMat> Ns;
  for (const Json& nj : input.at("Ns")) Ns.push_back(intmat_from_json(nj));
  SymplecticLattice lat =
      input.contains("pairing")
          ? SymplecticLattice{g, intmat_from_json(input.at("pairing"))}
          : SymplecticLattice::standard(g);
  WeightFiltration w = weight_filtration(Ns);
  Json out;
  out["rank"] = w.rank;
  out["w_minus2_rank"] = w.w_minus2.basis.size();
  out["w_minus1_rank"] = w.w_minus1.basis.size();
  bool maximal = w.w_minus2.basis.size() == w.w_minus1.basis.size();
  out["maximal"] = maximal;
  if (maximal) {
    MonodromyForms mf = monodromy_forms(Ns, lat);
    Json forms = Json::array();
    for (const IntMat& B : mf.forms) forms.push_back(intmat_to_json(B));
    out["forms"] = forms;
    out["positive_semidefinite"] = mf.positive_semidefinite;
  }
  return out;
}

}  // namespace mumford
