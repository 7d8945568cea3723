#include "cone.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace mumford {

namespace {

using Bits = std::vector<uint64_t>;

bool bit_get(const Bits& b, size_t i) { return (b[i >> 6] >> (i & 63)) & 1; }
void bit_set(Bits& b, size_t i) { b[i >> 6] |= uint64_t(1) << (i & 63); }

Bits bits_and(const Bits& x, const Bits& y) {
  Bits r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] & y[i];
  return r;
}

// x superset of y?
bool bits_superset(const Bits& x, const Bits& y) {
  for (size_t i = 0; i < x.size(); ++i)
    if ((x[i] & y[i]) != y[i]) return false;
  return true;
}

struct DDRay {
  IntVec v;
  Bits zero;  // inserted constraints tight at this ray
};

// Core double description: extreme rays + lineality of
// { x in R^dim : <h,x> >= 0 for all h }.
struct DDResult {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};

DDResult dd_rays(size_t dim, const std::vector<IntVec>& ineqs) {
  size_t nblk = (ineqs.size() + 64) / 64;
  std::vector<IntVec> lin;
  for (size_t i = 0; i < dim; ++i) {
    IntVec e(dim, Int(0));
    e[i] = 1;
    lin.push_back(e);
  }
  std::vector<DDRay> rays;

  for (size_t hc = 0; hc < ineqs.size(); ++hc) {
    const IntVec& h = ineqs[hc];
    // Lineality reduction first.
    size_t lhit = lin.size();
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(h, lin[i]) != 0) {
        lhit = i;
        break;
      }
    if (lhit < lin.size()) {
      IntVec l = lin[lhit];
      Int hl = dot(h, l);
      lin.erase(lin.begin() + lhit);
      for (IntVec& m : lin) {
        Int hm = dot(h, m);
        if (hm != 0) {
          IntVec adj(dim);
          for (size_t j = 0; j < dim; ++j) adj[j] = hl * m[j] - hm * l[j];
          m = primitive(adj);
        }
      }
      for (DDRay& r : rays) {
        Int hr = dot(h, r.v);
        if (hr != 0) {
          Int s = hl < 0 ? Int(-1) : Int(1);
          IntVec adj(dim);
          for (size_t j = 0; j < dim; ++j) adj[j] = s * (hl * r.v[j] - hr * l[j]);
          r.v = primitive(adj);
        }
        bit_set(r.zero, hc);
      }
      DDRay r0;
      r0.v = hl > 0 ? l : neg(l);
      r0.zero = Bits(nblk, 0);
      for (size_t c = 0; c < hc; ++c) bit_set(r0.zero, c);
      rays.push_back(std::move(r0));
      continue;
    }

    // h vanishes on the lineality space; split the ray list.
    std::vector<DDRay> pos, zer, negr;
    for (DDRay& r : rays) {
      int s = sign(dot(h, r.v));
      if (s > 0)
        pos.push_back(std::move(r));
      else if (s < 0)
        negr.push_back(std::move(r));
      else {
        bit_set(r.zero, hc);
        zer.push_back(std::move(r));
      }
    }
    if (negr.empty()) {
      rays.clear();
      for (auto& r : pos) rays.push_back(std::move(r));
      for (auto& r : zer) rays.push_back(std::move(r));
      continue;
    }
    std::vector<DDRay> next;
    for (auto& r : pos) next.push_back(std::move(r));
    for (auto& r : zer) next.push_back(std::move(r));

    // Adjacent (p, m) pairs produce new rays on the hyperplane.
    auto adjacent = [&](const DDRay& a, const DDRay& b) {
      Bits common = bits_and(a.zero, b.zero);
      for (const DDRay& r : next)
        if (r.v != a.v && r.v != b.v && bits_superset(r.zero, common)) return false;
      for (const DDRay& r : negr)
        if (r.v != a.v && r.v != b.v && bits_superset(r.zero, common)) return false;
      return true;
    };

    std::vector<DDRay> combined;
    for (size_t ip = 0; ip < next.size(); ++ip) {
      const DDRay& p = next[ip];
      Int hp = dot(h, p.v);
      if (hp <= 0) continue;  // only strictly positive side combines
      for (const DDRay& m : negr) {
        if (!adjacent(p, m)) continue;
        Int hm = dot(h, m.v);  // < 0
        IntVec w(dim);
        for (size_t j = 0; j < dim; ++j) w[j] = hp * m.v[j] - hm * p.v[j];
        DDRay nr;
        nr.v = primitive(w);
        nr.zero = bits_and(p.zero, m.zero);
        bit_set(nr.zero, hc);
        combined.push_back(std::move(nr));
      }
    }
    // Dedupe combined rays.
    std::sort(combined.begin(), combined.end(),
              [](const DDRay& a, const DDRay& b) { return a.v < b.v; });
    combined.erase(std::unique(combined.begin(), combined.end(),
                               [](const DDRay& a, const DDRay& b) { return a.v == b.v; }),
                   combined.end());
    for (auto& r : combined) next.push_back(std::move(r));
    rays = std::move(next);
  }

  DDResult out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  out.lineality = std::move(lin);
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  std::sort(out.lineality.begin(), out.lineality.end());
  return out;
}

// Reduce modulo equations: returns an integral basis K of {x : E x = 0} and
// rewrites inequalities in K-coordinates.
struct EqReduced {
  std::vector<IntVec> K;  // columns: basis of the solution lattice
  std::vector<IntVec> ineqs_reduced;
};

EqReduced reduce_by_equations(size_t dim, const std::vector<IntVec>& ineqs,
                              const std::vector<IntVec>& eqs) {
  EqReduced out;
  if (eqs.empty()) {
    for (size_t i = 0; i < dim; ++i) {
      IntVec e(dim, Int(0));
      e[i] = 1;
      out.K.push_back(e);
    }
    out.ineqs_reduced = ineqs;
    return out;
  }
  IntMat E = IntMat::from_rows(eqs);
  out.K = kernel_basis(E);
  for (const IntVec& h : ineqs) {
    IntVec hr(out.K.size());
    for (size_t j = 0; j < out.K.size(); ++j) hr[j] = dot(h, out.K[j]);
    out.ineqs_reduced.push_back(std::move(hr));
  }
  return out;
}

IntVec map_from_reduced(const std::vector<IntVec>& K, size_t dim, const IntVec& y) {
  IntVec x(dim, Int(0));
  for (size_t j = 0; j < K.size(); ++j)
    for (size_t i = 0; i < dim; ++i) x[i] += y[j] * K[j][i];
  return x;
}

std::vector<IntVec> canonical_lineality(std::vector<IntVec> lin) {
  if (lin.empty()) return lin;
  IntMat L = IntMat::from_cols(lin);
  HermiteResult h = hermite_normal_form(L);
  std::vector<IntVec> out;
  for (size_t j = 0; j < h.pivot_rows.size(); ++j) out.push_back(primitive(h.H.col(j)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

size_t RationalCone::dim() const {
  std::vector<IntVec> gens = rays;
  for (const IntVec& l : lineality) gens.push_back(l);
  if (gens.empty()) return 0;
  return rank(IntMat::from_rows(gens));
}

bool RationalCone::contains(const RatVec& x) const {
  for (const IntVec& e : equations)
    if (dot(e, x) != 0) return false;
  for (const IntVec& h : halfspaces)
    if (dot(h, x) < 0) return false;
  return true;
}

bool RationalCone::operator==(const RationalCone& o) const {
  return ambient_dim == o.ambient_dim && rays == o.rays && lineality == o.lineality;
}

RationalCone cone_from_rays(size_t dim, const std::vector<IntVec>& gens) {
  RationalCone c;
  c.ambient_dim = dim;
  // Facets first: rays of the dual problem {y : <g,y> >= 0}.
  DDResult dual = dd_rays(dim, gens);
  c.halfspaces = dual.rays;
  c.equations.clear();
  for (const IntVec& l : dual.lineality) c.equations.push_back(l);
  c.equations = canonical_lineality(c.equations);
  std::sort(c.halfspaces.begin(), c.halfspaces.end());
  // Now the extreme rays of the cone itself, from its H-representation.
  std::vector<IntVec> ineqs = c.halfspaces;
  EqReduced red = reduce_by_equations(dim, ineqs, c.equations);
  DDResult prim = dd_rays(red.K.size(), red.ineqs_reduced);
  for (const IntVec& y : prim.rays) c.rays.push_back(primitive(map_from_reduced(red.K, dim, y)));
  for (const IntVec& y : prim.lineality)
    c.lineality.push_back(primitive(map_from_reduced(red.K, dim, y)));
  std::sort(c.rays.begin(), c.rays.end());
  c.lineality = canonical_lineality(c.lineality);
  return c;
}

RationalCone cone_from_halfspaces(size_t dim, const std::vector<IntVec>& halfspaces,
                                  const std::vector<IntVec>& equations) {
  RationalCone c;
  c.ambient_dim = dim;
  EqReduced red = reduce_by_equations(dim, halfspaces, equations);
  DDResult prim = dd_rays(red.K.size(), red.ineqs_reduced);
  for (const IntVec& y : prim.rays) c.rays.push_back(primitive(map_from_reduced(red.K, dim, y)));
  for (const IntVec& y : prim.lineality)
    c.lineality.push_back(primitive(map_from_reduced(red.K, dim, y)));
  std::sort(c.rays.begin(), c.rays.end());
  c.lineality = canonical_lineality(c.lineality);
  // Irredundant H-representation from the generators.
  std::vector<IntVec> gens = c.rays;
  for (const IntVec& l : c.lineality) {
    gens.push_back(l);
    gens.push_back(neg(l));
  }
  DDResult dual = dd_rays(dim, gens);
  c.halfspaces = dual.rays;
  std::vector<IntVec> eqs;
  for (const IntVec& l : dual.lineality) eqs.push_back(l);
  c.equations = canonical_lineality(eqs);
  std::sort(c.halfspaces.begin(), c.halfspaces.end());
  return c;
}

RationalCone dual_cone(const RationalCone& c) {
  std::vector<IntVec> ineqs = c.rays;
  std::vector<IntVec> eqs = c.lineality;
  return cone_from_halfspaces(c.ambient_dim, ineqs, eqs);
}

bool is_standard_affine(const RationalCone& c) {
  if (!c.is_strongly_convex()) return false;
  if (c.rays.empty()) return true;  // the zero cone
  if (c.rays.size() != c.dim()) return false;
  IntMat R = IntMat::from_cols(c.rays);
  SmithResult s = smith_normal_form(R);
  size_t n = std::min(R.rows, R.cols);
  for (size_t i = 0; i < n; ++i)
    if (s.D.at(i, i) != 0 && s.D.at(i, i) != 1) return false;
  return true;
}

Polyhedron polyhedron_from_halfspaces(size_t dim, const std::vector<HalfspaceQ>& ineqs,
                                      const std::vector<HalfspaceQ>& eqs) {
  // Homogenize: {(x,t) : t >= 0, <a,x> - rhs*t >= 0}, then slice at t = 1.
  std::vector<IntVec> hs;
  for (const HalfspaceQ& h : ineqs) {
    RatVec v(dim + 1);
    for (size_t i = 0; i < dim; ++i) v[i] = Rat(h.normal[i]);
    v[dim] = -h.rhs;
    hs.push_back(primitive(v));
  }
  std::vector<IntVec> es;
  for (const HalfspaceQ& h : eqs) {
    RatVec v(dim + 1);
    for (size_t i = 0; i < dim; ++i) v[i] = Rat(h.normal[i]);
    v[dim] = -h.rhs;
    es.push_back(primitive(v));
  }
  IntVec tpos(dim + 1, Int(0));
  tpos[dim] = 1;
  hs.push_back(tpos);

  RationalCone c = cone_from_halfspaces(dim + 1, hs, es);
  Polyhedron p;
  p.ambient_dim = dim;
  for (const IntVec& r : c.rays) {
    if (r[dim] > 0) {
      RatVec v(dim);
      for (size_t i = 0; i < dim; ++i) v[i] = Rat(r[i]) / Rat(r[dim]);
      p.vertices.push_back(std::move(v));
    } else {
      IntVec v(r.begin(), r.begin() + dim);
      p.rays.push_back(primitive(v));
    }
  }
  for (const IntVec& l : c.lineality) {
    // The t >= 0 constraint forces lineality directions to have t = 0.
    IntVec v(l.begin(), l.begin() + dim);
    p.lineality.push_back(primitive(v));
  }
  p.empty = p.vertices.empty();
  std::sort(p.vertices.begin(), p.vertices.end());
  std::sort(p.rays.begin(), p.rays.end());
  std::sort(p.lineality.begin(), p.lineality.end());
  return p;
}

HRep facets_of_polytope(size_t dim, const std::vector<RatVec>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("facets of empty polytope");
  std::vector<IntVec> gens;
  for (const RatVec& v : vertices) {
    RatVec h(dim + 1);
    for (size_t i = 0; i < dim; ++i) h[i] = v[i];
    h[dim] = 1;
    gens.push_back(primitive(h));
  }
  DDResult dual = dd_rays(dim + 1, gens);
  HRep out;
  for (const IntVec& r : dual.rays) {
    HalfspaceQ h;
    h.normal = IntVec(r.begin(), r.begin() + dim);
    h.rhs = -Rat(r[dim]);
    if (is_zero(h.normal)) continue;  // t >= 0 artifact cannot appear for polytopes
    out.facets.push_back(std::move(h));
  }
  for (const IntVec& l : dual.lineality) {
    HalfspaceQ h;
    h.normal = IntVec(l.begin(), l.begin() + dim);
    h.rhs = -Rat(l[dim]);
    if (is_zero(h.normal)) continue;
    out.hull_equations.push_back(std::move(h));
  }
  auto cmp = [](const HalfspaceQ& a, const HalfspaceQ& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.rhs < b.rhs;
  };
  std::sort(out.facets.begin(), out.facets.end(), cmp);
  std::sort(out.hull_equations.begin(), out.hull_equations.end(), cmp);
  return out;
}

int affine_dim(const std::vector<RatVec>& pts) {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  std::vector<IntVec> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    RatVec d = sub(pts[i], pts[0]);
    if (!is_zero(d)) diffs.push_back(primitive(d));
  }
  if (diffs.empty()) return 0;
  return (int)rank(IntMat::from_rows(diffs));
}

std::vector<PolyFace> face_lattice(size_t dim, const std::vector<RatVec>& vertices) {
  HRep h = facets_of_polytope(dim, vertices);
  size_t nv = vertices.size();
  // Facet incidence.
  std::vector<std::vector<size_t>> finc;
  for (const HalfspaceQ& f : h.facets) {
    std::vector<size_t> tight;
    for (size_t i = 0; i < nv; ++i)
      if (dot(f.normal, vertices[i]) == f.rhs) tight.push_back(i);
    finc.push_back(std::move(tight));
  }

  std::map<std::vector<size_t>, int> seen;  // vertex set -> dim
  std::vector<size_t> all(nv);
  for (size_t i = 0; i < nv; ++i) all[i] = i;

  auto vdim = [&](const std::vector<size_t>& vs) {
    std::vector<RatVec> pts;
    for (size_t i : vs) pts.push_back(vertices[i]);
    return affine_dim(pts);
  };

  // BFS down the lattice by intersecting with facets.
  std::vector<std::vector<size_t>> frontier = {all};
  seen[all] = vdim(all);
  while (!frontier.empty()) {
    std::vector<std::vector<size_t>> next;
    for (const auto& face : frontier) {
      for (const auto& fi : finc) {
        std::vector<size_t> inter;
        std::set_intersection(face.begin(), face.end(), fi.begin(), fi.end(),
                              std::back_inserter(inter));
        if (inter.empty() || inter == face) continue;
        if (seen.count(inter)) continue;
        seen[inter] = vdim(inter);
        next.push_back(inter);
      }
    }
    frontier = std::move(next);
  }

  std::vector<PolyFace> out;
  for (auto& [vs, d] : seen) out.push_back(PolyFace{vs, d});
  std::sort(out.begin(), out.end(), [](const PolyFace& a, const PolyFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.verts < b.verts;
  });
  return out;
}

namespace {

// Pulling triangulation, combinatorial on the face lattice.
void pull_triangulate(const std::vector<PolyFace>& faces, const PolyFace& face,
                      std::vector<size_t>& prefix, std::vector<std::vector<size_t>>& out) {
  if ((int)face.verts.size() == face.dim + 1) {  // simplex
    std::vector<size_t> s = prefix;
    s.insert(s.end(), face.verts.begin(), face.verts.end());
    out.push_back(std::move(s));
    return;
  }
  size_t apex = face.verts.front();  // lex-least index
  prefix.push_back(apex);
  for (const PolyFace& sub : faces) {
    if (sub.dim != face.dim - 1) continue;
    if (!std::includes(face.verts.begin(), face.verts.end(), sub.verts.begin(), sub.verts.end()))
      continue;
    if (std::binary_search(sub.verts.begin(), sub.verts.end(), apex)) continue;
    pull_triangulate(faces, sub, prefix, out);
  }
  prefix.pop_back();
}

}  // namespace

Rat normalized_volume(size_t dim, const std::vector<RatVec>& vertices) {
  if (affine_dim(vertices) < (int)dim) return Rat(0);
  std::vector<PolyFace> faces = face_lattice(dim, vertices);
  const PolyFace& top = faces.back();
  std::vector<std::vector<size_t>> simplices;
  std::vector<size_t> prefix;
  pull_triangulate(faces, top, prefix, simplices);
  Rat vol = 0;
  for (const auto& s : simplices) {
    RatMat m(dim, dim);
    for (size_t i = 1; i < s.size(); ++i)
      for (size_t j = 0; j < dim; ++j) m.at(i - 1, j) = vertices[s[i]][j] - vertices[s[0]][j];
    Rat d = det(m);
    vol += d < 0 ? -d : d;
  }
  return vol;
}

}  // namespace mumford
