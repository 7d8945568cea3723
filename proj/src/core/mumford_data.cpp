#include "mumford_data.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mumford {

void MumfordData::validate() const {
  if (sections.size() != k) throw std::invalid_argument("section count must equal k");
  if (k == 0) throw std::invalid_argument("need at least one section");
  for (const PLSection& b : sections) {
    if (b.g() != g) throw std::invalid_argument("section dimension mismatch");
    if (d % b.denominator() != 0)
      throw std::invalid_argument("section denominator must divide d");
  }
  RatMat Q = total_form();
  if (!is_positive_definite(Q))
    throw std::invalid_argument(
        "total quadratic part must be positive definite (maximal degeneration with joint "
        "bending in every direction)");
}

RatMat MumfordData::total_form() const {
  RatMat Q(g, g);
  for (const PLSection& b : sections) Q = add(Q, b.quadratic_part());
  return Q;
}

IntMat MumfordData::total_form_int() const {
  RatMat Q = total_form();
  IntMat out(g, g);
  for (size_t i = 0; i < Q.a.size(); ++i) {
    if (den(Q.a[i]) != 1) throw std::domain_error("total quadratic part is not integral");
    out.a[i] = num(Q.a[i]);
  }
  return out;
}

std::string to_string(LocalForm f) {
  switch (f) {
    case LocalForm::Smooth: return "smooth";
    case LocalForm::Nodal: return "nodal";
    case LocalForm::NearlyNodal: return "nearly-nodal";
    case LocalForm::Semistable: return "semistable";
    default: return "other";
  }
}

bool SingularityReport::nodal() const {
  for (auto& [I, f] : per_stratum)
    if (f != LocalForm::Nodal && f != LocalForm::Smooth) return false;
  return true;
}

namespace {

// Kernel of the restricted total form: the unbent torus directions of the
// stratum.
std::vector<IntVec> stratum_kernel(const MumfordData& data, const std::vector<size_t>& I) {
  RatMat Q(data.g, data.g);
  for (size_t i : I) Q = add(Q, data.sections[i].quadratic_part());
  IntMat Qi(data.g, data.g);
  Int l = 1;
  for (const Rat& q : Q.a) l = lcm(l, den(q));
  for (size_t i = 0; i < Q.a.size(); ++i) Qi.a[i] = num(Q.a[i]) * (l / den(Q.a[i]));
  return kernel_basis(Qi);
}

struct Reduction {
  std::vector<IntVec> kernel;      // cylinder directions (in M)
  std::vector<IntVec> complement;  // complement basis columns (in M)
};

Reduction make_reduction(size_t g, const std::vector<IntVec>& kernel) {
  Reduction red;
  red.kernel = kernel;
  size_t h = kernel.size();
  if (h == 0) {
    for (size_t i = 0; i < g; ++i) {
      IntVec e(g, Int(0));
      e[i] = 1;
      red.complement.push_back(e);
    }
    return red;
  }
  IntMat K = IntMat::from_cols(kernel);
  SmithResult s = smith_normal_form(K);
  RatMat Uinv = inverse(to_rat(s.U));
  for (size_t j = h; j < g; ++j) {
    RatVec col(g);
    for (size_t i = 0; i < g; ++i) col[i] = Uinv.at(i, j);
    red.complement.push_back(to_int_checked(col));
  }
  return red;
}

PLSection reduce_section(const PLSection& b, const Reduction& red) {
  size_t gr = red.complement.size();
  PLSection out(gr, b.denominator());
  for (const HyperplaneFamilyAtom& f : b.families()) {
    IntVec rn(gr);
    bool zero = true;
    for (size_t j = 0; j < gr; ++j) {
      rn[j] = dot(f.normal, red.complement[j]);
      if (rn[j] != 0) zero = false;
    }
    if (zero) continue;  // family is constant along the stratum torus
    out.add_family(rn, f.offset, f.param);
  }
  if (!b.forms().empty() && !red.kernel.empty())
    throw std::domain_error("degenerate strata of form sections are out of scope");
  for (const FormAtom& fa : b.forms()) out.add_form(fa.B, fa.L, fa.scale);
  return out;
}

RatVec lift_point(const std::vector<IntVec>& complement, const RatVec& reduced) {
  size_t g = complement[0].size();
  RatVec x(g, Rat(0));
  for (size_t j = 0; j < complement.size(); ++j)
    for (size_t i = 0; i < g; ++i) x[i] += reduced[j] * Rat(complement[j][i]);
  return x;
}

}  // namespace

Stratification stratification(const MumfordData& data, std::vector<size_t> I) {
  data.validate();
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  if (I.empty()) throw std::invalid_argument("stratification: empty index set");
  for (size_t i : I)
    if (i >= data.k) throw std::invalid_argument("stratification: index out of range");

  Stratification out;
  out.I = I;
  Reduction red = make_reduction(data.g, stratum_kernel(data, I));
  out.complement = red.complement;

  std::vector<PLSection> secs;
  for (size_t i : I) secs.push_back(reduce_section(data.sections[i], red));
  out.complex = joint_bending_complex(secs);
  // Remap wall weights from positions in I to global section indices.
  for (CellClass& cc : out.complex.cells) {
    std::map<size_t, Rat> remapped;
    for (auto& [pos, w] : cc.weights) remapped[I[pos]] = w;
    cc.weights = std::move(remapped);
  }
  for (const IntVec& kv : red.kernel)
    out.complex.cylinder_dirs.push_back(primitive_signed(to_rat(kv)));
  annotate_embeddedness(out.complex);

  size_t h = red.kernel.size();
  for (size_t ci = 0; ci < out.complex.cells.size(); ++ci) {
    const CellClass& cc = out.complex.cells[ci];
    if (cc.dim != (int)out.complex.dim) continue;
    Stratification::Component comp;
    comp.cell_index = ci;
    comp.polytope = cc.verts;
    comp.abelian_dim = h;
    comp.compact = h == 0;
    comp.self_glued = cc.self_glued;
    out.components.push_back(std::move(comp));
  }
  return out;
}

namespace {

// Gradient of a hyperplane-only section at base + eps1*dirs[0] + ... for
// infinitesimal eps1 >> eps2 >> ... > 0: exact one-sided slopes.
RatVec graded_gradient(const PLSection& b, const RatVec& base, const std::vector<RatVec>& dirs) {
  if (!b.forms().empty()) throw std::logic_error("graded_gradient needs hyperplane sections");
  size_t g = b.g();
  RatVec grad = b.linear_part();
  for (const HyperplaneFamilyAtom& f : b.families()) {
    Rat t0 = dot(f.normal, base) - f.offset;
    Int slope;
    if (den(t0) != 1) {
      slope = floor_rat(t0);
    } else {
      int side = 0;
      for (const RatVec& d : dirs) {
        Rat s = dot(f.normal, d);
        if (s > 0) {
          side = 1;
          break;
        }
        if (s < 0) {
          side = -1;
          break;
        }
      }
      if (side == 0) throw std::domain_error("direction lies inside a bending hyperplane");
      slope = side > 0 ? num(t0) : num(t0) - 1;
    }
    for (size_t i = 0; i < g; ++i) grad[i] += f.param * Rat(slope * f.normal[i]);
  }
  return grad;
}

struct StarCell {
  std::vector<RatVec> verts;  // absolute position (reduced coordinates)
  std::vector<RatVec> grads;  // per I-element gradient (full coordinates)
};

// All maximal cells of the stratification complex containing the face, with
// the per-section full-coordinate gradients on each.
std::vector<StarCell> face_star(const MumfordData& data, const Stratification& strat,
                                const std::vector<RatVec>& face) {
  size_t gr = strat.complex.dim;
  std::vector<StarCell> out;
  for (const CellClass& cc : strat.complex.cells) {
    if (cc.dim != (int)gr) continue;
    HRep h = facets_of_polytope(gr, cc.verts);
    std::vector<Int> lo(gr), hi(gr);
    for (size_t i = 0; i < gr; ++i) {
      Rat flo = face[0][i], fhi = face[0][i];
      for (const RatVec& v : face) {
        flo = std::min(flo, v[i]);
        fhi = std::max(fhi, v[i]);
      }
      Rat clo = cc.verts[0][i], chi = cc.verts[0][i];
      for (const RatVec& v : cc.verts) {
        clo = std::min(clo, v[i]);
        chi = std::max(chi, v[i]);
      }
      lo[i] = ceil_rat(flo - chi);
      hi[i] = floor_rat(fhi - clo);
    }
    IntVec kk(gr);
    std::function<void(size_t)> rec = [&](size_t idx) {
      if (idx == gr) {
        for (const RatVec& v : face) {
          RatVec w = v;
          for (size_t i = 0; i < gr; ++i) w[i] -= Rat(kk[i]);
          for (const HalfspaceQ& f : h.hull_equations)
            if (dot(f.normal, w) != f.rhs) return;
          for (const HalfspaceQ& f : h.facets)
            if (dot(f.normal, w) < f.rhs) return;
        }
        StarCell sc;
        sc.verts = cc.verts;
        for (RatVec& v : sc.verts)
          for (size_t i = 0; i < gr; ++i) v[i] += Rat(kk[i]);
        RatVec cen(gr, Rat(0));
        for (const RatVec& v : sc.verts) cen = add(cen, v);
        for (Rat& q : cen) q /= Rat((long)sc.verts.size());
        RatVec lifted = lift_point(strat.complement, cen);
        for (size_t i : strat.I) {
          const PLSection& b = data.sections[i];
          if (b.forms().empty())
            sc.grads.push_back(graded_gradient(b, lifted, {}));
          else
            sc.grads.push_back(b.gradient(lifted));
        }
        out.push_back(std::move(sc));
        return;
      }
      for (Int v = lo[idx]; v <= hi[idx]; ++v) {
        kk[idx] = v;
        rec(idx + 1);
      }
    };
    rec(0);
  }
  return out;
}

RationalCone face_dual_cone(const MumfordData& data, const Stratification& strat,
                            const std::vector<RatVec>& face) {
  size_t g = data.g, k = data.k, gr = strat.complex.dim;
  std::vector<StarCell> star = face_star(data, strat, face);
  RatVec cen(gr, Rat(0));
  for (const RatVec& v : face) cen = add(cen, v);
  for (Rat& q : cen) q /= Rat((long)face.size());

  std::vector<IntVec> ineqs, eqs;
  std::set<size_t> inI(strat.I.begin(), strat.I.end());
  for (size_t i = 0; i < k; ++i) {
    IntVec row(g + k, Int(0));
    row[g + i] = 1;
    if (inI.count(i))
      ineqs.push_back(row);
    else
      eqs.push_back(row);
  }
  for (const StarCell& sc : star) {
    for (const RatVec& v : sc.verts) {
      RatVec tr = sub(v, cen);
      if (is_zero(tr)) continue;
      RatVec dir = lift_point(strat.complement, tr);
      RatVec row(g + k, Rat(0));
      for (size_t i = 0; i < g; ++i) row[i] = dir[i];
      for (size_t t = 0; t < strat.I.size(); ++t) row[g + strat.I[t]] = dot(sc.grads[t], dir);
      ineqs.push_back(primitive(row));
    }
  }
  // Cylinder directions: the supporting functional is constant along them,
  // on every star cell alike.
  for (const IntVec& kv : strat.complex.cylinder_dirs) {
    RatVec dir = to_rat(kv);
    RatVec row(g + k, Rat(0));
    for (size_t i = 0; i < g; ++i) row[i] = dir[i];
    if (!star.empty())
      for (size_t t = 0; t < strat.I.size(); ++t)
        row[g + strat.I[t]] = dot(star[0].grads[t], dir);
    eqs.push_back(primitive(row));
  }
  std::sort(ineqs.begin(), ineqs.end());
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
  return cone_from_halfspaces(g + k, ineqs, eqs);
}

// Subsets of {0..k-1} in a canonical order: by size, then lexicographic.
std::vector<std::vector<size_t>> all_subsets(size_t k) {
  std::vector<std::vector<size_t>> out;
  for (size_t mask = 1; mask < (size_t(1) << k); ++mask) {
    std::vector<size_t> I;
    for (size_t i = 0; i < k; ++i)
      if ((mask >> i) & 1) I.push_back(i);
    out.push_back(std::move(I));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

FaceRecord make_record(const MumfordData& data, const Stratification& strat,
                       const CellClass& cc) {
  FaceRecord rec;
  rec.I = strat.I;
  rec.face_verts = cc.verts;
  rec.face_dim = cc.dim;
  rec.abelian_dim = strat.complex.cylinder_dirs.size();
  rec.compact = rec.abelian_dim == 0;
  rec.dual_cone = face_dual_cone(data, strat, cc.verts);
  rec.standard_affine = is_standard_affine(rec.dual_cone);
  std::vector<IntVec> proj;
  std::set<size_t> support;
  bool nonneg = true;
  auto add_proj = [&](const IntVec& r) {
    IntVec p(data.k);
    bool zero = true;
    for (size_t i = 0; i < data.k; ++i) {
      p[i] = r[data.g + i];
      if (p[i] < 0) nonneg = false;
      if (p[i] != 0) {
        support.insert(i);
        zero = false;
      }
    }
    if (!zero) proj.push_back(p);
  };
  for (const IntVec& r : rec.dual_cone.rays) add_proj(r);
  for (const IntVec& l : rec.dual_cone.lineality) {
    add_proj(l);
    add_proj(neg(l));
  }
  rec.image_face.assign(support.begin(), support.end());
  rec.flat = nonneg;
  if (nonneg && !support.empty()) {
    RationalCone img = cone_from_rays(data.k, proj);
    for (size_t i : support) {
      RatVec e(data.k, Rat(0));
      e[i] = 1;
      if (!img.contains(e)) {
        rec.flat = false;
        break;
      }
    }
  }
  return rec;
}

}  // namespace

std::vector<FaceRecord> overgraph_faces(const MumfordData& data) {
  data.validate();
  std::vector<FaceRecord> out;
  for (const auto& I : all_subsets(data.k)) {
    Stratification strat = stratification(data, I);
    for (const CellClass& cc : strat.complex.cells) out.push_back(make_record(data, strat, cc));
  }
  return out;
}

namespace {

// Recognize the slice of a ray group at height 1 as a model factor.
ConeFactor analyze_factor(std::vector<IntVec> rays, size_t g, size_t axis) {
  ConeFactor out;
  out.axis = axis;
  out.rays = rays;
  out.kind = ConeFactor::Kind::Other;
  std::vector<RatVec> slice;
  for (const IntVec& r : rays) {
    if (r[g + axis] != 1) return out;  // model rays sit at height 1
    slice.push_back(to_rat(r));
  }
  size_t n = rays.size();
  IntMat m = IntMat::from_cols(rays);
  auto unimodular_cols = [&]() {
    SmithResult s = smith_normal_form(m);
    size_t nn = std::min(m.rows, m.cols);
    for (size_t i = 0; i < nn; ++i)
      if (s.D.at(i, i) != 0 && s.D.at(i, i) != 1) return false;
    return rank(m) == n;
  };
  if (n == 1) {
    if (unimodular_cols()) out.kind = ConeFactor::Kind::Coordinate;
    return out;
  }
  if (n == 2) {
    if (unimodular_cols()) out.kind = ConeFactor::Kind::Node;
    return out;
  }
  int d = affine_dim(slice);
  // Unimodular simplex at height 1: the snc factor x^(1)...x^(m) = u.
  if ((int)n == d + 1) {
    if (unimodular_cols()) out.kind = ConeFactor::Kind::Simplex;
    return out;
  }
  // Unit cube at height 1: the nearly-nodal factor x_1y_1 = ... = u.
  if (n == (size_t(1) << d)) {
    std::vector<RatVec> vs = slice;
    std::sort(vs.begin(), vs.end());
    RatVec v0 = vs[0];
    std::vector<RatVec> diffs;
    for (size_t i = 1; i < vs.size(); ++i) diffs.push_back(sub(vs[i], v0));
    std::set<RatVec> diffset(diffs.begin(), diffs.end());
    std::vector<RatVec> gens;
    for (const RatVec& dv : diffs) {
      bool decomposable = false;
      for (const RatVec& a : diffs) {
        if (a == dv) continue;
        RatVec rest = sub(dv, a);
        if (!is_zero(rest) && diffset.count(rest)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) gens.push_back(dv);
    }
    if ((int)gens.size() != d) return out;
    std::set<RatVec> sums;
    for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
      RatVec s = v0;
      for (int j = 0; j < d; ++j)
        if ((mask >> j) & 1) s = add(s, gens[j]);
      sums.insert(s);
    }
    if (sums != std::set<RatVec>(vs.begin(), vs.end())) return out;
    // The cone over the cube must be lattice-primitive.
    std::vector<IntVec> cols;
    for (const RatVec& gv : gens) cols.push_back(to_int_checked(gv));
    cols.push_back(to_int_checked(v0));
    IntMat cm = IntMat::from_cols(cols);
    SmithResult s = smith_normal_form(cm);
    size_t nn = std::min(cm.rows, cm.cols);
    for (size_t i = 0; i < nn; ++i)
      if (s.D.at(i, i) != 0 && s.D.at(i, i) != 1) return out;
    out.kind = ConeFactor::Kind::Cube;
    out.cube_origin = v0;
    out.cube_generators = gens;
    return out;
  }
  return out;
}

}  // namespace

LocalForm ConeFactorization::local_form() const {
  if (!product_ok) return LocalForm::Other;
  bool has_node = false, has_cube = false, has_simplex = false;
  for (const ConeFactor& f : factors) {
    switch (f.kind) {
      case ConeFactor::Kind::Coordinate: break;
      case ConeFactor::Kind::Node: has_node = true; break;
      case ConeFactor::Kind::Cube: has_cube = true; break;
      case ConeFactor::Kind::Simplex: has_simplex = true; break;
      case ConeFactor::Kind::Other: return LocalForm::Other;
    }
  }
  if (has_cube) return LocalForm::NearlyNodal;
  if (has_simplex) return LocalForm::Semistable;
  if (has_node) return LocalForm::Nodal;
  return LocalForm::Smooth;
}

ConeFactorization factor_dual_cone(const RationalCone& c, size_t g, size_t k) {
  ConeFactorization out;
  if (!c.is_strongly_convex()) return out;
  std::map<size_t, std::vector<IntVec>> groups;
  for (const IntVec& r : c.rays) {
    std::vector<size_t> supp;
    for (size_t i = 0; i < k; ++i)
      if (r[g + i] != 0) supp.push_back(i);
    if (supp.empty())
      out.horizontal.push_back(r);
    else if (supp.size() == 1 && r[g + supp[0]] > 0)
      groups[supp[0]].push_back(r);
    else
      return out;  // mixed base support: no product structure
  }
  // Span independence and joint saturation: all rays together must generate
  // a saturated sublattice whose rank is the sum of the factor ranks.
  std::vector<IntVec> allcols;
  size_t dims = 0;
  for (auto& [i, rays] : groups) {
    for (const IntVec& r : rays) allcols.push_back(r);
    dims += rank(IntMat::from_cols(rays));
  }
  for (const IntVec& r : out.horizontal) allcols.push_back(r);
  if (!out.horizontal.empty()) dims += rank(IntMat::from_cols(out.horizontal));
  if (allcols.empty()) {
    out.product_ok = true;
    return out;
  }
  IntMat all = IntMat::from_cols(allcols);
  if (rank(all) != dims) return out;
  {
    SmithResult s = smith_normal_form(all);
    size_t nn = std::min(all.rows, all.cols);
    for (size_t i = 0; i < nn; ++i)
      if (s.D.at(i, i) != 0 && s.D.at(i, i) != 1) return out;
  }
  out.product_ok = true;
  for (auto& [i, rays] : groups) out.factors.push_back(analyze_factor(rays, g, i));
  return out;
}

namespace {

LocalForm classify_cone(const FaceRecord& rec, size_t g, size_t k) {
  return factor_dual_cone(rec.dual_cone, g, k).local_form();
}

int severity(LocalForm f) {
  switch (f) {
    case LocalForm::Smooth: return 0;
    case LocalForm::Nodal: return 1;
    case LocalForm::Semistable: return 2;
    case LocalForm::NearlyNodal: return 3;
    default: return 4;
  }
}

}  // namespace

namespace {

bool sections_hyperplane_only(const MumfordData& data) {
  for (const PLSection& b : data.sections)
    if (!b.forms().empty()) return false;
  return true;
}

// One-sided gradient of a hyperplane section on the chamber with the given
// interior direction, at base point p. Families through p take the side of
// the chamber; families not through p take their floor slope. Families
// orthogonal to the chamber span contribute nothing to any constraint and
// get an arbitrary fixed side.
RatVec chamber_gradient_of(const PLSection& b, const RatVec& p, const RatVec& interior) {
  size_t g = b.g();
  RatVec grad = b.linear_part();
  for (const HyperplaneFamilyAtom& f : b.families()) {
    Rat t0 = dot(f.normal, p) - f.offset;
    Int slope;
    if (den(t0) != 1) {
      slope = floor_rat(t0);
    } else {
      Rat side = dot(f.normal, interior);
      slope = side >= 0 ? num(t0) : num(t0) - 1;
    }
    for (size_t i = 0; i < g; ++i) grad[i] += f.param * Rat(slope * f.normal[i]);
  }
  return grad;
}

// Chambers of a central arrangement, cached by the normal set.
std::vector<RationalCone> enumerate_central_chambers(size_t g, const std::vector<IntVec>& normals) {
  std::vector<RationalCone> out;
  if (g == 0) {
    out.push_back(cone_from_halfspaces(0, {}));
    return out;
  }
  std::vector<IntVec> cons;
  std::function<void(size_t)> rec = [&](size_t f) {
    RationalCone c = cone_from_halfspaces(g, cons);
    if (c.dim() < g) return;
    if (f == normals.size()) {
      out.push_back(std::move(c));
      return;
    }
    for (int s : {1, -1}) {
      cons.push_back(s > 0 ? normals[f] : neg(normals[f]));
      rec(f + 1);
      cons.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<RationalCone>& cached_central_chambers(size_t g, const std::vector<IntVec>& normals) {
  static std::map<std::pair<size_t, std::vector<IntVec>>, std::vector<RationalCone>> cache;
  auto key = std::make_pair(g, normals);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, enumerate_central_chambers(g, normals)).first->second;
}

// Minimal (vertex-level) dual cones of one stratum via local fans: enumerate
// the 0-cell classes of the stratum complex directly and read the star off
// the central arrangement of the hyperplanes through each vertex.
LocalForm classify_stratum_minimal(const MumfordData& data, const std::vector<size_t>& I,
                                   bool& smooth_flag, std::vector<FaceRecord>& witnesses) {
  size_t g = data.g, k = data.k;
  Reduction red = make_reduction(g, stratum_kernel(data, I));
  size_t gr = red.complement.size();

  struct RFam {
    IntVec rnormal;  // reduced, as given
    Rat offset;
  };
  std::vector<RFam> fams;
  for (size_t i : I)
    for (const HyperplaneFamilyAtom& f : data.sections[i].families()) {
      IntVec rn(gr);
      bool zero = true;
      for (size_t j = 0; j < gr; ++j) {
        rn[j] = dot(f.normal, red.complement[j]);
        if (rn[j] != 0) zero = false;
      }
      if (!zero) fams.push_back({std::move(rn), f.offset});
    }

  // Vertex classes: solutions of gr independent incidences, reduced mod Z^gr.
  std::set<RatVec> vertex_classes;
  if (gr == 0) {
    vertex_classes.insert(RatVec{});
  } else {
    std::vector<size_t> idx;
    std::function<void(size_t)> pick = [&](size_t start) {
      if (idx.size() == gr) {
        RatMat A(gr, gr);
        RatVec eps(gr);
        for (size_t t = 0; t < gr; ++t) {
          for (size_t j = 0; j < gr; ++j) A.at(t, j) = Rat(fams[idx[t]].rnormal[j]);
          eps[t] = fams[idx[t]].offset;
        }
        Rat dt = det(A);
        if (dt == 0) return;
        RatMat Ai = inverse(A);
        Int bound = abs(num(dt)) / den(dt) + 1;
        IntVec n(gr);
        std::function<void(size_t)> shifts = [&](size_t t) {
          if (t == gr) {
            RatVec rhs(gr);
            for (size_t j = 0; j < gr; ++j) rhs[j] = eps[j] + Rat(n[j]);
            RatVec p = Ai.mul(rhs);
            for (Rat& q : p) q -= Rat(floor_rat(q));
            vertex_classes.insert(p);
            return;
          }
          for (Int v = 0; v < bound; ++v) {
            n[t] = v;
            shifts(t + 1);
          }
        };
        shifts(0);
        return;
      }
      for (size_t i = start; i < fams.size(); ++i) {
        idx.push_back(i);
        pick(i + 1);
        idx.pop_back();
      }
    };
    pick(0);
  }

  std::set<size_t> inI(I.begin(), I.end());
  LocalForm worst = LocalForm::Smooth;
  for (const RatVec& p : vertex_classes) {
    // Normal classes through p.
    std::vector<IntVec> through;
    for (const RFam& f : fams)
      if (den(dot(f.rnormal, p) - f.offset) == 1)
        through.push_back(primitive_signed(to_rat(f.rnormal)));
    std::sort(through.begin(), through.end());
    through.erase(std::unique(through.begin(), through.end()), through.end());
    if (gr > 0 && rank(IntMat::from_rows(through)) < gr) continue;  // not a 0-cell

    RatVec plift = gr == 0 ? RatVec(g, Rat(0)) : lift_point(red.complement, p);

    std::vector<IntVec> ineqs, eqs;
    for (size_t i = 0; i < k; ++i) {
      IntVec row(g + k, Int(0));
      row[g + i] = 1;
      if (inI.count(i))
        ineqs.push_back(row);
      else
        eqs.push_back(row);
    }
    bool first_chamber = true;
    for (const RationalCone& ch : cached_central_chambers(gr, through)) {
      RatVec inner(gr, Rat(0));
      for (const IntVec& r : ch.rays) inner = add(inner, to_rat(r));
      RatVec inner_lift = gr == 0 ? RatVec(g, Rat(0)) : lift_point(red.complement, inner);
      std::vector<RatVec> grads;
      for (size_t i : I) grads.push_back(chamber_gradient_of(data.sections[i], plift, inner_lift));
      for (const IntVec& ray : ch.rays) {
        RatVec dir = lift_point(red.complement, to_rat(ray));
        RatVec row(g + k, Rat(0));
        for (size_t i = 0; i < g; ++i) row[i] = dir[i];
        for (size_t t = 0; t < I.size(); ++t) row[g + I[t]] = dot(grads[t], dir);
        ineqs.push_back(primitive(row));
      }
      if (first_chamber) {
        for (const IntVec& kv : red.kernel) {
          RatVec dir = to_rat(kv);
          RatVec row(g + k, Rat(0));
          for (size_t i = 0; i < g; ++i) row[i] = dir[i];
          for (size_t t = 0; t < I.size(); ++t) row[g + I[t]] = dot(grads[t], dir);
          eqs.push_back(primitive(row));
        }
        first_chamber = false;
      }
    }
    std::sort(ineqs.begin(), ineqs.end());
    ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
    RationalCone sigma = cone_from_halfspaces(g + k, ineqs, eqs);

    FaceRecord fr;
    fr.I = I;
    fr.face_dim = 0;
    fr.abelian_dim = red.kernel.size();
    fr.compact = fr.abelian_dim == 0;
    fr.dual_cone = sigma;
    fr.standard_affine = is_standard_affine(sigma);
    if (!fr.standard_affine) smooth_flag = false;
    LocalForm lf = factor_dual_cone(sigma, g, k).local_form();
    if (severity(lf) > severity(worst)) worst = lf;
    if (!fr.standard_affine || lf == LocalForm::Other) witnesses.push_back(std::move(fr));
  }
  return worst;
}

}  // namespace

SingularityReport classify_singularities(const MumfordData& data, bool all_faces) {
  data.validate();
  SingularityReport rep;
  rep.smooth = true;
  rep.strict = true;

  bool fast = !all_faces && sections_hyperplane_only(data);
  if (fast) {
    for (const auto& I : all_subsets(data.k))
      rep.per_stratum[I] = classify_stratum_minimal(data, I, rep.smooth, rep.witnesses);
    // Strictness: for recognized transversely shifted matroidal data, strict
    // iff every ground element carries at least two hyperplanes; otherwise
    // fall back to the component sweep.
    ArrangementRecovery rec = recover_shifted_matroidal(data);
    if (rec.recognized) {
      rep.strict = true;
      for (const auto& offs : rec.offsets)
        if (offs.size() < 2) rep.strict = false;
    } else {
      for (const auto& I : all_subsets(data.k)) {
        Stratification strat = stratification(data, I);
        for (const auto& comp : strat.components)
          if (comp.self_glued) rep.strict = false;
      }
    }
    return rep;
  }

  for (const auto& I : all_subsets(data.k)) {
    Stratification strat = stratification(data, I);
    for (const auto& comp : strat.components)
      if (comp.self_glued) rep.strict = false;
    LocalForm worst = LocalForm::Smooth;
    for (const CellClass& cc : strat.complex.cells) {
      if (!all_faces && cc.dim != 0) continue;
      FaceRecord fr = make_record(data, strat, cc);
      if (!fr.standard_affine) rep.smooth = false;
      LocalForm lf = classify_cone(fr, data.g, data.k);
      if (severity(lf) > severity(worst)) worst = lf;
      if (!fr.standard_affine || lf == LocalForm::Other) rep.witnesses.push_back(fr);
    }
    rep.per_stratum[I] = worst;
  }
  return rep;
}

ArrangementRecovery recover_shifted_matroidal(const MumfordData& data) {
  ArrangementRecovery out;
  std::vector<IntVec> cols;
  std::vector<std::vector<Rat>> offsets;
  for (const PLSection& b : data.sections) {
    if (!b.forms().empty() || b.families().empty()) return out;
    IntVec normal = primitive_signed(to_rat(b.families()[0].normal));
    std::vector<Rat> offs;
    for (const HyperplaneFamilyAtom& f : b.families()) {
      if (primitive_signed(to_rat(f.normal)) != normal) return out;  // not parallel
      if (f.param != 1) return out;  // bending parameter must be 1
      Rat off = f.normal == normal ? f.offset : -f.offset;
      off -= Rat(floor_rat(off));
      offs.push_back(off);
    }
    std::sort(offs.begin(), offs.end());
    cols.push_back(normal);
    offsets.push_back(std::move(offs));
  }
  IntMat repm = IntMat::from_cols(cols);
  if (!is_unimodular(repm)) return out;
  if (!arrangement_is_transversal(data.sections)) return out;
  out.recognized = true;
  out.rep = MatroidRep{data.k, data.g, repm};
  out.offsets = offsets;
  return out;
}

namespace {

bool hyperplane_only(const MumfordData& data) {
  for (const PLSection& b : data.sections)
    if (!b.forms().empty()) return false;
  return true;
}

bool unshifted_unimodular(const MumfordData& data) {
  if (!hyperplane_only(data)) return false;
  std::vector<IntVec> cols;
  for (const PLSection& b : data.sections)
    for (const HyperplaneFamilyAtom& f : b.families()) {
      if (den(f.offset) != 1) return false;
      cols.push_back(f.normal);
    }
  return is_unimodular(IntMat::from_cols(cols));
}

RatVec cone_interior(const RationalCone& c) {
  RatVec p(c.ambient_dim, Rat(0));
  for (const IntVec& r : c.rays) p = add(p, to_rat(r));
  for (const IntVec& l : c.lineality) p = add(p, to_rat(l));
  return p;
}

// Total gradient of all sections at 0 perturbed along the graded directions.
RatVec total_graded_gradient(const MumfordData& data, const std::vector<RatVec>& dirs) {
  RatVec grad(data.g, Rat(0));
  for (const PLSection& b : data.sections)
    grad = add(grad, graded_gradient(b, RatVec(data.g, Rat(0)), dirs));
  return grad;
}

std::vector<IntVec> distinct_normals(const MumfordData& data) {
  std::vector<IntVec> normals;
  for (const PLSection& b : data.sections)
    for (const HyperplaneFamilyAtom& f : b.families())
      normals.push_back(primitive_signed(to_rat(f.normal)));
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  return normals;
}

}  // namespace

bool is_K_trivial(const MumfordData& data) {
  data.validate();
  if (unshifted_unimodular(data)) {
    // Unimodularity certifies the dicing property, so every maximal
    // linearity domain has a representative incident to the origin; the
    // chambers of the central arrangement at 0 see every gradient class.
    for (const RationalCone& ch : cached_central_chambers(data.g, distinct_normals(data))) {
      RatVec grad = total_graded_gradient(data, {cone_interior(ch)});
      for (const Rat& q : grad)
        if (den(q) != 1) return false;
    }
    return true;
  }
  std::vector<size_t> full;
  for (size_t i = 0; i < data.k; ++i) full.push_back(i);
  Stratification strat = stratification(data, full);
  for (const auto& comp : strat.components) {
    RatVec cen(strat.complex.dim, Rat(0));
    for (const RatVec& v : comp.polytope) cen = add(cen, v);
    for (Rat& q : cen) q /= Rat((long)comp.polytope.size());
    RatVec grad(data.g, Rat(0));
    for (const PLSection& b : data.sections) grad = add(grad, b.gradient(cen));
    for (const Rat& q : grad)
      if (den(q) != 1) return false;
  }
  return true;
}

std::vector<IntVec> lambda_basis_local(const MumfordData& data);

namespace detail {
PeriodicComplex dual_complex_windowed(const MumfordData& data);
PeriodicComplex dual_complex_two_skeleton(const MumfordData& data);
}

std::vector<IntVec> lambda_basis_local(const MumfordData& data) {
  IntMat B = data.total_form_int();
  std::vector<IntVec> period;
  for (size_t j = 0; j < data.g; ++j) period.push_back(B.col(j));
  return period;
}

PeriodicComplex detail::dual_complex_windowed(const MumfordData& data) {
  std::vector<size_t> full;
  for (size_t i = 0; i < data.k; ++i) full.push_back(i);
  Stratification strat = stratification(data, full);

  // One maximal slice cell per vertex class v: the convex hull of
  // -grad(b_1 + ... + b_k) over the star of v.
  std::vector<std::vector<RatVec>> tcells;
  for (const CellClass& cc : strat.complex.cells) {
    if (cc.dim != 0) continue;
    std::vector<StarCell> star = face_star(data, strat, cc.verts);
    std::vector<RatVec> verts;
    for (const StarCell& sc : star) {
      RatVec gsum(data.g, Rat(0));
      for (const RatVec& gr : sc.grads) gsum = add(gsum, gr);
      RatVec v(data.g);
      for (size_t i = 0; i < data.g; ++i) v[i] = -gsum[i];
      verts.push_back(std::move(v));
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    tcells.push_back(std::move(verts));
  }
  return assemble_periodic_complex(data.g, lambda_basis_local(data), tcells);
}

// Fast path for unshifted unimodular data in higher rank: the 2-skeleton of
// the slice tessellation, built combinatorially from the local fans at the
// origin (dicing puts a lattice point on every face class).
PeriodicComplex detail::dual_complex_two_skeleton(const MumfordData& data) {
  size_t g = data.g;
  std::vector<IntVec> period = lambda_basis_local(data);
  std::vector<IntVec> normals = distinct_normals(data);

  // T-vertex for a chamber interior direction chain.
  auto tvertex = [&](const std::vector<RatVec>& dirs) {
    RatVec grad = total_graded_gradient(data, dirs);
    RatVec v(g);
    for (size_t i = 0; i < g; ++i) v[i] = -grad[i];
    return v;
  };

  struct Edge {
    std::vector<RatVec> verts;  // two endpoints, sorted
  };

  PeriodicComplex pc;
  pc.dim = g;
  pc.period = period;

  std::map<std::vector<RatVec>, size_t> index;  // canonical verts -> cell index
  auto intern = [&](std::vector<RatVec> verts, int dim) {
    auto [cv, shift] = canonicalize_cell(verts, period);
    auto it = index.find(cv);
    if (it != index.end()) return it->second;
    CellClass cc;
    cc.verts = cv;
    cc.dim = dim;
    size_t idx = pc.cells.size();
    index[cv] = idx;
    pc.cells.push_back(std::move(cc));
    return idx;
  };

  // Vertices: chambers of the full central arrangement.
  for (const RationalCone& ch : cached_central_chambers(g, normals))
    intern({tvertex({cone_interior(ch)})}, 0);

  // Helper: orientation sign of an edge traversal against its class.
  auto edge_with_sign = [&](const RatVec& from, const RatVec& to) {
    std::vector<RatVec> ev = {from, to};
    std::sort(ev.begin(), ev.end());
    auto [cv, shift] = canonicalize_cell(ev, period);
    size_t idx = intern(cv, 1);
    RatVec shifted_from = from;
    for (size_t i = 0; i < g; ++i) shifted_from[i] -= Rat(shift[i]);
    int sign = shifted_from == cv[0] ? 1 : -1;
    return std::make_pair(idx, sign);
  };

  // Edges: per normal, chambers of the arrangement restricted to its
  // hyperplane; endpoints are the two adjacent full chambers.
  for (size_t j = 0; j < normals.size(); ++j) {
    IntMat row(1, g);
    for (size_t i = 0; i < g; ++i) row.at(0, i) = normals[j][i];
    std::vector<IntVec> K = kernel_basis(row);
    std::vector<IntVec> restricted;
    for (size_t f = 0; f < normals.size(); ++f) {
      if (f == j) continue;
      IntVec rn(K.size());
      bool zero = true;
      for (size_t t = 0; t < K.size(); ++t) {
        rn[t] = dot(normals[f], K[t]);
        if (rn[t] != 0) zero = false;
      }
      if (!zero) restricted.push_back(primitive(rn));
    }
    std::sort(restricted.begin(), restricted.end());
    restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());
    for (const RationalCone& ch : cached_central_chambers(K.size(), restricted)) {
      RatVec inner = cone_interior(ch);
      RatVec dir(g, Rat(0));
      for (size_t t = 0; t < K.size(); ++t)
        for (size_t i = 0; i < g; ++i) dir[i] += inner[t] * Rat(K[t][i]);
      RatVec vplus = tvertex({dir, to_rat(normals[j])});
      RatVec vminus = tvertex({dir, to_rat(neg(normals[j]))});
      auto [idx, sgn] = edge_with_sign(vminus, vplus);
      CellClass& e = pc.cells[idx];
      if (e.boundary.empty()) {
        auto [i0, s0] = std::make_pair(intern({e.verts[0]}, 0), -1);
        auto [i1, s1] = std::make_pair(intern({e.verts[1]}, 0), 1);
        e.boundary.push_back({i0, s0});
        e.boundary.push_back({i1, s1});
        std::sort(e.boundary.begin(), e.boundary.end());
      }
      (void)sgn;
    }
  }

  // 2-cells: per rank-2 flat of the normals, chambers of the arrangement
  // restricted to the corresponding codimension-2 subspace; each gives a
  // polygon whose vertices come from the induced 2-dimensional fan.
  std::set<std::vector<size_t>> flats;
  for (size_t a = 0; a < normals.size(); ++a)
    for (size_t b = a + 1; b < normals.size(); ++b) {
      IntMat span2 = IntMat::from_rows({normals[a], normals[b]});
      if (rank(span2) != 2) continue;
      std::vector<size_t> flat;
      for (size_t f = 0; f < normals.size(); ++f) {
        IntMat three = IntMat::from_rows({normals[a], normals[b], normals[f]});
        if (rank(three) == 2) flat.push_back(f);
      }
      flats.insert(flat);
    }

  for (const auto& flat : flats) {
    // Codim-2 subspace W and a complement pair for 2D reduction.
    std::vector<IntVec> frows;
    for (size_t f : flat) frows.push_back(normals[f]);
    std::vector<IntVec> W = kernel_basis(IntMat::from_rows(frows));
    // Restricted arrangement inside W.
    std::vector<IntVec> restricted;
    for (size_t f = 0; f < normals.size(); ++f) {
      IntVec rn(W.size());
      bool zero = true;
      for (size_t t = 0; t < W.size(); ++t) {
        rn[t] = dot(normals[f], W[t]);
        if (rn[t] != 0) zero = false;
      }
      if (!zero) restricted.push_back(primitive(rn));
    }
    std::sort(restricted.begin(), restricted.end());
    restricted.erase(std::unique(restricted.begin(), restricted.end()), restricted.end());

    // 2D quotient data: complement basis of W.
    Reduction red = make_reduction(g, W);
    // 2D normals of the flat members.
    std::vector<std::pair<IntVec, size_t>> ynormals;
    for (size_t f : flat) {
      IntVec y(2);
      y[0] = dot(normals[f], red.complement[0]);
      y[1] = dot(normals[f], red.complement[1]);
      ynormals.push_back({y, f});
    }
    // Boundary rays of the induced 2D fan: both orthogonals of each normal,
    // sorted by angle.
    std::vector<IntVec> rays2;
    for (auto& [y, f] : ynormals) {
      rays2.push_back(IntVec{-y[1], y[0]});
      rays2.push_back(IntVec{y[1], -y[0]});
    }
    auto angle_less = [](const IntVec& p, const IntVec& q) {
      auto half = [](const IntVec& v) {
        // 0: angle in [0, pi), 1: [pi, 2pi)
        if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
        return 1;
      };
      int hp = half(p), hq = half(q);
      if (hp != hq) return hp < hq;
      Int cr = p[0] * q[1] - p[1] * q[0];
      return cr > 0;
    };
    std::sort(rays2.begin(), rays2.end(), angle_less);
    rays2.erase(std::unique(rays2.begin(), rays2.end()), rays2.end());

    for (const RationalCone& ch : cached_central_chambers(W.size(), restricted)) {
      RatVec inner = cone_interior(ch);
      RatVec base(g, Rat(0));
      for (size_t t = 0; t < W.size(); ++t)
        for (size_t i = 0; i < g; ++i) base[i] += inner[t] * Rat(W[t][i]);
      // Polygon vertices in cyclic order: one per 2D chamber between
      // consecutive boundary rays.
      std::vector<RatVec> cycle;
      for (size_t t = 0; t < rays2.size(); ++t) {
        const IntVec& r1 = rays2[t];
        const IntVec& r2 = rays2[(t + 1) % rays2.size()];
        IntVec mid2{r1[0] + r2[0], r1[1] + r2[1]};
        RatVec dir(g, Rat(0));
        for (size_t i = 0; i < g; ++i)
          dir[i] = Rat(mid2[0] * red.complement[0][i] + mid2[1] * red.complement[1][i]);
        cycle.push_back(tvertex({base, dir}));
      }
      // Intern the polygon and its boundary chain.
      std::vector<RatVec> pverts = cycle;
      size_t pidx = intern(pverts, 2);
      CellClass& poly = pc.cells[pidx];
      if (poly.boundary.empty()) {
        for (size_t t = 0; t < cycle.size(); ++t) {
          auto [eidx, sgn] = edge_with_sign(cycle[t], cycle[(t + 1) % cycle.size()]);
          poly.boundary.push_back({eidx, sgn});
        }
        std::sort(poly.boundary.begin(), poly.boundary.end());
      }
    }
  }

  // Canonical cell order (dim, verts), with boundary indices remapped.
  std::vector<size_t> order(pc.cells.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (pc.cells[a].dim != pc.cells[b].dim) return pc.cells[a].dim < pc.cells[b].dim;
    return pc.cells[a].verts < pc.cells[b].verts;
  });
  std::vector<size_t> where(order.size());
  for (size_t i = 0; i < order.size(); ++i) where[order[i]] = i;
  PeriodicComplex out;
  out.dim = pc.dim;
  out.period = pc.period;
  for (size_t i : order) {
    CellClass cc = pc.cells[i];
    for (auto& [f, s] : cc.boundary) f = where[f];
    std::sort(cc.boundary.begin(), cc.boundary.end());
    out.cells.push_back(std::move(cc));
  }
  return out;
}

PeriodicComplex dual_complex(const MumfordData& data) {
  data.validate();
  if (data.g > 3 && unshifted_unimodular(data)) return detail::dual_complex_two_skeleton(data);
  return detail::dual_complex_windowed(data);
}

}  // namespace mumford
