#include "plsection.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mumford {

Rat hump(const Rat& t) {
  Int n = floor_rat(t);
  // (n^2 - n)/2 + (t - n) * n
  return Rat(n * n - n) / 2 + (t - Rat(n)) * Rat(n);
}

void PLSection::add_family(IntVec normal, Rat offset, Rat param) {
  if (normal.size() != g_) throw std::invalid_argument("family normal has wrong dimension");
  if (is_zero(normal)) throw std::invalid_argument("family normal must be nonzero");
  if (param <= 0) throw std::invalid_argument("bending parameter must be positive");
  IntVec p = primitive(normal);
  if (p != normal) throw std::invalid_argument("family normal must be primitive");
  // Reduce the offset mod 1.
  Rat off = offset - Rat(floor_rat(offset));
  // Merge with an existing identical family.
  for (HyperplaneFamilyAtom& f : families_)
    if (f.normal == normal && f.offset == off) {
      f.param += param;
      return;
    }
  families_.push_back(HyperplaneFamilyAtom{std::move(normal), std::move(off), std::move(param)});
}

void PLSection::add_form(IntMat B, IntVec L, Rat scale) {
  if (B.rows != g_ || B.cols != g_ || !B.is_symmetric())
    throw std::invalid_argument("form atom must be a symmetric g x g matrix");
  if (!is_positive_definite(to_rat(B)))
    throw std::invalid_argument("form atom must be positive definite (semi-definite forms are out of scope)");
  for (size_t i = 0; i < g_; ++i)
    if ((B.at(i, i) - L[i]) % 2 != 0)
      throw std::invalid_argument("non-characteristic linear form");
  if (scale <= 0) throw std::invalid_argument("form scale must be positive");
  forms_.push_back(FormAtom{std::move(B), std::move(L), std::move(scale)});
  caches_.clear();
}

void PLSection::add_affine(const RatVec& linear, const Rat& constant) {
  if (linear.size() != g_) throw std::invalid_argument("affine part has wrong dimension");
  linear_ = add(linear_, linear);
  const_ += constant;
}

void PLSection::add_scaled(const PLSection& other, const Int& r) {
  if (other.g_ != g_) throw std::invalid_argument("add_scaled: dimension mismatch");
  if (r <= 0) throw std::invalid_argument("add_scaled: coefficient must be positive");
  for (const HyperplaneFamilyAtom& f : other.families_) add_family(f.normal, f.offset, f.param * r);
  for (const FormAtom& fa : other.forms_) add_form(fa.B, fa.L, fa.scale * r);
  add_affine(scale(other.linear_, Rat(r)), Rat(r) * other.const_);
  d_ = lcm(d_, other.d_);
}

RatMat PLSection::quadratic_part() const {
  RatMat q(g_, g_);
  for (const HyperplaneFamilyAtom& f : families_)
    for (size_t i = 0; i < g_; ++i)
      for (size_t j = 0; j < g_; ++j) q.at(i, j) += f.param * Rat(f.normal[i] * f.normal[j]);
  for (const FormAtom& fa : forms_)
    for (size_t i = 0; i < g_; ++i)
      for (size_t j = 0; j < g_; ++j) q.at(i, j) += fa.scale * Rat(fa.B.at(i, j));
  return q;
}

IntMat quadratic_part_int(const PLSection& b) {
  RatMat q = b.quadratic_part();
  IntMat out(q.rows, q.cols);
  for (size_t i = 0; i < q.a.size(); ++i) {
    if (den(q.a[i]) != 1) throw std::domain_error("quadratic part is not integral");
    out.a[i] = num(q.a[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Form atom evaluation: cached linearity complex + cell cover of [0,1]^g.
// ---------------------------------------------------------------------------

struct PLSection::FormCache {
  PeriodicComplex pc;
  struct Entry {
    HRep hrep;
    RatVec grad;
    Rat c0;
  };
  std::vector<Entry> cover;  // translates of maximal cells covering [0,1]^g
};

namespace {

Rat form_lattice_value(const FormAtom& fa, const IntVec& m) {
  Int s = 0;
  for (size_t i = 0; i < m.size(); ++i) {
    Int bm = 0;
    for (size_t j = 0; j < m.size(); ++j) bm += fa.B.at(i, j) * m[j];
    s += m[i] * bm;
    s -= fa.L[i] * m[i];
  }
  return fa.scale * Rat(s) / 2;
}

// Affine function interpolating the lattice values of the form atom on the
// (lattice) vertices of a maximal cell.
std::pair<RatVec, Rat> form_affine_on_cell(const FormAtom& fa, const std::vector<RatVec>& verts,
                                           size_t g) {
  // Pick g + 1 affinely independent lattice vertices.
  std::vector<IntVec> vs;
  for (const RatVec& v : verts) vs.push_back(to_int_checked(v));
  std::vector<size_t> idx = {0};
  std::vector<IntVec> rows;
  for (size_t i = 1; i < vs.size() && idx.size() < g + 1; ++i) {
    rows.push_back(sub(vs[i], vs[0]));
    if (rank(IntMat::from_rows(rows)) == idx.size())
      idx.push_back(i);
    else
      rows.pop_back();
  }
  if (idx.size() != g + 1) throw std::logic_error("degenerate maximal cell");
  RatMat A(g, g);
  RatVec rhs(g);
  for (size_t r = 0; r < g; ++r) {
    for (size_t c = 0; c < g; ++c) A.at(r, c) = Rat(vs[idx[r + 1]][c] - vs[idx[0]][c]);
    rhs[r] = form_lattice_value(fa, vs[idx[r + 1]]) - form_lattice_value(fa, vs[idx[0]]);
  }
  RatVec grad = inverse(A).mul(rhs);
  Rat c0 = form_lattice_value(fa, vs[idx[0]]) - dot(grad, to_rat(vs[idx[0]]));
  return {grad, c0};
}

}  // namespace

const PLSection::FormCache& PLSection::form_cache(size_t idx) const {
  if (caches_.size() != forms_.size()) caches_.assign(forms_.size(), nullptr);
  if (!caches_[idx]) {
    const FormAtom& fa = forms_[idx];
    auto cache = std::make_shared<FormCache>();
    RatVec lam(g_);
    for (size_t i = 0; i < g_; ++i) lam[i] = -Rat(fa.L[i]) * fa.scale;
    RatMat Bs = scale(to_rat(fa.B), fa.scale);
    cache->pc = regular_subdivision(g_, Bs, lam, Rat(0));
    // Cover of the closed unit box by translated maximal cells.
    for (const CellClass& cc : cache->pc.cells) {
      if (cc.dim != (int)g_) continue;
      IntVec k(g_);
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == g_) {
          std::vector<RatVec> verts = cc.verts;
          for (RatVec& v : verts)
            for (size_t j = 0; j < g_; ++j) v[j] += Rat(k[j]);
          // Keep translates whose box meets [0,1]^g.
          for (size_t j = 0; j < g_; ++j) {
            Rat lo = verts[0][j], hi = verts[0][j];
            for (const RatVec& v : verts) {
              lo = std::min(lo, v[j]);
              hi = std::max(hi, v[j]);
            }
            if (hi < 0 || lo > 1) return;
          }
          FormCache::Entry e;
          e.hrep = facets_of_polytope(g_, verts);
          auto [grad, c0] = form_affine_on_cell(fa, verts, g_);
          e.grad = grad;
          e.c0 = c0;
          cache->cover.push_back(std::move(e));
          return;
        }
        for (Int v = -2; v <= 2; ++v) {
          k[i] = v;
          rec(i + 1);
        }
      };
      rec(0);
    }
    caches_[idx] = cache;
  }
  return *caches_[idx];
}

Rat PLSection::value(const RatVec& x) const {
  if (x.size() != g_) throw std::invalid_argument("value: dimension mismatch");
  Rat total = const_ + dot(linear_, x);
  for (const HyperplaneFamilyAtom& f : families_)
    total += f.param * hump(dot(f.normal, x) - f.offset);
  for (size_t fi = 0; fi < forms_.size(); ++fi) {
    const FormAtom& fa = forms_[fi];
    // Reduce modulo the lattice: b(x0 + m) = b(x0) + scale*B(m, x0) + q(m).
    IntVec m(g_);
    RatVec x0(g_);
    for (size_t i = 0; i < g_; ++i) {
      m[i] = floor_rat(x[i]);
      x0[i] = x[i] - Rat(m[i]);
    }
    Rat corr = form_lattice_value(fa, m);
    for (size_t i = 0; i < g_; ++i) {
      Rat bm = 0;
      for (size_t j = 0; j < g_; ++j) bm += Rat(fa.B.at(i, j) * m[j]);
      corr += fa.scale * bm * x0[i];
    }
    const FormCache& fc = form_cache(fi);
    bool found = false;
    for (const FormCache::Entry& e : fc.cover) {
      bool inside = true;
      for (const HalfspaceQ& h : e.hrep.facets)
        if (dot(h.normal, x0) < h.rhs) {
          inside = false;
          break;
        }
      if (inside) {
        total += dot(e.grad, x0) + e.c0 + corr;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("form cover lookup failed");
  }
  return total;
}

RatVec PLSection::gradient(const RatVec& x) const {
  RatVec grad = linear_;
  for (const HyperplaneFamilyAtom& f : families_) {
    Rat t = dot(f.normal, x) - f.offset;
    if (den(t) == 1) throw std::domain_error("gradient requested on the bending locus");
    Int slope = floor_rat(t);
    for (size_t i = 0; i < g_; ++i) grad[i] += f.param * Rat(slope * f.normal[i]);
  }
  for (size_t fi = 0; fi < forms_.size(); ++fi) {
    const FormAtom& fa = forms_[fi];
    IntVec m(g_);
    RatVec x0(g_);
    for (size_t i = 0; i < g_; ++i) {
      m[i] = floor_rat(x[i]);
      x0[i] = x[i] - Rat(m[i]);
    }
    const FormCache& fc = form_cache(fi);
    const FormCache::Entry* hit = nullptr;
    for (const FormCache::Entry& e : fc.cover) {
      bool strict = true;
      for (const HalfspaceQ& h : e.hrep.facets)
        if (dot(h.normal, x0) <= h.rhs) {
          strict = false;
          break;
        }
      if (strict) {
        hit = &e;
        break;
      }
    }
    if (!hit) throw std::domain_error("gradient requested on the bending locus");
    for (size_t i = 0; i < g_; ++i) {
      Rat bm = 0;
      for (size_t j = 0; j < g_; ++j) bm += Rat(fa.B.at(i, j) * m[j]);
      grad[i] += hit->grad[i] + fa.scale * bm;
    }
  }
  return grad;
}

// ---------------------------------------------------------------------------
// Bending complexes.
// ---------------------------------------------------------------------------

namespace {

// Builds the joint linearity complex of the given sections, walls keyed by
// the position of the owning section in `bs`.
PeriodicComplex build_joint(const std::vector<PLSection>& bs) {
  if (bs.empty()) throw std::invalid_argument("no sections");
  size_t g = bs[0].g();
  for (const PLSection& b : bs)
    if (b.g() != g) throw std::invalid_argument("mixed dimensions");

  // Bending in every direction: the kernel of the total quadratic part must
  // be trivial.
  RatMat Q(g, g);
  for (const PLSection& b : bs) Q = add(Q, b.quadratic_part());
  if (det(Q) == 0) {
    // Extract a kernel direction for the error message.
    IntMat Qi(g, g);
    Int l = 1;
    for (const Rat& q : Q.a) l = lcm(l, den(q));
    for (size_t i = 0; i < Q.a.size(); ++i) Qi.a[i] = num(Q.a[i]) * (l / den(Q.a[i]));
    Qi.rows = g;
    Qi.cols = g;
    auto ker = kernel_basis(Qi);
    std::string dir = "(";
    for (size_t i = 0; i < g; ++i) dir += (i ? "," : "") + (ker.empty() ? "0" : ker[0][i].str());
    dir += ")";
    throw std::domain_error("no bending in direction " + dir);
  }

  std::vector<WallFamily> fams;
  for (size_t s = 0; s < bs.size(); ++s)
    for (const HyperplaneFamilyAtom& f : bs[s].families())
      fams.push_back(WallFamily{f.normal, f.offset, f.param, s});

  std::optional<PeriodicComplex> result;
  if (!fams.empty()) {
    // A pure hyperplane arrangement in one pass. Families whose normals do
    // not span (bounded only jointly with form atoms) are not supported.
    std::vector<IntVec> normals;
    for (const WallFamily& f : fams) normals.push_back(f.normal);
    if (rank(IntMat::from_rows(normals)) < g)
      throw std::domain_error("hyperplane families of deficient rank mixed with forms");
    result = arrangement_complex(g, fams);
  }

  for (size_t s = 0; s < bs.size(); ++s) {
    for (const FormAtom& fa : bs[s].forms()) {
      RatVec lam(g);
      for (size_t i = 0; i < g; ++i) lam[i] = -Rat(fa.L[i]) * fa.scale;
      PeriodicComplex fpc =
          regular_subdivision(g, scale(to_rat(fa.B), fa.scale), lam, Rat(0));
      PLSection single(g, Int(1));
      single.add_form(fa.B, fa.L, fa.scale);
      // Wall weights of a form complex: slope jumps across each wall,
      // recovered from the gradients on both sides.
      for (CellClass& cc : fpc.cells) {
        if (cc.dim != (int)g - 1) continue;
        RatVec cen(g, Rat(0));
        for (const RatVec& v : cc.verts) cen = add(cen, v);
        for (Rat& q : cen) q /= Rat((long)cc.verts.size());
        HRep h = facets_of_polytope(g, cc.verts);
        if (h.hull_equations.size() != 1) throw std::logic_error("wall without unique normal");
        RatVec nrm = to_rat(h.hull_equations[0].normal);
        RatVec gplus, gminus;
        for (Rat eps(1, 4);; eps /= 2) {
          try {
            gplus = single.gradient(add(cen, scale(nrm, eps)));
            gminus = single.gradient(sub(cen, scale(nrm, eps)));
            break;
          } catch (const std::domain_error&) {
            continue;
          }
        }
        RatVec diff = sub(gplus, gminus);
        IntVec prim = primitive(diff);
        Rat weight = 0;
        for (size_t i = 0; i < g; ++i)
          if (prim[i] != 0) {
            weight = diff[i] / Rat(prim[i]);
            break;
          }
        if (weight < 0) weight = -weight;
        cc.weights[s] = weight;
      }
      result = result ? refine_complexes(*result, fpc) : std::move(fpc);
    }
  }
  if (!result) throw std::domain_error("no bending (trivial sections)");
  return *result;
}

}  // namespace

PeriodicComplex bending_locus(const PLSection& b) {
  if (b.trivial()) {
    PeriodicComplex pc;
    pc.dim = b.g();
    for (size_t i = 0; i < b.g(); ++i) {
      IntVec e(b.g(), Int(0));
      e[i] = 1;
      pc.period.push_back(e);
    }
    return pc;  // empty bending locus
  }
  // A single section may lack bending in some directions; build the joint
  // complex in the quotient along the unbent directions.
  RatMat Q = b.quadratic_part();
  IntMat Qi(b.g(), b.g());
  Int l = 1;
  for (const Rat& q : Q.a) l = lcm(l, den(q));
  for (size_t i = 0; i < Q.a.size(); ++i) Qi.a[i] = num(Q.a[i]) * (l / den(Q.a[i]));
  auto ker = kernel_basis(Qi);
  if (ker.empty()) return build_joint({b});

  // Reduce along the kernel: choose a unimodular basis adapted to it.
  size_t g = b.g(), h = ker.size(), gr = g - h;
  IntMat K = IntMat::from_cols(ker);
  SmithResult s = smith_normal_form(K);
  RatMat Uinv = inverse(to_rat(s.U));
  // Complement directions: the last gr columns of U^{-1}; reduced coordinates
  // of x are the last gr rows of U x.
  PLSection red(gr, b.denominator());
  for (const HyperplaneFamilyAtom& f : b.families()) {
    IntVec rn(gr);
    for (size_t j = 0; j < gr; ++j) {
      RatVec col(g);
      for (size_t i = 0; i < g; ++i) col[i] = Uinv.at(i, h + j);
      rn[j] = num(dot(f.normal, col));
    }
    red.add_family(primitive(rn), f.offset, f.param);
  }
  if (!b.forms().empty()) throw std::domain_error("degenerate form sections are out of scope");
  PeriodicComplex pc = build_joint({red});
  for (const IntVec& kv : ker) pc.cylinder_dirs.push_back(primitive_signed(to_rat(kv)));
  return pc;
}

PeriodicComplex joint_bending_complex(const std::vector<PLSection>& bs) {
  return build_joint(bs);
}

DicingResult is_dicing(const std::vector<PLSection>& bs) {
  DicingResult out;
  out.complex = build_joint(bs);
  out.dicing = true;
  Int d = 1;
  for (const CellClass& cc : out.complex.cells) {
    if (cc.dim != 0) continue;
    const RatVec& v = cc.verts[0];
    for (const Rat& q : v) {
      if (den(q) != 1) out.dicing = false;
      d = lcm(d, den(q));
    }
    for (const PLSection& b : bs) d = lcm(d, den(b.value(v)));
  }
  out.minimal_d = d;
  return out;
}

ShiftedArrangement shifted_matroidal_arrangement(const MatroidRep& rep,
                                                 const std::vector<std::vector<Rat>>& offsets) {
  if (!is_unimodular(rep.columns))
    throw std::invalid_argument("representation matrix is not unimodular");
  if (offsets.size() != rep.ground_size)
    throw std::invalid_argument("need one offset list per ground element");
  Int d = 1;
  for (const auto& offs : offsets) {
    if (offs.empty()) throw std::invalid_argument("empty offset list");
    for (const Rat& e : offs) d = lcm(d, den(e));
  }
  ShiftedArrangement out;
  for (size_t i = 0; i < rep.ground_size; ++i) {
    PLSection b(rep.rank_ambient, d);
    for (const Rat& e : offsets[i]) b.add_family(primitive(rep.columns.col(i)), e, Rat(1));
    out.sections.push_back(std::move(b));
  }
  out.transversal = arrangement_is_transversal(out.sections);
  return out;
}

bool arrangement_is_transversal(const std::vector<PLSection>& bs) {
  // The arrangement is transversal iff no dependent subset of hyperplane
  // families has a common point. It suffices to test circuits: a subset
  // whose normals have rank |S| - 1 meets in a point iff every integral
  // dependency lambda satisfies sum lambda_f eps_f in Z.
  if (bs.empty()) return true;
  size_t g = bs[0].g();
  struct Fam {
    IntVec normal;
    Rat offset;
  };
  std::vector<Fam> fams;
  for (const PLSection& b : bs) {
    if (!b.forms().empty())
      throw std::invalid_argument("transversality is defined for hyperplane arrangements");
    for (const HyperplaneFamilyAtom& f : b.families()) fams.push_back({f.normal, f.offset});
  }
  size_t n = fams.size();
  std::vector<size_t> idx;
  std::function<bool(size_t)> dfs = [&](size_t start) -> bool {
    if (idx.size() >= 2 && idx.size() <= g + 1) {
      std::vector<IntVec> cols;
      for (size_t i : idx) cols.push_back(fams[i].normal);
      IntMat A = IntMat::from_cols(cols);
      if (rank(A) == idx.size() - 1) {
        // A circuit candidate: every kernel dependency must miss Z.
        for (const IntVec& lam : kernel_basis(A)) {
          Rat s = 0;
          for (size_t t = 0; t < idx.size(); ++t) s += Rat(lam[t]) * fams[idx[t]].offset;
          if (den(s) == 1) return false;  // common intersection point exists
        }
      }
    }
    if (idx.size() == g + 1) return true;
    for (size_t i = start; i < n; ++i) {
      idx.push_back(i);
      if (!dfs(i + 1)) return false;
      idx.pop_back();
    }
    return true;
  };
  return dfs(0);
}

PLSection pl_from_form(const IntMat& B, const IntVec& L) {
  if (!B.is_symmetric()) throw std::invalid_argument("form must be symmetric");
  size_t g = B.rows;
  if (L.size() != g) throw std::invalid_argument("linear form has wrong dimension");
  if (!is_positive_semidefinite(to_rat(B)))
    throw std::invalid_argument("form must be positive semi-definite");
  for (size_t i = 0; i < g; ++i)
    if ((B.at(i, i) - L[i]) % 2 != 0)
      throw std::invalid_argument("non-characteristic linear form");
  PLSection b(g, Int(1));
  size_t rk = B.is_zero() ? 0 : rank(B);
  if (rk == 0) {
    RatVec lin(g);
    for (size_t i = 0; i < g; ++i) lin[i] = -Rat(L[i]) / 2;
    b.add_affine(lin, Rat(0));
    return b;
  }
  if (rk == 1) {
    // B = r * x x^T with x primitive: values (B(m,m)-L(m))/2 equal
    // r*hump(x(m)) plus the integral linear form (r*x - L)/2.
    IntVec x;
    for (size_t i = 0; i < g && x.empty(); ++i)
      if (!is_zero(B.row(i))) x = primitive(B.row(i));
    size_t piv = 0;
    while (x[piv] == 0) ++piv;
    if (B.at(piv, piv) % (x[piv] * x[piv]) != 0)
      throw std::invalid_argument("rank-1 form is not an integer multiple of a primitive square");
    Int r = B.at(piv, piv) / (x[piv] * x[piv]);
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j)
        if (B.at(i, j) != r * x[i] * x[j])
          throw std::invalid_argument("rank-1 form is not an integer multiple of a primitive square");
    b.add_family(x, Rat(0), Rat(r));
    RatVec lin(g);
    for (size_t i = 0; i < g; ++i) lin[i] = Rat(r * x[i] - L[i]) / 2;
    b.add_affine(lin, Rat(0));
    return b;
  }
  if (rk < g)
    throw std::invalid_argument(
        "positive semi-definite forms of intermediate rank are not supported");
  b.add_form(B, L);
  return b;
}

PLSection pl_from_form(const IntMat& B) {
  IntVec L(B.rows);
  for (size_t i = 0; i < B.rows; ++i) L[i] = B.at(i, i);
  return pl_from_form(B, L);
}

}  // namespace mumford
