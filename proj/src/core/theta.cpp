#include "theta.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace mumford {

namespace {

struct Quad {
  RatMat B;
  RatVec L;
  Rat C;

  Rat eval(const RatVec& x) const {
    RatVec bx = B.mul(x);
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * bx[i] / 2 + L[i] * x[i];
    return s + C;
  }
  // Substitute x = a + t*m: a quadratic in m.
  Quad pullback_affine(const RatVec& a, const Rat& t) const {
    size_t g = a.size();
    Quad out;
    out.B = scale(B, t * t);
    RatVec ba = B.mul(a);
    out.L.assign(g, Rat(0));
    for (size_t i = 0; i < g; ++i) out.L[i] = t * ba[i] + t * L[i];
    out.C = eval(a);
    return out;
  }
  Quad scaled(const Rat& c) const {
    Quad out;
    out.B = scale(B, c);
    out.L = scale(L, c);
    out.C = C * c;
    return out;
  }
  Quad plus(const Quad& o) const {
    Quad out;
    out.B = add(B, o.B);
    out.L = add(L, o.L);
    out.C = C + o.C;
    return out;
  }
};

// A quadratic lower bound for the section: q(x) <= b(x) everywhere.
// Hyperplane atoms satisfy hump(t) >= (t^2 - t)/2 - 1/8; form atoms dominate
// their quadratic exactly (PL interpolation of a convex function).
Quad quadratic_minorant(const PLSection& b) {
  size_t g = b.g();
  Quad q;
  q.B = RatMat(g, g);
  q.L = RatVec(g, Rat(0));
  q.C = 0;
  for (const HyperplaneFamilyAtom& f : b.families()) {
    // param * [ (x.v - eps)^2/2 - (x.v - eps)/2 - 1/8 ]
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j)
        q.B.at(i, j) += f.param * Rat(f.normal[i] * f.normal[j]);
    Rat lin = -f.param * (f.offset + Rat(1, 2));
    for (size_t i = 0; i < g; ++i) q.L[i] += lin * Rat(f.normal[i]);
    q.C += f.param * ((f.offset * f.offset + f.offset) / 2 - Rat(1, 8));
  }
  for (const FormAtom& fa : b.forms()) {
    for (size_t i = 0; i < g; ++i) {
      for (size_t j = 0; j < g; ++j) q.B.at(i, j) += fa.scale * Rat(fa.B.at(i, j));
      q.L[i] += -fa.scale * Rat(fa.L[i]) / 2;
    }
  }
  for (size_t i = 0; i < g; ++i) q.L[i] += b.linear_part()[i];
  q.C += b.constant_part();
  return q;
}

RatVec reduce_mod_lattice(const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] - Rat(floor_rat(v[i]));
  return out;
}

void validate_weight(const MumfordData& data, const RatVec& vbar, const Int& w) {
  if (w < 1) throw std::invalid_argument("weight must be positive");
  if (w % data.d != 0)
    throw std::invalid_argument("weight must be divisible by the polarization denominator d");
  if (vbar.size() != data.g) throw std::invalid_argument("class has wrong dimension");
  for (const Rat& q : vbar)
    if (den(Rat(w) * q) != 1) throw std::invalid_argument("w * class must be integral");
}

}  // namespace

std::vector<RatVec> weight_classes(size_t g, const Int& w) {
  std::vector<RatVec> out;
  RatVec v(g, Rat(0));
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == g) {
      out.push_back(v);
      return;
    }
    for (Int n = 0; n < w; ++n) {
      v[i] = Rat(n) / Rat(w);
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

ThetaSeries theta_expand(const MumfordData& data, const RatVec& vbar, const Int& w,
                         const Int& trunc) {
  data.validate();
  validate_weight(data, vbar, w);
  if (trunc < 0) throw std::invalid_argument("truncation bound must be nonnegative");
  RatVec v0 = reduce_mod_lattice(vbar);

  // Certified enumeration: w * b_total(v0 + m) >= quadratic minorant.
  Quad lb;
  lb.B = RatMat(data.g, data.g);
  lb.L = RatVec(data.g, Rat(0));
  lb.C = 0;
  for (const PLSection& b : data.sections) lb = lb.plus(quadratic_minorant(b));
  lb = lb.scaled(Rat(w));
  Quad inm = lb.pullback_affine(v0, Rat(1));

  ThetaSeries out;
  out.weight = w;
  out.cls = v0;
  out.trunc = trunc;
  for (const IntVec& m : quadratic_sublevel_points(inm.B, inm.L, inm.C, Rat(trunc))) {
    RatVec v(data.g);
    for (size_t i = 0; i < data.g; ++i) v[i] = v0[i] + Rat(m[i]);
    ThetaTerm t;
    t.z_exp.resize(data.g);
    for (size_t i = 0; i < data.g; ++i) t.z_exp[i] = num(Rat(w) * v[i]);
    t.u_exp.resize(data.k);
    Int total = 0;
    bool ok = true;
    for (size_t i = 0; i < data.k; ++i) {
      Rat e = Rat(w) * data.sections[i].value(v);
      if (den(e) != 1) throw std::logic_error("non-integral theta exponent");
      t.u_exp[i] = num(e);
      total += t.u_exp[i];
      if (total > trunc) ok = false;
    }
    if (ok && total <= trunc) out.terms.push_back(std::move(t));
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const ThetaTerm& a, const ThetaTerm& b) {
    if (a.z_exp != b.z_exp) return a.z_exp < b.z_exp;
    return a.u_exp < b.u_exp;
  });
  return out;
}

StructureRow theta_multiply(const MumfordData& data, const RatVec& v1in, const Int& w1,
                            const RatVec& v2in, const Int& w2, const Int& trunc) {
  data.validate();
  validate_weight(data, v1in, w1);
  validate_weight(data, v2in, w2);
  RatVec v1 = reduce_mod_lattice(v1in), v2 = reduce_mod_lattice(v2in);
  Int w3 = w1 + w2;

  StructureRow row;
  row.v1 = v1;
  row.v2 = v2;
  row.w1 = w1;
  row.w2 = w2;
  row.trunc = trunc;

  // Candidate classes: (w1 v1 + w2 v2 + w1 m) / w3 mod M over residues m.
  std::set<RatVec> classes;
  {
    IntVec m(data.g);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == data.g) {
        RatVec v3(data.g);
        for (size_t j = 0; j < data.g; ++j)
          v3[j] = (Rat(w1) * (v1[j] + Rat(m[j])) + Rat(w2) * v2[j]) / Rat(w3);
        classes.insert(reduce_mod_lattice(v3));
        return;
      }
      for (Int t = 0; t < w3; ++t) {
        m[i] = t;
        rec(i + 1);
      }
    };
    rec(0);
  }

  Quad lb;
  lb.B = RatMat(data.g, data.g);
  lb.L = RatVec(data.g, Rat(0));
  lb.C = 0;
  for (const PLSection& b : data.sections) lb = lb.plus(quadratic_minorant(b));

  auto total_value = [&](const RatVec& v) {
    Rat s = 0;
    for (const PLSection& b : data.sections) s += b.value(v);
    return s;
  };

  for (const RatVec& v3 : classes) {
    // c(u) = sum over v1' = v1 + m with v2' := (w3 v3 - w1 v1')/w2 in v2 + M
    // of u^{w1 b(v1') + w2 b(v2') - w3 b(v3)}.
    // Certified enumeration via the quadratic minorants of both terms.
    RatVec a(data.g);
    for (size_t i = 0; i < data.g; ++i) a[i] = (Rat(w3) * v3[i] - Rat(w1) * v1[i]) / Rat(w2);
    Rat t = -Rat(w1) / Rat(w2);
    Quad q1 = lb.pullback_affine(v1, Rat(1)).scaled(Rat(w1));
    Quad q2 = lb.pullback_affine(a, t).scaled(Rat(w2));
    Quad bound = q1.plus(q2);
    Rat shift = Rat(w3) * total_value(v3);
    bound.C -= shift;

    UPoly poly;
    for (const IntVec& m : quadratic_sublevel_points(bound.B, bound.L, bound.C, Rat(trunc))) {
      RatVec p1(data.g), p2(data.g);
      bool integral = true;
      for (size_t i = 0; i < data.g; ++i) {
        p1[i] = v1[i] + Rat(m[i]);
        p2[i] = a[i] + t * Rat(m[i]);
        if (den(p2[i] - v2[i]) != 1) integral = false;
      }
      if (!integral) continue;  // v2' must be a translate of v2
      IntVec uexp(data.k);
      Int total = 0;
      bool ok = true;
      for (size_t i = 0; i < data.k; ++i) {
        Rat e = Rat(w1) * data.sections[i].value(p1) + Rat(w2) * data.sections[i].value(p2) -
                Rat(w3) * data.sections[i].value(v3);
        if (den(e) != 1) throw std::logic_error("non-integral structure exponent");
        if (e < 0) throw std::logic_error("negative structure-constant exponent (convexity)");
        uexp[i] = num(e);
        total += uexp[i];
        if (total > trunc) {
          ok = false;
          break;
        }
      }
      if (ok) poly[uexp] += 1;
    }
    if (!poly.empty()) row.coefficients[v3] = std::move(poly);
  }
  return row;
}

CentralFiberRelations central_fiber_relations(const MumfordData& data, const Int& w,
                                              const Int& degree) {
  data.validate();
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  // The mod-u product rule is only guaranteed on embedded faces.
  {
    std::vector<size_t> full;
    for (size_t i = 0; i < data.k; ++i) full.push_back(i);
    Stratification strat = stratification(data, full);
    for (const CellClass& cc : strat.complex.cells)
      if (!cc.embedded)
        throw std::domain_error(
            "immersed face in the bending complex: mod-u relations are not defined");
  }

  CentralFiberRelations out;
  out.w = w;
  out.degree = degree;
  out.classes = weight_classes(data.g, w);
  size_t n = out.classes.size();

  // Degree-multisets of class indices.
  std::vector<size_t> cur;
  std::function<void(size_t, Int)> rec = [&](size_t start, Int left) {
    if (left == 0) {
      out.monomials.push_back(cur);
      return;
    }
    for (size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i, left - 1);
      cur.pop_back();
    }
  };
  rec(0, degree);

  // Product of each monomial mod (u): repeated multiplication at trunc 0.
  std::map<RatVec, size_t> target_index;
  for (const auto& mono : out.monomials) {
    // state: class (of accumulated weight) -> coefficient
    std::map<RatVec, Int> state;
    state[out.classes[mono[0]]] = 1;
    Int wacc = w;
    for (size_t t = 1; t < mono.size(); ++t) {
      std::map<RatVec, Int> next;
      for (auto& [cls, coef] : state) {
        StructureRow row =
            theta_multiply(data, cls, wacc, out.classes[mono[t]], w, Int(0));
        for (auto& [v3, poly] : row.coefficients) {
          auto it = poly.find(IntVec(data.k, Int(0)));
          if (it == poly.end()) continue;
          next[v3] += coef * it->second;
        }
      }
      state = std::move(next);
      wacc += w;
    }
    for (auto& [cls, coef] : state)
      if (coef != 0 && !target_index.count(cls)) {
        size_t idx = target_index.size();
        target_index[cls] = idx;
      }
    out.products.push_back(std::move(state));
  }

  // Integer kernel of the (targets x monomials) matrix.
  IntMat mat(target_index.size(), out.monomials.size());
  for (size_t j = 0; j < out.products.size(); ++j)
    for (auto& [cls, coef] : out.products[j]) mat.at(target_index.at(cls), j) = coef;
  out.relations = kernel_basis(mat);
  // Canonical sign: first nonzero coefficient positive.
  for (IntVec& r : out.relations) {
    for (const Int& x : r) {
      if (x == 0) continue;
      if (x < 0)
        for (Int& y : r) y = -y;
      break;
    }
  }
  std::sort(out.relations.begin(), out.relations.end());
  return out;
}

}  // namespace mumford
