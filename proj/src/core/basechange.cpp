#include "basechange.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace mumford {

void MonomialMap::validate(size_t k) const {
  if (R.rows != k) throw std::invalid_argument("monomial map must have one row per coordinate");
  if (R.cols == 0) throw std::invalid_argument("monomial map needs at least one new coordinate");
  for (const Int& x : R.a)
    if (x < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
  for (size_t i = 0; i < R.rows; ++i)
    if (is_zero(R.row(i)))
      throw std::invalid_argument("zero row: a coordinate pulls back to a constant");
  for (size_t j = 0; j < R.cols; ++j)
    if (is_zero(R.col(j)))
      throw std::invalid_argument("zero column: constant pullback");
}

MumfordData monomial_base_change(const MumfordData& data, const MonomialMap& map) {
  data.validate();
  map.validate(data.k);
  MumfordData out;
  out.g = data.g;
  out.k = map.R.cols;
  out.d = data.d;
  out.name = data.name.empty() ? "base-change" : data.name + "-bc";
  for (size_t j = 0; j < map.R.cols; ++j) {
    PLSection c(data.g, data.d);
    for (size_t i = 0; i < data.k; ++i)
      if (map.R.at(i, j) != 0) c.add_scaled(data.sections[i], map.R.at(i, j));
    out.sections.push_back(std::move(c));
  }
  out.validate();
  return out;
}

ResolutionPlan ResolutionPlan::standard_for(const MonomialMap& map) {
  Int maxr = 0;
  for (const Int& x : map.R.a) maxr = std::max(maxr, x);
  ResolutionPlan plan;
  plan.separation = Int(map.R.cols) * (1 + maxr);
  return plan;
}

LocalBendData nearly_nodal_stage(const std::vector<IntVec>& rvecs, const ResolutionPlan& plan) {
  if (rvecs.empty()) throw std::invalid_argument("no local node data");
  size_t n = rvecs[0].size();
  Int maxr = 0;
  for (const IntVec& r : rvecs) {
    if (r.size() != n) throw std::invalid_argument("inconsistent local data");
    for (const Int& x : r) {
      if (x < 0) throw std::invalid_argument("orders must be nonnegative");
      maxr = std::max(maxr, x);
    }
  }
  if (plan.separation < maxr)
    throw std::invalid_argument("separation constant too small; need N >= " + maxr.str());

  LocalBendData out;
  out.separation = plan.separation;
  for (const IntVec& r : rvecs) {
    std::vector<std::pair<Int, size_t>> bends;
    for (size_t j = 0; j < n; ++j)
      for (Int l = 1; l <= r[j]; ++l) bends.push_back({Int(j) * plan.separation + l, j});
    out.bends.push_back(std::move(bends));
  }
  // Positions must be strictly increasing along each line (guaranteed by the
  // bound, checked anyway), and the total bending parameter per line matches
  // the input vector.
  for (size_t i = 0; i < rvecs.size(); ++i) {
    for (size_t t = 1; t < out.bends[i].size(); ++t)
      if (out.bends[i][t - 1].first >= out.bends[i][t].first)
        throw std::logic_error("bend positions collide");
    IntVec total(n, Int(0));
    for (auto& [pos, j] : out.bends[i]) total[j] += 1;
    if (total != rvecs[i]) throw std::logic_error("bend parameters do not sum to the orders");
  }
  // Nodal iff no color appears on two different lines: every face of the
  // product refinement picks at most one bend per line, so clashes happen
  // exactly when two lines carry the same color.
  out.nodal = true;
  for (size_t j = 0; j < n; ++j) {
    size_t lines = 0;
    for (const IntVec& r : rvecs)
      if (r[j] > 0) ++lines;
    if (lines > 1) out.nodal = false;
  }
  return out;
}

bool check_projection_coherence(const std::vector<IntVec>& rvecs, const ResolutionPlan& plan) {
  size_t n = rvecs[0].size();
  LocalBendData full = nearly_nodal_stage(rvecs, plan);
  // For each subset J' of the colors, the J'-model must equal the full model
  // with the other colors forgotten.
  for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
    std::vector<size_t> keep;
    for (size_t j = 0; j < n; ++j)
      if ((mask >> j) & 1) keep.push_back(j);
    std::vector<IntVec> sub;
    for (const IntVec& r : rvecs) {
      IntVec s(keep.size());
      for (size_t t = 0; t < keep.size(); ++t) s[t] = r[keep[t]];
      sub.push_back(std::move(s));
    }
    LocalBendData small = nearly_nodal_stage(sub, plan);
    for (size_t i = 0; i < rvecs.size(); ++i) {
      std::vector<std::pair<Int, size_t>> filtered;
      for (auto& [pos, j] : full.bends[i]) {
        auto it = std::find(keep.begin(), keep.end(), j);
        if (it == keep.end()) continue;
        size_t newj = (size_t)(it - keep.begin());
        // Positions renumber with the color: j*N + l -> newj*N + l.
        Int l = pos - Int(j) * plan.separation;
        filtered.push_back({Int(newj) * plan.separation + l, newj});
      }
      if (filtered != small.bends[i]) return false;
    }
  }
  return true;
}

std::vector<std::vector<IntVec>> cube_subdivision(size_t m, const std::vector<size_t>& order) {
  if (m == 0) return {{IntVec{}}};
  size_t nverts = size_t(1) << m;
  std::vector<size_t> ord = order;
  if (ord.empty()) {
    ord.resize(nverts);
    for (size_t i = 0; i < nverts; ++i) ord[i] = i;
  }
  if (ord.size() != nverts) throw std::invalid_argument("order must list all cube vertices");
  std::vector<size_t> position(nverts, 0);
  for (size_t i = 0; i < nverts; ++i) {
    if (ord[i] >= nverts) throw std::invalid_argument("vertex index out of range");
    position[ord[i]] = i;
  }

  auto vert = [&](size_t code) {
    IntVec v(m);
    for (size_t i = 0; i < m; ++i) v[i] = (code >> i) & 1;
    return v;
  };

  // Faces of the cube: (fixed mask, fixed values); recursion pulls the
  // order-least vertex of the face and cones over the opposite facets.
  std::vector<std::vector<IntVec>> out;
  std::vector<size_t> apex_chain;
  std::function<void(size_t, size_t)> rec = [&](size_t fixed, size_t values) {
    // Vertices of the face: free bits range over all combinations.
    std::vector<size_t> verts;
    size_t free_bits = (~fixed) & (nverts - 1);
    // Enumerate submasks of free_bits.
    size_t sub = 0;
    for (;;) {
      verts.push_back(values | sub);
      if (sub == free_bits) break;
      sub = (sub - free_bits) & free_bits;
    }
    size_t least = verts[0];
    for (size_t v : verts)
      if (position[v] < position[least]) least = v;
    if (verts.size() == 1) {
      std::vector<IntVec> simplex;
      for (size_t a : apex_chain) simplex.push_back(vert(a));
      simplex.push_back(vert(least));
      out.push_back(std::move(simplex));
      return;
    }
    apex_chain.push_back(least);
    for (size_t i = 0; i < m; ++i) {
      size_t bit = size_t(1) << i;
      if (fixed & bit) continue;
      // The facet not containing `least`: coordinate i fixed opposite.
      size_t opp = (least & bit) ^ bit;
      rec(fixed | bit, (values & ~bit) | opp);
    }
    apex_chain.pop_back();
  };
  rec(0, 0);
  return out;
}

namespace {

Int max_param(const MumfordData& data) {
  Int m = 0;
  for (const PLSection& b : data.sections)
    for (const HyperplaneFamilyAtom& f : b.families()) {
      if (den(f.param) != 1) throw std::invalid_argument("resolution needs integral parameters");
      m = std::max(m, num(f.param));
    }
  return m;
}

}  // namespace

ResolveResult resolve_pipeline(const MumfordData& base_changed, const MonomialMap& map,
                               const ResolutionPlan& plan) {
  base_changed.validate();
  for (const PLSection& b : base_changed.sections)
    if (!b.forms().empty())
      throw std::invalid_argument("resolution requires hyperplane-form sections");
  size_t n = base_changed.k;
  Int N = plan.separation;
  Int maxp = max_param(base_changed);
  if (N < maxp)
    throw std::invalid_argument("separation constant too small; need N >= " + maxp.str());

  // Local-model verification data from the map.
  std::vector<IntVec> rvecs;
  for (size_t i = 0; i < map.R.rows; ++i) rvecs.push_back(map.R.row(i));
  LocalBendData local = nearly_nodal_stage(rvecs, plan);
  if (!check_projection_coherence(rvecs, plan))
    throw std::logic_error("cross-stratum projection coherence failed");

  // Grid: smallest power of two S with S > n*N + max parameter; the bend at
  // j*N + l moves the hyperplane by (j*N + l) * delta, delta = 1/(d*S),
  // along the positive normal direction.
  Int S = 1;
  while (S <= Int(n) * N + maxp) S *= 2;
  Rat delta = Rat(1) / (Rat(base_changed.d) * Rat(S));

  ResolveResult out;
  out.grid_denominator = base_changed.d * S;
  out.stage1.g = base_changed.g;
  out.stage1.k = n;
  out.stage1.d = base_changed.d * S;
  out.stage1.name = base_changed.name + "-resolved";
  for (size_t j = 0; j < n; ++j) {
    const PLSection& c = base_changed.sections[j];
    PLSection sep(base_changed.g, out.stage1.d);
    for (const HyperplaneFamilyAtom& f : c.families()) {
      for (Int l = 1; l <= num(f.param); ++l)
        sep.add_family(f.normal, f.offset + Rat(Int(j) * N + l) * delta, Rat(1));
    }
    out.stage1.sections.push_back(std::move(sep));
  }
  out.stage1.validate();
  out.stage1_nodal_by_colors = local.nodal;

  out.stage1_report = classify_singularities(out.stage1);
  for (auto& [I, lf] : out.stage1_report.per_stratum)
    if (lf == LocalForm::Other)
      throw std::domain_error("stage 1 failed to classify as nearly nodal (witness stratum)");

  // Stage 2: subdivide every cube factor of every maximal dual cone by the
  // ordered pulling triangulation; collect the resulting maximal cones.
  out.final_all_standard_affine = true;
  out.final_semistable = true;
  for (const FaceRecord& fr : overgraph_faces(out.stage1)) {
    if (fr.I.size() != n || fr.face_dim != 0) continue;
    ConeFactorization fact = factor_dual_cone(fr.dual_cone, out.stage1.g, n);
    if (!fact.product_ok) throw std::domain_error("stage 2: unfactorable cone (witness kept)");
    // Simplices per factor; cube factors get subdivided.
    std::vector<std::vector<std::vector<IntVec>>> choices;  // per factor: list of ray sets
    for (const ConeFactor& f : fact.factors) {
      if (f.kind == ConeFactor::Kind::Cube) {
        size_t m = f.cube_generators.size();
        // Component order: lexicographic on the cube corners (binary order
        // of the generator frame matches it).
        auto simplices = cube_subdivision(m, {});
        std::vector<std::vector<IntVec>> sets;
        for (const auto& simplex : simplices) {
          std::vector<IntVec> rays;
          for (const IntVec& corner : simplex) {
            RatVec v = f.cube_origin;
            for (size_t t = 0; t < m; ++t)
              if (corner[t] == 1) v = add(v, f.cube_generators[t]);
            rays.push_back(to_int_checked(v));
          }
          sets.push_back(std::move(rays));
        }
        choices.push_back(std::move(sets));
      } else {
        choices.push_back({f.rays});
      }
    }
    // Cartesian product of the factor choices.
    std::vector<std::vector<IntVec>> acc = {{}};
    for (const auto& sets : choices) {
      std::vector<std::vector<IntVec>> next;
      for (const auto& base : acc)
        for (const auto& s : sets) {
          std::vector<IntVec> merged = base;
          for (const IntVec& r : s) merged.push_back(r);
          next.push_back(std::move(merged));
        }
      acc = std::move(next);
    }
    for (auto& rays : acc) {
      for (const IntVec& h : fact.horizontal) rays.push_back(h);
      RationalCone cone = cone_from_rays(out.stage1.g + n, rays);
      if (!is_standard_affine(cone)) out.final_all_standard_affine = false;
      ConeFactorization ff = factor_dual_cone(cone, out.stage1.g, n);
      LocalForm lf = ff.local_form();
      if (lf != LocalForm::Semistable && lf != LocalForm::Nodal && lf != LocalForm::Smooth)
        out.final_semistable = false;
      // Flat over the new orthant: ray images are nonnegative and span a
      // coordinate face.
      std::vector<IntVec> proj;
      std::set<size_t> support;
      for (const IntVec& r : cone.rays) {
        IntVec p(n);
        for (size_t i = 0; i < n; ++i) {
          p[i] = r[out.stage1.g + i];
          if (p[i] < 0) out.final_semistable = false;
          if (p[i] != 0) support.insert(i);
        }
        if (!is_zero(p)) proj.push_back(p);
      }
      if (!support.empty()) {
        RationalCone img = cone_from_rays(n, proj);
        for (size_t i : support) {
          RatVec e(n, Rat(0));
          e[i] = 1;
          if (!img.contains(e)) out.final_semistable = false;
        }
      }
      out.final_cones.push_back(std::move(cone));
    }
  }
  if (!out.final_all_standard_affine || !out.final_semistable)
    throw std::domain_error("stage 2 failed to produce a semistable fan (witness kept)");

  out.stage1_dual_complex = dual_complex(out.stage1);
  return out;
}

}  // namespace mumford
