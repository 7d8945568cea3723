#include "periodic_complex.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace mumford {

Rat env_window_scale() {
  const char* s = std::getenv("MUMFORD_WINDOW_SCALE");
  if (!s || !*s) return Rat(1);
  Rat v = parse_rat(s);
  if (v <= 0) throw std::invalid_argument("MUMFORD_WINDOW_SCALE must be positive");
  return v;
}

std::pair<std::vector<RatVec>, IntVec> canonicalize_cell(const std::vector<RatVec>& verts,
                                                         const std::vector<IntVec>& period) {
  std::vector<RatVec> vs = verts;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  size_t g = period.size();
  // Coordinates of the lex-least vertex in the period basis.
  RatMat P(g, g);
  for (size_t j = 0; j < g; ++j)
    for (size_t i = 0; i < g; ++i) P.at(i, j) = Rat(period[j][i]);
  RatVec y = inverse(P).mul(vs[0]);
  IntVec shift(g, Int(0));
  for (size_t j = 0; j < g; ++j) {
    Int f = floor_rat(y[j]);
    if (f != 0)
      for (size_t i = 0; i < g; ++i) shift[i] += f * period[j][i];
  }
  if (!is_zero(shift))
    for (RatVec& v : vs)
      for (size_t i = 0; i < g; ++i) v[i] -= Rat(shift[i]);
  return {vs, shift};
}

std::map<int, size_t> PeriodicComplex::census() const {
  std::map<int, size_t> c;
  for (const CellClass& cc : cells) ++c[cc.dim];
  return c;
}

size_t PeriodicComplex::top_dim() const {
  size_t d = 0;
  for (const CellClass& cc : cells) d = std::max(d, (size_t)cc.dim);
  return d;
}

std::vector<size_t> PeriodicComplex::cells_of_dim(int d) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].dim == d) out.push_back(i);
  return out;
}

bool PeriodicComplex::same_cells(const PeriodicComplex& other) const {
  if (dim != other.dim || cells.size() != other.cells.size()) return false;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].dim != other.cells[i].dim) return false;
    if (cells[i].verts != other.cells[i].verts) return false;
  }
  return true;
}

size_t PeriodicComplex::h1_rank() const {
  std::vector<size_t> v0 = cells_of_dim(0), v1 = cells_of_dim(1), v2 = cells_of_dim(2);
  std::map<size_t, size_t> e_index, v_index;
  for (size_t i = 0; i < v1.size(); ++i) e_index[v1[i]] = i;
  for (size_t i = 0; i < v0.size(); ++i) v_index[v0[i]] = i;

  IntMat d1(v0.size(), v1.size());
  for (size_t j = 0; j < v1.size(); ++j)
    for (auto& [f, s] : cells[v1[j]].boundary) d1.at(v_index.at(f), j) += s;
  IntMat d2(v1.size(), v2.size());
  for (size_t j = 0; j < v2.size(); ++j)
    for (auto& [f, s] : cells[v2[j]].boundary) d2.at(e_index.at(f), j) += s;

  auto snf_rank = [](const IntMat& m) {
    if (m.rows == 0 || m.cols == 0) return size_t(0);
    SmithResult s = smith_normal_form(m);
    size_t r = 0, n = std::min(m.rows, m.cols);
    for (size_t i = 0; i < n; ++i)
      if (s.D.at(i, i) != 0) ++r;
    return r;
  };
  return v1.size() - snf_rank(d1) - snf_rank(d2);
}

namespace {

struct Key {
  int dim;
  std::vector<RatVec> verts;
  bool operator<(const Key& o) const {
    if (dim != o.dim) return dim < o.dim;
    return verts < o.verts;
  }
};

std::vector<size_t> frame_indices(const std::vector<RatVec>& verts, int d) {
  // Greedy affinely independent subset of size d+1.
  std::vector<size_t> idx = {0};
  std::vector<IntVec> rows;
  for (size_t i = 1; i < verts.size() && (int)idx.size() < d + 1; ++i) {
    rows.push_back(primitive(sub(verts[i], verts[0])));
    if ((int)rank(IntMat::from_rows(rows)) == (int)idx.size()) {
      idx.push_back(i);
    } else {
      rows.pop_back();
    }
  }
  return idx;
}

RatVec centroid(const std::vector<RatVec>& verts) {
  RatVec c(verts[0].size(), Rat(0));
  for (const RatVec& v : verts) c = add(c, v);
  for (Rat& x : c) x /= Rat((long)verts.size());
  return c;
}

// Coordinate matrix (d x n) of `vectors` in the frame basis of `verts`.
RatMat hull_coordinates(const std::vector<RatVec>& verts, int d,
                        const std::vector<RatVec>& vectors) {
  std::vector<size_t> fr = frame_indices(verts, d);
  size_t g = verts[0].size();
  RatMat F(g, d);
  for (int j = 0; j < d; ++j)
    for (size_t i = 0; i < g; ++i) F.at(i, j) = verts[fr[j + 1]][i] - verts[fr[0]][i];
  // Select d independent rows of F.
  RatMat work = F;
  std::vector<size_t> prow;
  std::vector<bool> used(g, false);
  for (int c = 0; c < d; ++c) {
    size_t p = g;
    for (size_t i = 0; i < g; ++i)
      if (!used[i] && work.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p == g) throw std::logic_error("degenerate frame");
    used[p] = true;
    prow.push_back(p);
    for (size_t i = 0; i < g; ++i) {
      if (i == p || work.at(i, c) == 0) continue;
      Rat f = work.at(i, c) / work.at(p, c);
      for (int j = 0; j < d; ++j) work.at(i, j) -= f * work.at(p, j);
    }
  }
  std::sort(prow.begin(), prow.end());
  RatMat Fs(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Fs.at(i, j) = F.at(prow[i], j);
  RatMat Fi = inverse(Fs);
  RatMat out(d, vectors.size());
  for (size_t k = 0; k < vectors.size(); ++k) {
    RatVec sel(d);
    for (int i = 0; i < d; ++i) sel[i] = vectors[k][prow[i]];
    RatVec y = Fi.mul(sel);
    for (int i = 0; i < d; ++i) out.at(i, k) = y[i];
  }
  return out;
}

// Fills (embedded, self_glued) for one polytope: self_glued when its closure
// meets a nonzero lattice translate, not embedded when such an intersection
// has the cell's full dimension (relative interiors identified).
std::pair<bool, bool> cell_overlap_flags(const std::vector<RatVec>& verts, size_t g,
                                         const std::vector<IntVec>& period) {
  if (verts.size() == 1) {
    return {true, false};
  }
  int d = affine_dim(verts);
  RatMat P(g, g);
  for (size_t j = 0; j < g; ++j)
    for (size_t i = 0; i < g; ++i) P.at(i, j) = Rat(period[j][i]);
  RatMat Pinv = inverse(P);
  std::vector<Int> lo(g, Int(0)), hi(g, Int(0));
  for (const RatVec& a : verts)
    for (const RatVec& b : verts) {
      RatVec df = Pinv.mul(sub(a, b));
      for (size_t i = 0; i < g; ++i) {
        lo[i] = std::min(lo[i], floor_rat(df[i]));
        hi[i] = std::max(hi[i], ceil_rat(df[i]));
      }
    }
  HRep h = facets_of_polytope(g, verts);
  bool self_glued = false, embedded = true;
  auto check_shift = [&](const RatVec& shift) {
    // Cheap separation test on coordinate intervals first.
    for (size_t i = 0; i < g; ++i) {
      Rat vlo = verts[0][i], vhi = verts[0][i];
      for (const RatVec& v : verts) {
        vlo = std::min(vlo, v[i]);
        vhi = std::max(vhi, v[i]);
      }
      if (vhi + shift[i] < vlo || vlo + shift[i] > vhi) return;
    }
    std::vector<HalfspaceQ> sys;
    auto push_both = [&](const HalfspaceQ& f) {
      sys.push_back(f);
      HalfspaceQ t = f;
      t.rhs += dot(t.normal, shift);
      sys.push_back(t);
    };
    for (const HalfspaceQ& f : h.facets) push_both(f);
    for (const HalfspaceQ& f : h.hull_equations) {
      push_both(f);
      push_both(HalfspaceQ{neg(f.normal), -f.rhs});
    }
    Polyhedron p = polyhedron_from_halfspaces(g, sys);
    if (p.empty) return;
    self_glued = true;
    if (affine_dim(p.vertices) == d) embedded = false;
  };
  IntVec k(g);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == g) {
      if (is_zero(k)) return;
      RatVec shift(g, Rat(0));
      for (size_t t = 0; t < g; ++t)
        for (size_t j = 0; j < g; ++j) shift[j] += Rat(k[t]) * Rat(period[t][j]);
      check_shift(shift);
      return;
    }
    for (Int v = lo[i]; v <= hi[i] && embedded; ++v) {
      k[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return {embedded, self_glued};
}

using WallWeightFn = std::function<std::map<size_t, Rat>(const std::vector<RatVec>&)>;

// From a complete, unclipped set of maximal cells (at least one representative
// per class), build the canonical complex. Throws domain_error if the classes
// fail to tile a fundamental domain.
PeriodicComplex assemble_complex(size_t g, const std::vector<IntVec>& period,
                                 const std::vector<std::vector<RatVec>>& max_cells,
                                 const WallWeightFn& wall_weights) {
  std::map<Key, std::vector<RatVec>> reps;
  for (const auto& cell : max_cells) {
    auto [cv, shift] = canonicalize_cell(cell, period);
    reps.insert({Key{affine_dim(cv), cv}, cv});
  }

  RatMat P(g, g);
  for (size_t j = 0; j < g; ++j)
    for (size_t i = 0; i < g; ++i) P.at(i, j) = Rat(period[j][i]);
  Rat covol = det(P);
  if (covol < 0) covol = -covol;
  Rat want = covol;
  for (size_t i = 2; i <= g; ++i) want *= (long)i;
  Rat got = 0;
  for (auto& [k, v] : reps)
    if (k.dim == (int)g) got += normalized_volume(g, v);
  if (got != want) throw std::domain_error("window certification failed (tiling volume)");

  // Harvest all faces.
  std::map<Key, std::vector<RatVec>> all = reps;
  std::map<Key, std::vector<PolyFace>> lattices;
  std::vector<std::pair<Key, std::vector<RatVec>>> queue(reps.begin(), reps.end());
  std::set<Key> expanded;
  while (!queue.empty()) {
    auto [key, verts] = queue.back();
    queue.pop_back();
    if (expanded.count(key) || key.dim == 0) continue;
    expanded.insert(key);
    std::vector<PolyFace> lat = face_lattice(g, verts);
    lattices[key] = lat;
    for (const PolyFace& f : lat) {
      if (f.dim == key.dim) continue;
      std::vector<RatVec> fverts;
      for (size_t i : f.verts) fverts.push_back(verts[i]);
      auto [cv, shift] = canonicalize_cell(fverts, period);
      Key fk{f.dim, cv};
      if (!all.count(fk)) {
        all[fk] = cv;
        queue.push_back({fk, cv});
      }
    }
  }

  PeriodicComplex pc;
  pc.dim = g;
  pc.period = period;
  std::map<Key, size_t> index;
  for (auto& [k, v] : all) {
    CellClass cc;
    cc.verts = v;
    cc.dim = k.dim;
    index[k] = pc.cells.size();
    pc.cells.push_back(std::move(cc));
  }

  if (wall_weights)
    for (CellClass& cc : pc.cells)
      if (cc.dim == (int)g - 1) cc.weights = wall_weights(cc.verts);

  // Boundary maps with orientation signs.
  for (CellClass& cc : pc.cells) {
    if (cc.dim == 0) continue;
    Key k{cc.dim, cc.verts};
    std::vector<PolyFace> lat =
        lattices.count(k) ? lattices[k] : face_lattice(g, cc.verts);
    RatVec cen = centroid(cc.verts);
    for (const PolyFace& f : lat) {
      if (f.dim != cc.dim - 1) continue;
      std::vector<RatVec> fverts;
      for (size_t i : f.verts) fverts.push_back(cc.verts[i]);
      auto [cv, shift] = canonicalize_cell(fverts, period);
      size_t fidx = index.at(Key{f.dim, cv});

      // Sign: orientation of [outward, facet frame] vs the cell's frame.
      std::sort(fverts.begin(), fverts.end());
      RatVec out = sub(centroid(fverts), cen);
      std::vector<RatVec> vectors = {out};
      const CellClass& fc = pc.cells[fidx];
      if (cc.dim >= 2) {
        std::vector<size_t> ffr = frame_indices(fc.verts, fc.dim);
        for (size_t j = 1; j < ffr.size(); ++j)
          vectors.push_back(sub(fc.verts[ffr[j]], fc.verts[ffr[0]]));
      }
      RatMat co = hull_coordinates(cc.verts, cc.dim, vectors);
      RatMat sq(cc.dim, cc.dim);
      for (int i = 0; i < cc.dim; ++i)
        for (int j = 0; j < cc.dim; ++j) sq.at(i, j) = co.at(i, j);
      Rat d = det(sq);
      if (d == 0) throw std::logic_error("degenerate boundary orientation");
      cc.boundary.push_back({fidx, d > 0 ? 1 : -1});
    }
    std::sort(cc.boundary.begin(), cc.boundary.end());
  }
  return pc;
}

}  // namespace

PeriodicComplex assemble_periodic_complex(size_t dim, const std::vector<IntVec>& period,
                                          const std::vector<std::vector<RatVec>>& max_cells) {
  return assemble_complex(dim, period, max_cells, WallWeightFn());
}

void annotate_embeddedness(PeriodicComplex& pc) {
  for (CellClass& cc : pc.cells) {
    auto [emb, glued] = cell_overlap_flags(cc.verts, pc.dim, pc.period);
    cc.embedded = emb;
    cc.self_glued = glued;
  }
}

namespace {

// ---------------------------------------------------------------------------
// Arrangement path.
// ---------------------------------------------------------------------------

struct WCell {
  std::vector<RatVec> verts;
  std::vector<HalfspaceQ> facets;  // irredundant
};

void prune_facets(WCell& c, size_t g) {
  std::vector<HalfspaceQ> keep;
  std::set<std::pair<IntVec, Rat>> seen;
  for (const HalfspaceQ& h : c.facets) {
    if (seen.count({h.normal, h.rhs})) continue;
    std::vector<RatVec> tight;
    for (const RatVec& v : c.verts)
      if (dot(h.normal, v) == h.rhs) tight.push_back(v);
    if (!tight.empty() && affine_dim(tight) == (int)g - 1) {
      keep.push_back(h);
      seen.insert({h.normal, h.rhs});
    }
  }
  c.facets = std::move(keep);
}

void split_cell(WCell&& c, const IntVec& a, const Rat& rhs, size_t g, std::vector<WCell>& out) {
  std::vector<Rat> s(c.verts.size());
  bool has_pos = false, has_neg = false;
  for (size_t i = 0; i < c.verts.size(); ++i) {
    s[i] = dot(a, c.verts[i]) - rhs;
    if (s[i] > 0) has_pos = true;
    if (s[i] < 0) has_neg = true;
  }
  if (!has_pos || !has_neg) {
    out.push_back(std::move(c));
    return;
  }
  std::vector<RatVec> cuts;
  for (size_t i = 0; i < c.verts.size(); ++i) {
    if (s[i] <= 0) continue;
    for (size_t j = 0; j < c.verts.size(); ++j) {
      if (s[j] >= 0) continue;
      Rat t = s[i] / (s[i] - s[j]);
      RatVec p = add(c.verts[i], scale(sub(c.verts[j], c.verts[i]), t));
      // Vertex of the section iff {plane} + tight facets have full rank.
      std::vector<IntVec> rows = {a};
      for (const HalfspaceQ& h : c.facets)
        if (dot(h.normal, p) == h.rhs) rows.push_back(h.normal);
      if (rank(IntMat::from_rows(rows)) == g) cuts.push_back(p);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto build = [&](int side) {
    WCell child;
    for (size_t i = 0; i < c.verts.size(); ++i)
      if ((side > 0 && s[i] >= 0) || (side < 0 && s[i] <= 0)) child.verts.push_back(c.verts[i]);
    for (const RatVec& p : cuts) child.verts.push_back(p);
    std::sort(child.verts.begin(), child.verts.end());
    child.verts.erase(std::unique(child.verts.begin(), child.verts.end()), child.verts.end());
    if (affine_dim(child.verts) < (int)g) return;
    child.facets = c.facets;
    child.facets.push_back(HalfspaceQ{side > 0 ? a : neg(a), side > 0 ? rhs : -rhs});
    prune_facets(child, g);
    out.push_back(std::move(child));
  };
  build(+1);
  build(-1);
}

struct PlaneKey {
  IntVec a;
  Rat rhs;
  bool operator<(const PlaneKey& o) const {
    if (a != o.a) return a < o.a;
    return rhs < o.rhs;
  }
};

std::vector<IntVec> standard_period(size_t g) {
  std::vector<IntVec> period;
  for (size_t i = 0; i < g; ++i) {
    IntVec e(g, Int(0));
    e[i] = 1;
    period.push_back(e);
  }
  return period;
}

}  // namespace

PeriodicComplex arrangement_complex(size_t g, const std::vector<WallFamily>& families,
                                    const Rat& window_scale) {
  {
    std::vector<IntVec> normals;
    for (const WallFamily& f : families) normals.push_back(f.normal);
    if (normals.empty() || rank(IntMat::from_rows(normals)) < g) {
      std::string dir = "?";
      if (!normals.empty()) {
        auto ker = kernel_basis(IntMat::from_rows(normals));
        if (!ker.empty()) {
          dir = "(";
          for (size_t i = 0; i < ker[0].size(); ++i) dir += (i ? "," : "") + ker[0][i].str();
          dir += ")";
        }
      } else if (g > 0) {
        dir = "(1";
        for (size_t i = 1; i < g; ++i) dir += ",0";
        dir += ")";
      }
      throw std::domain_error("no bending in direction " + dir);
    }
  }

  std::vector<IntVec> period = standard_period(g);
  Rat margin = Rat(1, 2) * window_scale * env_window_scale();
  for (int attempt = 0;; ++attempt, margin *= 2) {
    Rat lo = -margin, hi = Rat(1) + margin;
    WCell box;
    for (size_t mask = 0; mask < (size_t(1) << g); ++mask) {
      RatVec v(g);
      for (size_t i = 0; i < g; ++i) v[i] = (mask >> i) & 1 ? hi : lo;
      box.verts.push_back(v);
    }
    std::sort(box.verts.begin(), box.verts.end());
    for (size_t i = 0; i < g; ++i) {
      IntVec e(g, Int(0));
      e[i] = 1;
      box.facets.push_back(HalfspaceQ{e, lo});
      box.facets.push_back(HalfspaceQ{neg(e), -hi});
    }

    std::set<PlaneKey> planes;
    for (const WallFamily& f : families) {
      Rat vlo = 0, vhi = 0;
      for (size_t i = 0; i < g; ++i) {
        Rat a = Rat(f.normal[i]) * lo, b = Rat(f.normal[i]) * hi;
        vlo += std::min(a, b);
        vhi += std::max(a, b);
      }
      for (Int n = ceil_rat(vlo - f.offset); n <= floor_rat(vhi - f.offset); ++n)
        planes.insert(PlaneKey{f.normal, f.offset + Rat(n)});
    }

    std::vector<WCell> cells = {std::move(box)};
    for (const PlaneKey& p : planes) {
      std::vector<WCell> next;
      next.reserve(cells.size() + 8);
      for (WCell& c : cells) split_cell(std::move(c), p.a, p.rhs, g, next);
      cells = std::move(next);
    }

    std::vector<std::vector<RatVec>> interior;
    for (WCell& c : cells) {
      bool clipped = false;
      for (const RatVec& v : c.verts)
        for (size_t i = 0; i < g && !clipped; ++i)
          if (v[i] == lo || v[i] == hi) clipped = true;
      if (!clipped) interior.push_back(std::move(c.verts));
    }

    auto weights = [&](const std::vector<RatVec>& wall) {
      std::map<size_t, Rat> wmap;
      for (const WallFamily& f : families) {
        Rat t0 = dot(f.normal, wall[0]) - f.offset;
        if (den(t0) != 1) continue;
        bool on = true;
        for (const RatVec& v : wall)
          if (dot(f.normal, v) - f.offset != t0) {
            on = false;
            break;
          }
        if (on) wmap[f.section] += f.weight;
      }
      return wmap;
    };

    try {
      return assemble_complex(g, period, interior, weights);
    } catch (const std::domain_error&) {
      if (attempt == 5) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Regular subdivision path: projected lower hull of m -> (B(m,m)+lam(m))/2+c.
// ---------------------------------------------------------------------------

PeriodicComplex regular_subdivision(size_t g, const RatMat& B, const RatVec& lam, const Rat& c,
                                    const Rat& window_scale) {
  if (!is_positive_definite(B)) throw std::invalid_argument("regular_subdivision: B must be > 0");
  auto q = [&](const IntVec& m) {
    RatVec bm = B.mul(to_rat(m));
    Rat s = 0;
    for (size_t i = 0; i < g; ++i) s += Rat(m[i]) * bm[i];
    Rat l = 0;
    for (size_t i = 0; i < g; ++i) l += lam[i] * Rat(m[i]);
    return Rat(1, 2) * (s + l) + c;
  };

  std::vector<IntVec> period = standard_period(g);
  Rat radius = Rat(2) * window_scale * env_window_scale();
  for (int attempt = 0;; ++attempt, radius *= 2) {
    std::vector<IntVec> samples;
    IntVec m(g);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == g) {
        samples.push_back(m);
        return;
      }
      for (Int v = ceil_rat(-radius); v <= floor_rat(Rat(1) + radius); ++v) {
        m[i] = v;
        rec(i + 1);
      }
    };
    rec(0);

    // Minorant polyhedron U = {(n, c0) : <n,p> + c0 <= q(p) for all samples};
    // its vertices are the affine supports of the linearity domains.
    std::vector<HalfspaceQ> ineqs;
    for (const IntVec& p : samples) {
      IntVec nrm(g + 1);
      for (size_t i = 0; i < g; ++i) nrm[i] = -p[i];
      nrm[g] = -1;
      ineqs.push_back(HalfspaceQ{nrm, -q(p)});
    }
    Polyhedron U = polyhedron_from_halfspaces(g + 1, ineqs);

    std::vector<std::vector<RatVec>> domains;
    for (const RatVec& v : U.vertices) {
      RatVec n(v.begin(), v.begin() + g);
      Rat c0 = v[g];
      // Global support test: q - alpha >= 0 on all of Z^g, with the
      // nonpositive sublevel set enumerated exactly. Vertices pinned by
      // window-boundary samples fail this and are discarded; completeness
      // of the survivors is certified by the tiling check below.
      RatVec L(g);
      for (size_t i = 0; i < g; ++i) L[i] = lam[i] / 2 - n[i];
      std::vector<IntVec> sub = quadratic_sublevel_points(B, L, c - c0, Rat(0));
      std::vector<RatVec> support;
      bool global = true;
      for (const IntVec& p : sub) {
        Rat diff = q(p) - (dot(to_rat(p), n) + c0);
        if (diff < 0) {
          global = false;
          break;
        }
        if (diff == 0) support.push_back(to_rat(p));
      }
      if (global && affine_dim(support) == (int)g) domains.push_back(std::move(support));
    }
    try {
      return assemble_complex(g, period, domains, WallWeightFn());
    } catch (const std::domain_error&) {
      if (attempt == 5) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Common refinement.
// ---------------------------------------------------------------------------

PeriodicComplex refine_complexes(const PeriodicComplex& a, const PeriodicComplex& b) {
  if (a.dim != b.dim || a.period != b.period)
    throw std::invalid_argument("refine_complexes: incompatible complexes");
  size_t g = a.dim;

  for (Int range = 2;; range += 1) {
    auto shifted_copies = [&](const PeriodicComplex& pc) {
      std::vector<std::vector<RatVec>> out;
      for (const CellClass& cc : pc.cells) {
        if (cc.dim != (int)g) continue;
        IntVec k(g);
        std::function<void(size_t)> rec = [&](size_t i) {
          if (i == g) {
            std::vector<RatVec> copy = cc.verts;
            for (RatVec& v : copy)
              for (size_t t = 0; t < g; ++t)
                for (size_t j = 0; j < g; ++j) v[j] += Rat(k[t]) * Rat(pc.period[t][j]);
            out.push_back(std::move(copy));
            return;
          }
          for (Int v = -range; v <= range; ++v) {
            k[i] = v;
            rec(i + 1);
          }
        };
        rec(0);
      }
      return out;
    };

    auto copies_a = shifted_copies(a);
    auto copies_b = shifted_copies(b);

    std::set<std::vector<RatVec>> seen;
    std::vector<std::vector<RatVec>> refined;
    for (const auto& ca : copies_a) {
      RatVec alo = ca[0], ahi = ca[0];
      for (const RatVec& v : ca)
        for (size_t i = 0; i < g; ++i) {
          alo[i] = std::min(alo[i], v[i]);
          ahi[i] = std::max(ahi[i], v[i]);
        }
      HRep ha = facets_of_polytope(g, ca);
      for (const auto& cb : copies_b) {
        bool overlap = true;
        for (size_t i = 0; i < g && overlap; ++i) {
          Rat blo = cb[0][i], bhi = cb[0][i];
          for (const RatVec& v : cb) {
            blo = std::min(blo, v[i]);
            bhi = std::max(bhi, v[i]);
          }
          if (bhi <= alo[i] || blo >= ahi[i]) overlap = false;
        }
        if (!overlap) continue;
        HRep hb = facets_of_polytope(g, cb);
        std::vector<HalfspaceQ> sys = ha.facets;
        for (const HalfspaceQ& h : hb.facets) sys.push_back(h);
        Polyhedron p = polyhedron_from_halfspaces(g, sys);
        if (p.empty || affine_dim(p.vertices) < (int)g) continue;
        std::vector<RatVec> vs = p.vertices;
        std::sort(vs.begin(), vs.end());
        if (seen.insert(vs).second) refined.push_back(std::move(vs));
      }
    }

    // A refined wall inherits the weights of every original wall containing
    // it, from either complex.
    auto weight_from = [&](const PeriodicComplex& pc, const std::vector<RatVec>& wall,
                           std::map<size_t, Rat>& acc) {
      for (const CellClass& cc : pc.cells) {
        if (cc.dim != (int)g - 1 || cc.weights.empty()) continue;
        HRep h = facets_of_polytope(g, cc.verts);
        IntVec k(g);
        std::function<bool(size_t)> rec = [&](size_t i) -> bool {
          if (i == g) {
            for (const RatVec& v : wall) {
              RatVec w = v;
              for (size_t t = 0; t < g; ++t)
                for (size_t j = 0; j < g; ++j) w[j] -= Rat(k[t]) * Rat(pc.period[t][j]);
              for (const HalfspaceQ& f : h.hull_equations)
                if (dot(f.normal, w) != f.rhs) return false;
              for (const HalfspaceQ& f : h.facets)
                if (dot(f.normal, w) < f.rhs) return false;
            }
            for (auto& [s, wt] : cc.weights) acc[s] += wt;
            return true;
          }
          for (Int v = -range; v <= range; ++v) {
            k[i] = v;
            if (rec(i + 1)) return true;
          }
          return false;
        };
        rec(0);
      }
    };

    auto weights = [&](const std::vector<RatVec>& wall) {
      std::map<size_t, Rat> acc;
      weight_from(a, wall, acc);
      weight_from(b, wall, acc);
      return acc;
    };

    try {
      return assemble_complex(g, a.period, refined, weights);
    } catch (const std::domain_error&) {
      if (range >= 4) throw;
    }
  }
}

}  // namespace mumford
