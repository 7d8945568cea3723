#include "delaunay.hpp"

#include <stdexcept>

namespace mumford {

DelaunayComplex delaunay(const IntMat& B) {
  if (!B.is_symmetric()) throw std::invalid_argument("delaunay: form must be symmetric");
  if (!is_positive_definite(to_rat(B)))
    throw std::invalid_argument("delaunay: form must be positive definite");
  DelaunayComplex out;
  out.form = B;
  // Lift m -> B(m,m), i.e. q(m) = (1/2) m^T (2B) m.
  out.complex =
      regular_subdivision(B.rows, scale(to_rat(B), Rat(2)), RatVec(B.rows, Rat(0)), Rat(0));
  out.census = out.complex.census();
  return out;
}

VoronoiCell voronoi_cell(const IntMat& B) {
  if (!B.is_symmetric() || !is_positive_definite(to_rat(B)))
    throw std::invalid_argument("voronoi_cell: form must be positive definite");
  size_t g = B.rows;
  auto norm = [&](const RatVec& x) {
    RatVec bx = to_rat(B).mul(x);
    Rat s = 0;
    for (size_t i = 0; i < g; ++i) s += x[i] * bx[i];
    return s;
  };
  Rat R = 4;
  for (;; R *= 2) {
    // Bisector inequalities from all 0 != m with B(m,m) <= R.
    std::vector<IntVec> pts =
        quadratic_sublevel_points(scale(to_rat(B), Rat(2)), RatVec(g, Rat(0)), Rat(0), R);
    std::vector<HalfspaceQ> hs;
    for (const IntVec& m : pts) {
      if (is_zero(m)) continue;
      IntVec bm(g, Int(0));
      for (size_t i = 0; i < g; ++i)
        for (size_t j = 0; j < g; ++j) bm[i] += B.at(i, j) * m[j];
      Int mm = dot(bm, m);
      // 2 B(m, x) <= B(m,m)  ->  <-2 bm, x> >= -mm
      IntVec nrm(g);
      for (size_t i = 0; i < g; ++i) nrm[i] = -2 * bm[i];
      hs.push_back(HalfspaceQ{nrm, Rat(-mm)});
    }
    Polyhedron p = polyhedron_from_halfspaces(g, hs);
    if (!p.bounded() || p.empty) continue;
    // Certified once no lattice point outside the search ball can cut the
    // cell: the bisector of m only reaches within distance sqrt(B(m,m))/2 of
    // the origin.
    Rat rho2 = 0;
    for (const RatVec& v : p.vertices) rho2 = std::max(rho2, norm(v));
    if (R >= 4 * rho2) {
      VoronoiCell out;
      out.vertices = p.vertices;
      out.hrep = facets_of_polytope(g, p.vertices);
      return out;
    }
  }
}

bool same_delaunay(const IntMat& B1, const IntMat& B2) {
  return delaunay(B1).complex.same_cells(delaunay(B2).complex);
}

}  // namespace mumford
