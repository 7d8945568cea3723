// Rational polyhedral cones and polyhedra via the double description method.
//
// Cones carry both representations: extreme rays (+ lineality basis) and
// facet halfspaces (+ span equations). All data is integral and primitive;
// ray and halfspace lists are kept lexicographically sorted so equal cones
// compare equal.
#pragma once

#include <optional>
#include <vector>

#include "intmat.hpp"

namespace mumford {

struct RationalCone {
  size_t ambient_dim = 0;
  std::vector<IntVec> rays;        // primitive extreme rays, sorted
  std::vector<IntVec> lineality;   // basis of the lineality space (empty if pointed)
  std::vector<IntVec> halfspaces;  // facet normals h: <h,x> >= 0 on the cone
  std::vector<IntVec> equations;   // span equations e: <e,x> = 0 on the cone

  bool is_strongly_convex() const { return lineality.empty(); }
  size_t dim() const;  // dimension of the cone (rank of rays + lineality)
  bool contains(const RatVec& x) const;
  bool operator==(const RationalCone& o) const;
};

// Builds a cone from generators (V-representation); fills both descriptions.
RationalCone cone_from_rays(size_t dim, const std::vector<IntVec>& gens);

// Builds a cone from halfspaces and equations (H-representation).
RationalCone cone_from_halfspaces(size_t dim, const std::vector<IntVec>& halfspaces,
                                  const std::vector<IntVec>& equations = {});

// tau^vee: all linear functionals evaluating non-negatively on tau.
RationalCone dual_cone(const RationalCone& c);

// True iff the primitive generators of the extremal rays extend to a Z-basis:
// the cone is pointed, has exactly dim-many rays, and the ray matrix has all
// elementary divisors equal to 1.
bool is_standard_affine(const RationalCone& c);

// A (possibly unbounded) rational polyhedron in V-representation.
struct Polyhedron {
  size_t ambient_dim = 0;
  std::vector<RatVec> vertices;
  std::vector<IntVec> rays;       // recession rays
  std::vector<IntVec> lineality;  // recession lineality
  bool empty = true;

  bool bounded() const { return rays.empty() && lineality.empty(); }
};

// Inequality <normal, x> >= rhs.
struct HalfspaceQ {
  IntVec normal;
  Rat rhs;
};

Polyhedron polyhedron_from_halfspaces(size_t dim, const std::vector<HalfspaceQ>& ineqs,
                                      const std::vector<HalfspaceQ>& eqs = {});

// Irredundant facet inequalities of a bounded V-polytope within its affine
// hull; also returns the affine-hull equations.
struct HRep {
  std::vector<HalfspaceQ> facets;
  std::vector<HalfspaceQ> hull_equations;
};
HRep facets_of_polytope(size_t dim, const std::vector<RatVec>& vertices);

// Combinatorial face of a polytope as a sorted vertex-index set.
struct PolyFace {
  std::vector<size_t> verts;
  int dim = -1;
};

// Full face lattice of a bounded polytope given by its vertices:
// every nonempty proper face plus the polytope itself, sorted by (dim, verts).
std::vector<PolyFace> face_lattice(size_t dim, const std::vector<RatVec>& vertices);

// Normalized volume (euclidean volume times d!, d = affine dimension of the
// polytope) with respect to the ambient integer lattice. Requires a
// full-dimensional polytope; lower-dimensional input returns 0.
Rat normalized_volume(size_t dim, const std::vector<RatVec>& vertices);

// Affine dimension of a point set.
int affine_dim(const std::vector<RatVec>& pts);

}  // namespace mumford
