// Delaunay and Voronoi decompositions of positive-definite integral forms,
// and the same-Delaunay predicate underlying second-Voronoi cones.
#pragma once

#include "plsection.hpp"

namespace mumford {

struct DelaunayComplex {
  IntMat form;
  PeriodicComplex complex;        // Del_B over a certified window
  std::map<int, size_t> census;   // cell classes per dimension
};

// The Delaunay decomposition of B, computed as the projected lower hull of
// the lift m -> B(m,m). Rejects forms that are not positive definite.
DelaunayComplex delaunay(const IntMat& B);

struct VoronoiCell {
  std::vector<RatVec> vertices;  // sorted
  HRep hrep;                     // irredundant bisector inequalities
};

// The closed Voronoi cell of the origin: intersection of the bisector
// halfspaces 2 B(m, x) <= B(m,m), certified by a lattice-radius check.
VoronoiCell voronoi_cell(const IntMat& B);

// Equality of Del_{B1} and Del_{B2} as periodic complexes.
bool same_delaunay(const IntMat& B1, const IntMat& B2);

}  // namespace mumford
