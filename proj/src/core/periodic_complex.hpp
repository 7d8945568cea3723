// Lattice-periodic polyhedral complexes, stored as canonical cell classes.
//
// A complex lives in R^dim and is invariant under a full-rank period lattice.
// Each Λ-orbit of cells is stored once, translated so that its
// lexicographically least vertex lies in the half-open fundamental cell of
// the period basis. Cell classes carry the data the rest of the library
// reads off them: bending weights on walls, embeddedness flags, and signed
// boundary incidences for cellular homology of the quotient.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cone.hpp"

namespace mumford {

struct CellClass {
  std::vector<RatVec> verts;  // sorted; canonical representative
  int dim = 0;
  std::map<size_t, Rat> weights;  // codim-1 only: source section -> slope jump
  // No two relative-interior points are identified on the torus. (Gates the
  // mod-u multiplication shortcuts.)
  bool embedded = true;
  // The closure meets one of its own nonzero lattice translates. (Feeds
  // strictness: self-glued components.)
  bool self_glued = false;
  // Cellular boundary in the quotient complex: one entry per geometric facet
  // of the representative, as (facet class index, incidence sign).
  std::vector<std::pair<size_t, int>> boundary;
};

struct PeriodicComplex {
  size_t dim = 0;
  std::vector<IntVec> period;  // basis of Λ, one vector per row
  std::vector<CellClass> cells;  // sorted by (dim, verts)
  // When nonempty: the complex is the product of the stored cells with the
  // torus spanned by these directions (stratification cylinders). Cells are
  // then in reduced coordinates of rank dim.
  std::vector<IntVec> cylinder_dirs;

  std::map<int, size_t> census() const;
  size_t top_dim() const;
  std::vector<size_t> cells_of_dim(int d) const;
  // H_1 rank of the quotient cell complex, via Smith normal forms of the
  // boundary maps. Requires the complex to carry cells of dim <= 2 at least.
  size_t h1_rank() const;
  bool same_cells(const PeriodicComplex& other) const;  // cell-by-cell equality
};

// Canonical translate of a cell modulo the period lattice: returns the
// translated sorted vertex list and the lattice shift that was subtracted.
std::pair<std::vector<RatVec>, IntVec> canonicalize_cell(const std::vector<RatVec>& verts,
                                                         const std::vector<IntVec>& period);

// One family of parallel hyperplanes { x : <normal, x> = offset + n, n in Z }
// together with its bending weight and the section it came from.
struct WallFamily {
  IntVec normal;  // primitive
  Rat offset;     // reduced mod 1
  Rat weight;     // positive
  size_t section = 0;
};

// The Z^g-periodic polyhedral decomposition cut out by a set of hyperplane
// families, with full face structure. Throws std::domain_error if the
// families do not cut bounded cells (missing bending directions must be
// handled by the caller via quotienting first).
PeriodicComplex arrangement_complex(size_t g, const std::vector<WallFamily>& families,
                                    const Rat& window_scale = Rat(1));

// Regular subdivision of R^g induced by lifting each lattice point m to
// height q(m) = (B(m,m) + lam(m))/2 + c: the projected lower convex hull,
// with full face structure. B must be positive definite. The subdivision is
// Z^g-periodic. Facet supports are certified globally (exact quadratic
// minimization), cell classes by a tiling-volume check.
PeriodicComplex regular_subdivision(size_t g, const RatMat& B, const RatVec& lam, const Rat& c,
                                    const Rat& window_scale = Rat(1));

// Common refinement of two complexes over the same period lattice.
PeriodicComplex refine_complexes(const PeriodicComplex& a, const PeriodicComplex& b);

// Builds a complex from a complete set of maximal cells (at least one
// representative per lattice class): canonicalizes classes, harvests all
// faces, computes boundary maps, and certifies that the classes tile a
// fundamental domain (throws std::domain_error otherwise).
PeriodicComplex assemble_periodic_complex(size_t dim, const std::vector<IntVec>& period,
                                          const std::vector<std::vector<RatVec>>& max_cells);

// Fills in the embedded / self_glued flags of every cell class (exact
// polytope-translate intersection tests). Complexes are built with the flags
// at their defaults; call this before reading them.
void annotate_embeddedness(PeriodicComplex& pc);

// Environment override hook (MUMFORD_WINDOW_SCALE); returns 1 if unset.
Rat env_window_scale();

}  // namespace mumford
