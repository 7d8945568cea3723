// Multivariable Mumford degeneration data and the combinatorial geometry
// read off it: overgraph face records with dual cones, central-fiber
// stratifications, singularity classification, K-triviality, and the dual
// complex of the central fiber with its homology.
#pragma once

#include <string>

#include "plsection.hpp"

namespace mumford {

struct MumfordData {
  size_t g = 0;  // torus rank
  size_t k = 0;  // parameter count
  Int d = 1;     // polarization denominator
  std::vector<PLSection> sections;
  std::string name;

  // Checks the structural invariants: matching dimensions, denominators
  // dividing d, positive-definite total quadratic part (maximality plus
  // joint bending in every direction). Throws std::invalid_argument.
  void validate() const;

  // Sum of the quadratic parts; integral for honest ZPL data.
  RatMat total_form() const;
  IntMat total_form_int() const;
};

// A stratification of the central fiber over the coordinate stratum I:
// the common refinement of Bend(b_i), i in I, with per-component data.
struct Stratification {
  std::vector<size_t> I;
  PeriodicComplex complex;  // reduced complex; cylinder_dirs = torus factor
  // Lift of reduced coordinates back to M_R (columns) and the cylinder
  // directions; identity when the stratum has no torus factor.
  std::vector<IntVec> complement;  // size = complex.dim columns in R^g
  struct Component {                // one per maximal cell class
    size_t cell_index;              // index into complex.cells
    std::vector<RatVec> polytope;   // F0, in reduced coordinates
    size_t abelian_dim;             // h
    bool compact;                   // h == 0
    bool self_glued;
  };
  std::vector<Component> components;
};

Stratification stratification(const MumfordData& data, std::vector<size_t> I);

// One M-orbit of faces of the overgraph Gamma = graph(b_1..b_k) + R_{>=0}^k.
// Faces are indexed by a stratum subset I and a face class of the
// I-stratification complex.
struct FaceRecord {
  std::vector<size_t> I;            // tight coordinates (sorted, nonempty)
  std::vector<RatVec> face_verts;   // reduced-coordinate representative
  int face_dim = 0;                 // dimension of the stored polytope
  size_t abelian_dim = 0;           // torus factor of the face
  bool compact = true;
  RationalCone dual_cone;           // in N_R x R^k
  std::vector<size_t> image_face;   // coordinates spanned by the cone image
  bool flat = true;                 // image cone is exactly that face
  bool standard_affine = true;
};

std::vector<FaceRecord> overgraph_faces(const MumfordData& data);

enum class LocalForm { Smooth, Nodal, NearlyNodal, Semistable, Other };

std::string to_string(LocalForm f);

// Product decomposition of a dual cone against the model local forms of a
// nodal/nearly-nodal/semistable morphism: rays grouped by the base
// coordinate they map onto, each group matched to a node (2 rays), a unit
// cube at height one (2^m rays, the nearly-nodal factor), or a unimodular
// simplex at height one (the snc factor).
struct ConeFactor {
  size_t axis = 0;
  std::vector<IntVec> rays;
  enum class Kind { Coordinate, Node, Cube, Simplex, Other } kind = Kind::Other;
  // Slice frame of a cube factor: origin vertex and edge generators.
  RatVec cube_origin;
  std::vector<RatVec> cube_generators;
};

struct ConeFactorization {
  bool product_ok = false;  // spans independent, jointly saturated
  std::vector<ConeFactor> factors;
  std::vector<IntVec> horizontal;  // rays over the origin of the base
  LocalForm local_form() const;
};

ConeFactorization factor_dual_cone(const RationalCone& c, size_t g, size_t k);

struct SingularityReport {
  bool smooth = false;        // all dual cones standard affine
  bool strict = false;        // no self-glued component on any stratum
  std::map<std::vector<size_t>, LocalForm> per_stratum;
  // Witnesses for non-smoothness / unclassifiable local forms.
  std::vector<FaceRecord> witnesses;

  bool nodal() const;  // every stratum classifies as Nodal
};

// Singularity classification. Every dual cone of the overgraph is a face of
// a cone dual to a minimal face (a vertex of some stratum complex), and
// faces of the model cones are again model cones, so analyzing the minimal
// faces decides smoothness and the per-stratum labels. all_faces additionally
// analyzes every face, giving a complete witness list.
SingularityReport classify_singularities(const MumfordData& data, bool all_faces = false);

// Recognition of transversely shifted matroidal data: every section is a
// union of parallel hyperplane families with bending parameter 1, the
// primitive normals form a unimodular representation, and the arrangement is
// transversal.
struct ArrangementRecovery {
  bool recognized = false;
  MatroidRep rep;
  std::vector<std::vector<Rat>> offsets;
};

ArrangementRecovery recover_shifted_matroidal(const MumfordData& data);

// K-triviality: all vertices of the height-(1,...,1) slice of the normal fan
// are integral, i.e. the gradient of b_1 + ... + b_k on every maximal
// linearity domain lies in N.
bool is_K_trivial(const MumfordData& data);

// The dual complex Gamma(X_0) = S_(1,...,1) / Lambda_B as a periodic complex
// in N_R with period lattice Lambda_B = B(M), B the total form. For g > 3
// unshifted matroidal data a combinatorial fast path builds the 2-skeleton
// (sufficient for H_1); otherwise the full tessellation is produced.
PeriodicComplex dual_complex(const MumfordData& data);

namespace detail {
// The two dual-complex construction routes, exposed so tests can check them
// against each other on small data.
PeriodicComplex dual_complex_windowed(const MumfordData& data);
PeriodicComplex dual_complex_two_skeleton(const MumfordData& data);
}  // namespace detail

}  // namespace mumford
