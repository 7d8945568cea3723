// Monomial base change of Mumford data and the two-stage resolution of the
// pullback: bend separation to a nearly-nodal model, then ordered cube
// subdivision to a semistable one.
#pragma once

#include "mumford_data.hpp"

namespace mumford {

struct MonomialMap {
  IntMat R;  // k rows (old coordinates) x n columns (new), nonnegative

  // Rejects negative entries, zero rows (constant pullback of a coordinate)
  // and zero columns (constant new coordinate).
  void validate(size_t k) const;
};

// Pullback along u_i = prod_j w_j^{r_ij}: the Mumford data with sections
// c_j = sum_i r_ij b_i.
MumfordData monomial_base_change(const MumfordData& data, const MonomialMap& map);

struct ResolutionPlan {
  Int separation = 0;  // N; bend positions are j*N + l
  // Orders are fixed: new divisors by index, fiber components by the
  // lexicographic order of the corresponding slice vertices / cube corners.

  // Smallest valid bound: N >= max r_ij (default n * (1 + max r)).
  static ResolutionPlan standard_for(const MonomialMap& map);
};

// Local model of the nearly-nodal stage at one point: for each old index i
// the function c_i : R -> R^n bends at z = j*N + l with parameter e_j, for
// l = 1..r_ij.
struct LocalBendData {
  Int separation;
  // bends[i] = sorted list of (position, color j).
  std::vector<std::vector<std::pair<Int, size_t>>> bends;
  bool nodal = false;  // colors distinct across every face of the refinement
};

// Throws std::invalid_argument with the required bound when the separation
// constant is too small.
LocalBendData nearly_nodal_stage(const std::vector<IntVec>& rvecs, const ResolutionPlan& plan);

// Forgetting-colors coherence: the bends of the J-model project onto the
// bends of every sub-model J' (p_{J,J'} compatibility).
bool check_projection_coherence(const std::vector<IntVec>& rvecs, const ResolutionPlan& plan);

// Triangulation of [0,1]^m into m! unimodular simplices by pulling vertices
// in the given order (indices into the 2^m vertices, binary order).
// order may be empty: the binary order is used.
std::vector<std::vector<IntVec>> cube_subdivision(size_t m, const std::vector<size_t>& order);

struct ResolveResult {
  MumfordData stage1;          // separated, nearly nodal Mumford data
  Int grid_denominator;        // 1/delta: offsets moved onto this grid
  SingularityReport stage1_report;
  bool stage1_nodal_by_colors; // the distinct-colors criterion
  // Stage 2 (fan level): every maximal dual cone, cube factors subdivided.
  std::vector<RationalCone> final_cones;
  bool final_all_standard_affine = false;
  bool final_semistable = false;
  PeriodicComplex stage1_dual_complex;
};

// Runs both stages on base-changed hyperplane data. Throws
// std::domain_error with a witness summary if a stage fails to classify
// (never silently accepted).
ResolveResult resolve_pipeline(const MumfordData& base_changed, const MonomialMap& map,
                               const ResolutionPlan& plan);

}  // namespace mumford
