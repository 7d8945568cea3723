// Weight filtrations of commuting square-zero monodromy logarithms,
// monodromy bilinear forms on gr^W_0, and graph/Jacobian helpers.
#pragma once

#include "matroid.hpp"

namespace mumford {

struct SymplecticLattice {
  size_t g = 0;     // rank 2g
  IntMat pairing;   // unimodular antisymmetric 2g x 2g matrix

  // e_1..e_g, f_1..f_g with e_i . f_j = delta_ij.
  static SymplecticLattice standard(size_t g);
  void validate() const;
};

struct WeightFiltration {
  size_t rank = 0;            // 2g
  SublatticeBasis w_minus2;   // saturation of im(N)
  SublatticeBasis w_minus1;   // ker(N)
};

// Common weight filtration of N = sum r_i N_i, r > 0. Validates N_i^2 = 0
// and commutativity, and checks independence of the filtration from the
// positive weights by recomputation with two fixed sample weight vectors.
WeightFiltration weight_filtration(const std::vector<IntMat>& Ns);

// True iff rank W_-2 = rank W_-1.
bool is_maximal(const std::vector<IntMat>& Ns);

struct MonodromyForms {
  std::vector<IntMat> forms;  // B_i on gr^W_0, in the fixed complement basis
  bool positive_semidefinite = false;  // all forms psd (rational-kernel cone)
  std::vector<IntVec> basis;  // the complement basis vectors used (lifts)
};

// B_i(x, y) = L(N_i x, y) on gr^W_0 = V / W_-1, expressed in a fixed
// complement basis of W_-1 (the tail columns of the Smith-decomposition
// inverse of the kernel basis: deterministic, so the matrices are
// reproducible). Requires a maximal system; rejects inputs whose forms fail
// symmetry or do not descend to the quotient.
MonodromyForms monodromy_forms(const std::vector<IntMat>& Ns, const SymplecticLattice& lat);

// For each edge of G, the rank <= 1 form (x . gamma_i)^2 on H_1(G, Z) in the
// basis of fundamental circuits of the first greedily chosen spanning
// forest. Coincides with the matroidal cone of the cographic representation.
std::vector<IntMat> graph_vanishing_forms(const Graph& g);

// A canonical spanning forest: edges accepted greedily in index order.
std::vector<size_t> greedy_spanning_forest(const Graph& g);

}  // namespace mumford
