// Regular matroids via unimodular integer representations, graphs and their
// cographic matroids, and matroidal cones of rank-1 quadratic forms.
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "intmat.hpp"

namespace mumford {

struct MatroidRep {
  size_t ground_size = 0;   // k
  size_t rank_ambient = 0;  // g
  IntMat columns;           // g x k, column i = x_i in N

  IntVec column(size_t i) const { return columns.col(i); }
};

struct Graph {
  size_t vertices = 0;
  std::vector<std::pair<size_t, size_t>> edges;  // ordered pairs = orientation
};

// True iff the selected columns are linearly independent over Q.
bool independence(const MatroidRep& rep, const std::vector<size_t>& subset);

// Realization of the cographic matroid M*(G) in H^1(G,Z), in the basis of
// fundamental circuits of the given spanning forest. Throws
// std::invalid_argument if the edge set contains a cycle or fails to span.
//
// Orientations are caller-supplied. Reversing a forest edge negates its
// column and leaves the matroidal cone identical; reversing a non-forest
// edge also flips the corresponding circuit basis vector, conjugating the
// cone by an element of GL_g(Z) (the cone is canonical only up to this
// action).
MatroidRep cographic_rep(const Graph& g, const std::vector<size_t>& spanning_forest);

// The rank-1 Gram matrices x_i x_i^T spanning the matroidal cone, in column
// order.
std::vector<IntMat> matroidal_cone(const MatroidRep& rep);

// The Seymour-Bixby matroid R_10 as a 5 x 10 unimodular matrix.
MatroidRep r10();

// Exhaustive matroid-axiom check for the independence oracle (use on small
// ground sets only).
bool check_matroid_axioms(const MatroidRep& rep);

}  // namespace mumford
