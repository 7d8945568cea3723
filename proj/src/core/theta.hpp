// Truncated theta series of a Mumford degeneration, graded multiplication
// structure constants, and central-fiber relation extraction mod (u).
//
// All operations take an explicit total u-degree bound and are exact below
// it: term enumeration is certified complete via quadratic minorants of the
// sections.
#pragma once

#include "mumford_data.hpp"

namespace mumford {

struct ThetaTerm {
  IntVec z_exp;  // w * x(v)
  IntVec u_exp;  // (w * b_i(v))_i, one entry per parameter
  Int coeff = 1;
};

struct ThetaSeries {
  Int weight;
  RatVec cls;    // representative of v-bar, reduced into [0,1)^g
  Int trunc;     // complete for total u-degree <= trunc
  std::vector<ThetaTerm> terms;  // sorted by (z_exp, u_exp)
};

// Expansion of Theta_{v-bar} of the given weight, complete up to the bound.
// Requires w >= 1 divisible by d, and w * v-bar integral.
ThetaSeries theta_expand(const MumfordData& data, const RatVec& vbar, const Int& w,
                         const Int& trunc);

// Truncated polynomial in u_1..u_k: exponent vector -> coefficient.
using UPoly = std::map<IntVec, Int>;

struct StructureRow {
  RatVec v1, v2;
  Int w1, w2, trunc;
  std::map<RatVec, UPoly> coefficients;  // reduced class of weight w1+w2 -> c(u)
};

// One row of the multiplication table (Theta_{v1} * Theta_{v2} expanded in
// the weight-(w1+w2) theta basis), coefficients exact below the bound.
StructureRow theta_multiply(const MumfordData& data, const RatVec& v1, const Int& w1,
                            const RatVec& v2, const Int& w2, const Int& trunc);

// All w^g classes of weight w, in lexicographic order of their reduced
// representatives.
std::vector<RatVec> weight_classes(size_t g, const Int& w);

struct CentralFiberRelations {
  Int w, degree;
  std::vector<RatVec> classes;                 // the weight-w classes
  std::vector<std::vector<size_t>> monomials;  // degree-multisets of class indices
  // Product of each monomial mod (u), over the weight-(w*degree) classes.
  std::vector<std::map<RatVec, Int>> products;
  std::vector<IntVec> relations;  // integer kernel, one coefficient per monomial
};

// Kernel of the multiplication-into-weight-(degree*w) map mod (u_1..u_k).
// Refuses (std::domain_error) when some face of the joint bending complex is
// immersed, where the mod-u product rule is not guaranteed.
CentralFiberRelations central_fiber_relations(const MumfordData& data, const Int& w,
                                              const Int& degree);

}  // namespace mumford
