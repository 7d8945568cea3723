// Convex quasi-periodic PL sections on M_R = R^g: the 1/d-integral sections
// of ZPL/ZL on the torus, their bending loci, quadratic parts, dicing tests
// and the (transversely) shifted matroidal arrangements.
//
// A section is a sum of atoms. A hyperplane atom contributes
// param * hump(<normal, x> - offset), where hump is the PL interpolation of
// (t^2 - t)/2 on the integers: convex, bending exactly at offset + Z with
// slope jump param. A form atom contributes scale times the canonical convex
// lift of m -> (B(m,m) - L(m))/2, whose bending locus is the Delaunay
// decomposition of B.
#pragma once

#include <memory>
#include <vector>

#include "matroid.hpp"
#include "periodic_complex.hpp"

namespace mumford {

// PL interpolation of (t^2 - t)/2 on Z; convex, >= 0, unit slope jumps at Z.
Rat hump(const Rat& t);

struct HyperplaneFamilyAtom {
  IntVec normal;  // primitive
  Rat offset;     // stored reduced mod 1
  Rat param;      // positive bending parameter (in (1/d)Z for 1/d-sections)
};

struct FormAtom {
  IntMat B;  // symmetric, positive definite
  IntVec L;  // characteristic: B_ii = L_i mod 2
  Rat scale = Rat(1);
};

class PLSection {
 public:
  PLSection(size_t g, Int d) : g_(g), d_(std::move(d)) {}

  size_t g() const { return g_; }
  const Int& denominator() const { return d_; }
  const std::vector<HyperplaneFamilyAtom>& families() const { return families_; }
  const std::vector<FormAtom>& forms() const { return forms_; }
  bool trivial() const { return families_.empty() && forms_.empty(); }

  void add_family(IntVec normal, Rat offset, Rat param);
  void add_form(IntMat B, IntVec L, Rat scale = Rat(1));
  // Affine part: fixes the exact values of the lift without changing the
  // bending data or the section class mod ZL.
  void add_affine(const RatVec& linear, const Rat& constant);
  const RatVec& linear_part() const { return linear_; }
  const Rat& constant_part() const { return const_; }
  // this += r * other (preserves convexity; r must be positive).
  void add_scaled(const PLSection& other, const Int& r);

  // Exact value of the canonical lift at any rational point.
  Rat value(const RatVec& x) const;
  // Gradient on the (open) linearity domain containing x; throws if x lies
  // on the bending locus.
  RatVec gradient(const RatVec& x) const;

  // The quadratic part B(m,m') = b(m+m') - b(m) - b(m') + b(0), as a matrix.
  RatMat quadratic_part() const;

 private:
  struct FormCache;
  const FormCache& form_cache(size_t idx) const;

  size_t g_;
  Int d_;
  std::vector<HyperplaneFamilyAtom> families_;
  std::vector<FormAtom> forms_;
  RatVec linear_ = RatVec(g_, Rat(0));
  Rat const_ = Rat(0);
  mutable std::vector<std::shared_ptr<FormCache>> caches_;
};

// Integral quadratic part; throws std::domain_error when it is not integral.
IntMat quadratic_part_int(const PLSection& b);

// The weighted bending complex Bend(b): walls carry the slope jumps of b
// (all weights under section key 0). A linear/trivial section yields the
// empty complex.
PeriodicComplex bending_locus(const PLSection& b);

// Common refinement of the bending loci of several sections; wall weights are
// keyed by the section index. Throws std::domain_error when some direction
// has no bending.
PeriodicComplex joint_bending_complex(const std::vector<PLSection>& bs);

struct DicingResult {
  bool dicing = false;   // all vertices integral
  Int minimal_d = 1;     // least d with vertices and values 1/d-integral
  PeriodicComplex complex;
};

DicingResult is_dicing(const std::vector<PLSection>& bs);

struct ShiftedArrangement {
  std::vector<PLSection> sections;
  bool transversal = false;
};

// Construction of the (shifted) matroidal sections: section i has
// HyperplaneFamilyAtom normals x_i with the given offsets, all bending
// parameters 1. Rejects non-unimodular representations.
ShiftedArrangement shifted_matroidal_arrangement(const MatroidRep& rep,
                                                 const std::vector<std::vector<Rat>>& offsets);

// Transversality of a collection of hyperplane-form sections: at every face
// of the joint complex the normals of the families through it are linearly
// independent.
bool arrangement_is_transversal(const std::vector<PLSection>& bs);

// The unique convex section with b(m) = (B(m,m) - L(m))/2 on M and bending
// locus Del_B. Default L = diag(B). Rejects non-characteristic L. B may be
// positive definite, rank one, or zero; other degenerate ranks are not
// supported (infinite Delaunay cells).
PLSection pl_from_form(const IntMat& B, const IntVec& L);
PLSection pl_from_form(const IntMat& B);

}  // namespace mumford
