// Exact integer matrices, lattice normal forms and the linear algebra
// primitives everything else is built on: Smith/Hermite normal forms,
// saturation, kernels and integral system solving.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vec.hpp"

namespace mumford {

struct IntMat {
  size_t rows = 0, cols = 0;
  std::vector<Int> a;  // row-major

  IntMat() = default;
  IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
  IntMat(size_t r, size_t c, std::vector<Int> entries)
      : rows(r), cols(c), a(std::move(entries)) {}

  Int& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }

  static IntMat identity(size_t n);
  static IntMat from_rows(const std::vector<IntVec>& rows);
  static IntMat from_cols(const std::vector<IntVec>& cols);

  IntVec row(size_t i) const;
  IntVec col(size_t j) const;
  IntMat transpose() const;
  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  IntVec mul(const IntVec& v) const;   // this * v
  IntMat mul(const IntMat& o) const;   // this * o
  bool is_symmetric() const;
  bool is_zero() const;
};

IntMat add(const IntMat& x, const IntMat& y);
IntMat scale(const IntMat& x, const Int& c);

// Rational matrices appear in a few places (quadratic parts of 1/d-sections,
// inverses); they share the row-major layout.
struct RatMat {
  size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Rat(0)) {}
  Rat& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Rat& at(size_t i, size_t j) const { return a[i * cols + j]; }
  RatVec mul(const RatVec& v) const;
  bool operator==(const RatMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

RatMat to_rat(const IntMat& m);
RatMat add(const RatMat& x, const RatMat& y);
RatMat scale(const RatMat& x, const Rat& c);
// Exact inverse of a nonsingular rational matrix (Gauss-Jordan).
RatMat inverse(const RatMat& m);

Int det(const IntMat& m);  // square input
Rat det(const RatMat& m);

struct SmithResult {
  IntMat U, D, V;  // U*A*V = D, U and V unimodular, D diagonal with d1 | d2 | ...
};

SmithResult smith_normal_form(const IntMat& A);

// Column-style Hermite normal form: A*V = H with V unimodular and H in
// column echelon form (pivots positive, entries right of a pivot reduced).
struct HermiteResult {
  IntMat H, V;
  std::vector<size_t> pivot_rows;  // row index of each pivot column
};

HermiteResult hermite_normal_form(const IntMat& A);

size_t rank(const IntMat& A);

// Basis of { x : A x = 0 } over Z (always saturated), as columns.
std::vector<IntVec> kernel_basis(const IntMat& A);

// Integral solution of A x = v if one exists, reduced to the canonical
// representative modulo ker A: each kernel generator, taken in column-HNF
// order, reduces the solution entry at its pivot position into [0, pivot).
std::optional<IntVec> solve_integral(const IntMat& A, const IntVec& v);

struct SublatticeBasis {
  size_t ambient_rank = 0;
  std::vector<IntVec> basis;  // linearly independent over Q
};

// Z-span of all ambient lattice points in the Q-span of S; same rank.
SublatticeBasis saturate(const SublatticeBasis& S);

// Index of S inside its saturation = product of elementary divisors;
// requires independent basis.
Int sublattice_index_in_saturation(const SublatticeBasis& S);

// True iff every maximal minor has determinant in {-1, 0, 1}.
bool is_unimodular(const IntMat& A);

// All g x g minor determinants (g = rows), in lexicographic column-subset
// order; requires cols >= rows.
std::vector<Int> maximal_minors(const IntMat& A);

// Positive semi-definiteness for symmetric rational matrices, exact
// (eigenvalue-free, via elimination with pivot sign inspection).
bool is_positive_semidefinite(const RatMat& B);
bool is_positive_definite(const RatMat& B);

// All m in Z^g with (1/2) m^T B m + <L, m> + c <= T, for positive-definite B.
// Exact: complete the square, box-bound each coordinate via B^{-1}, filter.
std::vector<IntVec> quadratic_sublevel_points(const RatMat& B, const RatVec& L, const Rat& c,
                                              const Rat& T);

}  // namespace mumford
