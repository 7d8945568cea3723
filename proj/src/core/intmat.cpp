#include "intmat.hpp"

#include <algorithm>
#include <functional>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace mumford {

Rat parse_rat(const std::string& s) {
  auto bad = [&]() { throw std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) bad();
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) bad();
    return Rat(n) / Rat(d);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat(0);
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g == 0) return v;
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVec primitive(const RatVec& v) {
  Int l = 1;
  for (const Rat& q : v) l = lcm(l, den(q));
  IntVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (l / den(v[i]));
  return primitive(w);
}

IntVec primitive_signed(const RatVec& v) {
  IntVec p = primitive(v);
  for (const Int& x : p) {
    if (x != 0) {
      if (x < 0)
        for (Int& y : p) y = -y;
      break;
    }
  }
  return p;
}

IntVec to_int_checked(const RatVec& v) {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (den(v[i]) != 1) throw std::invalid_argument("expected integral vector");
    r[i] = num(v[i]);
  }
  return r;
}

IntMat IntMat::identity(size_t n) {
  IntMat m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return IntMat(0, 0);
  IntMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cols) {
  if (cols.empty()) return IntMat(0, 0);
  IntMat m(cols[0].size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
  return m;
}

IntVec IntMat::row(size_t i) const {
  IntVec r(cols);
  for (size_t j = 0; j < cols; ++j) r[j] = at(i, j);
  return r;
}

IntVec IntMat::col(size_t j) const {
  IntVec c(rows);
  for (size_t i = 0; i < rows; ++i) c[i] = at(i, j);
  return c;
}

IntMat IntMat::transpose() const {
  IntMat t(cols, rows);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntVec IntMat::mul(const IntVec& v) const {
  assert(v.size() == cols);
  IntVec r(rows, Int(0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
  return r;
}

IntMat IntMat::mul(const IntMat& o) const {
  assert(cols == o.rows);
  IntMat r(rows, o.cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (size_t j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

bool IntMat::is_symmetric() const {
  if (rows != cols) return false;
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = i + 1; j < cols; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool IntMat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

IntMat add(const IntMat& x, const IntMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

IntMat scale(const IntMat& x, const Int& c) {
  IntMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * c;
  return r;
}

RatVec RatMat::mul(const RatVec& v) const {
  assert(v.size() == cols);
  RatVec r(rows, Rat(0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
  return r;
}

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

RatMat add(const RatMat& x, const RatMat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  RatMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

RatMat scale(const RatMat& x, const Rat& c) {
  RatMat r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] * c;
  return r;
}

RatMat inverse(const RatMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = m.rows;
  RatMat a = m, inv(n, n);
  for (size_t i = 0; i < n; ++i) inv.at(i, i) = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) throw std::invalid_argument("singular matrix");
    if (p != c)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a.at(p, j), a.at(c, j));
        std::swap(inv.at(p, j), inv.at(c, j));
      }
    Rat piv = a.at(c, c);
    for (size_t j = 0; j < n; ++j) {
      a.at(c, j) /= piv;
      inv.at(c, j) /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(c, j);
        inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

Rat det(const RatMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows;
  RatMat a = m;
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (size_t j = c; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
      d = -d;
    }
    d *= a.at(c, c);
    Rat piv = a.at(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      Rat f = a.at(i, c) / piv;
      for (size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return d;
}

Int det(const IntMat& m) {
  Rat d = det(to_rat(m));
  assert(den(d) == 1);
  return num(d);
}

namespace {

// Shared elimination engine: reduces A in place towards Smith form while
// accumulating the row operations in U and column operations in V.
struct SmithWorker {
  IntMat A, U, V;

  explicit SmithWorker(const IntMat& a)
      : A(a), U(IntMat::identity(a.rows)), V(IntMat::identity(a.cols)) {}

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
    for (size_t c = 0; c < U.cols; ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void swap_cols(size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < A.rows; ++r) std::swap(A.at(r, i), A.at(r, j));
    for (size_t r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
  }
  void add_row(size_t dst, size_t src, const Int& f) {  // row dst += f * row src
    if (f == 0) return;
    for (size_t c = 0; c < A.cols; ++c) A.at(dst, c) += f * A.at(src, c);
    for (size_t c = 0; c < U.cols; ++c) U.at(dst, c) += f * U.at(src, c);
  }
  void add_col(size_t dst, size_t src, const Int& f) {
    if (f == 0) return;
    for (size_t r = 0; r < A.rows; ++r) A.at(r, dst) += f * A.at(r, src);
    for (size_t r = 0; r < V.rows; ++r) V.at(r, dst) += f * V.at(r, src);
  }
  void negate_row(size_t i) {
    for (size_t c = 0; c < A.cols; ++c) A.at(i, c) = -A.at(i, c);
    for (size_t c = 0; c < U.cols; ++c) U.at(i, c) = -U.at(i, c);
  }
  void negate_col(size_t j) {
    for (size_t r = 0; r < A.rows; ++r) A.at(r, j) = -A.at(r, j);
    for (size_t r = 0; r < V.rows; ++r) V.at(r, j) = -V.at(r, j);
  }

  // Brings the submatrix with corner (k,k) to diagonal form at (k,k).
  bool diagonalize_at(size_t k) {
    // Locate the entry of least absolute value in the remaining block.
    size_t bi = k, bj = k;
    Int best = 0;
    for (size_t i = k; i < A.rows; ++i)
      for (size_t j = k; j < A.cols; ++j) {
        const Int& x = A.at(i, j);
        if (x == 0) continue;
        if (best == 0 || abs(x) < best) {
          best = abs(x);
          bi = i;
          bj = j;
        }
      }
    if (best == 0) return false;
    swap_rows(k, bi);
    swap_cols(k, bj);

    for (;;) {
      bool clean = true;
      for (size_t i = k + 1; i < A.rows; ++i) {
        if (A.at(i, k) == 0) continue;
        Int q = floor_div(A.at(i, k), A.at(k, k));
        add_row(i, k, -q);
        if (A.at(i, k) != 0) {  // remainder smaller than pivot: promote it
          swap_rows(k, i);
          clean = false;
        }
      }
      for (size_t j = k + 1; j < A.cols; ++j) {
        if (A.at(k, j) == 0) continue;
        Int q = floor_div(A.at(k, j), A.at(k, k));
        add_col(j, k, -q);
        if (A.at(k, j) != 0) {
          swap_cols(k, j);
          clean = false;
        }
      }
      if (clean) break;
    }
    if (A.at(k, k) < 0) negate_row(k);
    return true;
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& A) {
  SmithWorker w(A);
  size_t n = std::min(A.rows, A.cols);
  for (;;) {
    size_t r = 0;
    for (; r < n; ++r)
      if (!w.diagonalize_at(r)) break;
    // Enforce the divisibility chain d1 | d2 | ...: fold the first offending
    // pair into one column and rediagonalize.
    bool ok = true;
    for (size_t i = 0; i + 1 < r; ++i) {
      if (w.A.at(i + 1, i + 1) % w.A.at(i, i) != 0) {
        w.add_col(i, i + 1, Int(1));
        ok = false;
        break;
      }
    }
    if (ok) return SmithResult{w.U, w.A, w.V};
  }
}

HermiteResult hermite_normal_form(const IntMat& A) {
  IntMat H = A, V = IntMat::identity(A.cols);
  auto add_col = [&](size_t dst, size_t src, const Int& f) {
    if (f == 0) return;
    for (size_t r = 0; r < H.rows; ++r) H.at(r, dst) += f * H.at(r, src);
    for (size_t r = 0; r < V.rows; ++r) V.at(r, dst) += f * V.at(r, src);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    if (i == j) return;
    for (size_t r = 0; r < H.rows; ++r) std::swap(H.at(r, i), H.at(r, j));
    for (size_t r = 0; r < V.rows; ++r) std::swap(V.at(r, i), V.at(r, j));
  };
  auto negate_col = [&](size_t j) {
    for (size_t r = 0; r < H.rows; ++r) H.at(r, j) = -H.at(r, j);
    for (size_t r = 0; r < V.rows; ++r) V.at(r, j) = -V.at(r, j);
  };

  std::vector<size_t> pivots;
  size_t col = 0;
  for (size_t row = 0; row < A.rows && col < A.cols; ++row) {
    // Clear row `row` to the right of `col` by gcd chaining.
    for (;;) {
      size_t p = col;
      Int best = 0;
      for (size_t j = col; j < A.cols; ++j) {
        const Int& x = H.at(row, j);
        if (x == 0) continue;
        if (best == 0 || abs(x) < best) {
          best = abs(x);
          p = j;
        }
      }
      if (best == 0) break;
      swap_cols(col, p);
      bool done = true;
      for (size_t j = col + 1; j < A.cols; ++j) {
        if (H.at(row, j) == 0) continue;
        Int q = floor_div(H.at(row, j), H.at(row, col));
        add_col(j, col, -q);
        if (H.at(row, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H.at(row, col) == 0) continue;
    if (H.at(row, col) < 0) negate_col(col);
    // Reduce earlier pivot columns against this one is not needed in the
    // column echelon convention; reduce entries to the LEFT of the pivot row
    // in later columns is done above. Normalize entries left of pivot:
    for (size_t j = 0; j < col; ++j) {
      Int q = floor_div(H.at(row, j), H.at(row, col));
      add_col(j, col, -q);
    }
    pivots.push_back(row);
    ++col;
  }
  return HermiteResult{H, V, pivots};
}

size_t rank(const IntMat& A) {
  if (A.rows == 0 || A.cols == 0) return 0;
  RatMat m = to_rat(A);
  size_t rk = 0;
  size_t row = 0;
  for (size_t c = 0; c < m.cols && row < m.rows; ++c) {
    size_t p = row;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
    Rat piv = m.at(row, c);
    for (size_t i = row + 1; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) / piv;
      for (size_t j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    ++row;
    ++rk;
  }
  return rk;
}

std::vector<IntVec> kernel_basis(const IntMat& A) {
  // Columns of V corresponding to zero columns of H in A*V = H.
  HermiteResult h = hermite_normal_form(A);
  std::vector<IntVec> out;
  for (size_t j = 0; j < A.cols; ++j) {
    bool zero = true;
    for (size_t i = 0; i < A.rows; ++i)
      if (h.H.at(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) out.push_back(h.V.col(j));
  }
  return out;
}

std::optional<IntVec> solve_integral(const IntMat& A, const IntVec& v) {
  if (v.size() != A.rows) throw std::invalid_argument("solve_integral: size mismatch");
  HermiteResult h = hermite_normal_form(A);
  size_t npiv = h.pivot_rows.size();
  // Solve H y = v using the column-echelon structure.
  IntVec y(A.cols, Int(0));
  IntVec rem = v;
  for (size_t j = 0; j < npiv; ++j) {
    size_t pr = h.pivot_rows[j];
    const Int& piv = h.H.at(pr, j);
    if (rem[pr] % piv != 0) return std::nullopt;
    Int c = rem[pr] / piv;
    y[j] = c;
    if (c != 0)
      for (size_t i = 0; i < A.rows; ++i) rem[i] -= c * h.H.at(i, j);
  }
  if (!is_zero(rem)) return std::nullopt;
  IntVec x = h.V.mul(y);

  // Canonical representative modulo the kernel, in HNF coordinates: with the
  // kernel in column HNF taken from the bottom coordinate up, reduce the
  // solution entry at each pivot position into [0, pivot).
  std::vector<IntVec> ker = kernel_basis(A);
  if (!ker.empty()) {
    size_t n = A.cols;
    IntMat K(n, ker.size());
    for (size_t j = 0; j < ker.size(); ++j)
      for (size_t i = 0; i < n; ++i) K.at(i, j) = ker[j][n - 1 - i];  // reversed rows
    HermiteResult kh = hermite_normal_form(K);
    for (size_t j = 0; j < kh.pivot_rows.size(); ++j) {
      size_t pr = n - 1 - kh.pivot_rows[j];  // pivot position in original order
      const Int& piv = kh.H.at(kh.pivot_rows[j], j);
      Int q = floor_div(x[pr], piv);
      if (q != 0)
        for (size_t i = 0; i < n; ++i) x[i] -= q * kh.H.at(n - 1 - i, j);
    }
  }
  return x;
}

SublatticeBasis saturate(const SublatticeBasis& S) {
  if (S.basis.empty()) return S;
  IntMat A = IntMat::from_cols(S.basis);
  SmithResult s = smith_normal_form(A);
  size_t r = 0;
  size_t n = std::min(A.rows, A.cols);
  for (size_t i = 0; i < n; ++i)
    if (s.D.at(i, i) != 0) ++r;
  // A = U^{-1} D V^{-1}; the saturation is spanned by the first r columns of
  // U^{-1}, i.e. the preimages of the standard basis under U.
  RatMat Uinv = inverse(to_rat(s.U));
  SublatticeBasis out;
  out.ambient_rank = S.ambient_rank;
  for (size_t j = 0; j < r; ++j) {
    RatVec c(A.rows);
    for (size_t i = 0; i < A.rows; ++i) c[i] = Uinv.at(i, j);
    out.basis.push_back(to_int_checked(c));
  }
  return out;
}

Int sublattice_index_in_saturation(const SublatticeBasis& S) {
  if (S.basis.empty()) return Int(1);
  IntMat A = IntMat::from_cols(S.basis);
  SmithResult s = smith_normal_form(A);
  Int idx = 1;
  size_t n = std::min(A.rows, A.cols);
  for (size_t i = 0; i < n; ++i)
    if (s.D.at(i, i) != 0) idx *= s.D.at(i, i);
  return idx;
}

std::vector<Int> maximal_minors(const IntMat& A) {
  if (A.cols < A.rows) throw std::invalid_argument("maximal_minors: need cols >= rows");
  size_t g = A.rows, k = A.cols;
  std::vector<Int> out;
  std::vector<size_t> idx(g);
  for (size_t i = 0; i < g; ++i) idx[i] = i;
  for (;;) {
    RatMat sub(g, g);
    for (size_t i = 0; i < g; ++i)
      for (size_t j = 0; j < g; ++j) sub.at(i, j) = Rat(A.at(i, idx[j]));
    out.push_back(num(det(sub)));
    // next combination
    size_t i = g;
    while (i-- > 0) {
      if (idx[i] != i + k - g) {
        ++idx[i];
        for (size_t j = i + 1; j < g; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

bool is_unimodular(const IntMat& A) {
  if (A.rows > A.cols) return is_unimodular(A.transpose());
  for (const Int& m : maximal_minors(A))
    if (m < -1 || m > 1) return false;
  return true;
}

bool is_positive_semidefinite(const RatMat& B) {
  if (B.rows != B.cols) return false;
  // Symmetric Gaussian elimination: at each step the pivot must be >= 0, and
  // a zero pivot forces its whole row/column to vanish.
  RatMat a = B;
  size_t n = B.rows;
  std::vector<bool> done(n, false);
  for (size_t step = 0; step < n; ++step) {
    size_t p = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && a.at(i, i) != 0) {
        p = i;
        break;
      }
    if (p == n) {
      // All remaining diagonal entries are zero; off-diagonals must be too.
      for (size_t i = 0; i < n; ++i)
        if (!done[i])
          for (size_t j = 0; j < n; ++j)
            if (!done[j] && a.at(i, j) != 0) return false;
      return true;
    }
    if (a.at(p, p) < 0) return false;
    Rat piv = a.at(p, p);
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || i == p || a.at(i, p) == 0) continue;
      Rat f = a.at(i, p) / piv;
      for (size_t j = 0; j < n; ++j)
        if (!done[j]) a.at(i, j) -= f * a.at(p, j);
    }
    done[p] = true;
  }
  return true;
}

bool is_positive_definite(const RatMat& B) {
  if (B.rows != B.cols) return false;
  if (!is_positive_semidefinite(B)) return false;
  return det(B) != 0;
}

std::vector<IntVec> quadratic_sublevel_points(const RatMat& B, const RatVec& L, const Rat& c,
                                              const Rat& T) {
  size_t g = B.rows;
  if (!is_positive_definite(B)) throw std::invalid_argument("sublevel enumeration needs B > 0");
  RatMat Binv = inverse(B);
  // Center: m0 = -B^{-1} L; constant after completing the square.
  RatVec m0 = Binv.mul(L);
  for (Rat& q : m0) q = -q;
  Rat c0 = c;
  for (size_t i = 0; i < g; ++i) c0 -= Rat(1, 2) * m0[i] * B.mul(m0)[i];
  // f(m) = 1/2 (m-m0)^T B (m-m0) + c0; need f <= T.
  Rat r2 = T - c0;
  std::vector<IntVec> out;
  if (r2 < 0) return out;

  auto value = [&](const IntVec& m) {
    RatVec d(g);
    for (size_t i = 0; i < g; ++i) d[i] = Rat(m[i]) - m0[i];
    Rat s = 0;
    RatVec bd = B.mul(d);
    for (size_t i = 0; i < g; ++i) s += d[i] * bd[i];
    return Rat(1, 2) * s + c0;
  };

  // |e_i . (m - m0)|^2 <= 2 r2 * (B^{-1})_ii  (Cauchy-Schwarz in the B-norm).
  std::vector<Int> lo(g), hi(g);
  for (size_t i = 0; i < g; ++i) {
    Rat rad2 = 2 * r2 * Binv.at(i, i);
    Int s = isqrt_ceil(rad2);
    lo[i] = ceil_rat(m0[i] - Rat(s));
    hi[i] = floor_rat(m0[i] + Rat(s));
  }
  IntVec m(g);
  // Odometer over the box.
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == g) {
      if (value(m) <= T) out.push_back(m);
      return;
    }
    for (Int v = lo[i]; v <= hi[i]; ++v) {
      m[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace mumford
