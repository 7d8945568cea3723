#include "monodromy.hpp"

#include <functional>
#include <stdexcept>

namespace mumford {

SymplecticLattice SymplecticLattice::standard(size_t g) {
  SymplecticLattice out;
  out.g = g;
  out.pairing = IntMat(2 * g, 2 * g);
  for (size_t i = 0; i < g; ++i) {
    out.pairing.at(i, g + i) = 1;
    out.pairing.at(g + i, i) = -1;
  }
  return out;
}

void SymplecticLattice::validate() const {
  if (pairing.rows != 2 * g || pairing.cols != 2 * g)
    throw std::invalid_argument("pairing must be 2g x 2g");
  for (size_t i = 0; i < 2 * g; ++i)
    for (size_t j = 0; j < 2 * g; ++j)
      if (pairing.at(i, j) != -pairing.at(j, i))
        throw std::invalid_argument("pairing must be antisymmetric");
  Int dt = det(pairing);
  if (dt != 1 && dt != -1) throw std::invalid_argument("pairing must be unimodular");
}

namespace {

void validate_system(const std::vector<IntMat>& Ns) {
  if (Ns.empty()) throw std::invalid_argument("need at least one operator");
  size_t n = Ns[0].rows;
  for (const IntMat& N : Ns) {
    if (N.rows != n || N.cols != n) throw std::invalid_argument("operator size mismatch");
    if (!N.mul(N).is_zero()) throw std::invalid_argument("operator does not square to zero");
  }
  for (size_t i = 0; i < Ns.size(); ++i)
    for (size_t j = i + 1; j < Ns.size(); ++j)
      if (!(Ns[i].mul(Ns[j]) == Ns[j].mul(Ns[i])))
        throw std::invalid_argument("operators do not commute");
}

IntMat weighted_sum(const std::vector<IntMat>& Ns, const std::vector<Int>& r) {
  IntMat N(Ns[0].rows, Ns[0].cols);
  for (size_t i = 0; i < Ns.size(); ++i) N = add(N, scale(Ns[i], r[i]));
  return N;
}

// Canonical form of a sublattice for equality testing.
std::vector<IntVec> canonical_lattice(const std::vector<IntVec>& basis) {
  if (basis.empty()) return {};
  HermiteResult h = hermite_normal_form(IntMat::from_cols(basis));
  std::vector<IntVec> out;
  for (size_t j = 0; j < h.pivot_rows.size(); ++j) out.push_back(h.H.col(j));
  return out;
}

struct Filtration {
  std::vector<IntVec> w2, w1;
};

Filtration filtration_of(const IntMat& N) {
  Filtration f;
  // W_-2 = saturation of the column span of N.
  std::vector<IntVec> cols;
  for (size_t j = 0; j < N.cols; ++j) {
    IntVec c = N.col(j);
    if (!is_zero(c)) cols.push_back(c);
  }
  if (!cols.empty()) {
    SublatticeBasis span{N.rows, cols};
    // Reduce to an independent subset first.
    std::vector<IntVec> indep;
    for (const IntVec& c : cols) {
      indep.push_back(c);
      if (rank(IntMat::from_cols(indep)) != indep.size()) indep.pop_back();
    }
    f.w2 = saturate(SublatticeBasis{N.rows, indep}).basis;
  }
  f.w1 = kernel_basis(N);
  return f;
}

}  // namespace

WeightFiltration weight_filtration(const std::vector<IntMat>& Ns) {
  validate_system(Ns);
  size_t n = Ns[0].rows;
  std::vector<Int> ones(Ns.size(), Int(1));
  Filtration f = filtration_of(weighted_sum(Ns, ones));

  // The filtration must not depend on the positive weights.
  std::vector<std::vector<Int>> samples;
  std::vector<Int> r1, r2;
  for (size_t i = 0; i < Ns.size(); ++i) {
    r1.push_back(Int(1 + (int)((3 * i + 1) % 5)));
    r2.push_back(Int(1 + (int)((7 * i + 2) % 11)));
  }
  for (const auto& r : {r1, r2}) {
    Filtration g = filtration_of(weighted_sum(Ns, r));
    if (canonical_lattice(g.w2) != canonical_lattice(f.w2) ||
        canonical_lattice(g.w1) != canonical_lattice(f.w1))
      throw std::invalid_argument("weight filtration depends on the positive weights");
  }

  WeightFiltration out;
  out.rank = n;
  out.w_minus2 = SublatticeBasis{n, f.w2};
  out.w_minus1 = SublatticeBasis{n, f.w1};
  return out;
}

bool is_maximal(const std::vector<IntMat>& Ns) {
  WeightFiltration w = weight_filtration(Ns);
  return w.w_minus2.basis.size() == w.w_minus1.basis.size();
}

MonodromyForms monodromy_forms(const std::vector<IntMat>& Ns, const SymplecticLattice& lat) {
  validate_system(Ns);
  lat.validate();
  WeightFiltration w = weight_filtration(Ns);
  if (w.w_minus2.basis.size() != w.w_minus1.basis.size())
    throw std::invalid_argument("monodromy forms require a maximal degeneration");
  size_t n = w.rank;
  size_t r = n - w.w_minus1.basis.size();

  // Fixed complement of W_-1: the last r columns of U^{-1} from the Smith
  // decomposition of the kernel basis.
  std::vector<IntVec> comp;
  if (w.w_minus1.basis.empty()) {
    for (size_t i = 0; i < n; ++i) {
      IntVec e(n, Int(0));
      e[i] = 1;
      comp.push_back(e);
    }
  } else {
    IntMat K = IntMat::from_cols(w.w_minus1.basis);
    SmithResult s = smith_normal_form(K);
    RatMat Uinv = inverse(to_rat(s.U));
    for (size_t j = n - r; j < n; ++j) {
      RatVec col(n);
      for (size_t i = 0; i < n; ++i) col[i] = Uinv.at(i, j);
      comp.push_back(to_int_checked(col));
    }
  }

  MonodromyForms out;
  out.basis = comp;
  out.positive_semidefinite = true;
  for (const IntMat& N : Ns) {
    // Descent: L(N w, v) must vanish for w in W_-1. (L(u, v) = u . (J v).)
    for (const IntVec& wv : w.w_minus1.basis) {
      IntVec nw = N.mul(wv);
      for (const IntVec& c : comp)
        if (dot(nw, lat.pairing.mul(c)) != 0)
          throw std::invalid_argument("form does not descend to gr^W_0");
    }
    IntMat B(r, r);
    for (size_t a = 0; a < r; ++a)
      for (size_t b = 0; b < r; ++b) B.at(a, b) = dot(N.mul(comp[a]), lat.pairing.mul(comp[b]));
    if (!B.is_symmetric())
      throw std::invalid_argument("monodromy form fails symmetry (invalid input)");
    if (!is_positive_semidefinite(to_rat(B))) out.positive_semidefinite = false;
    out.forms.push_back(std::move(B));
  }
  return out;
}

std::vector<size_t> greedy_spanning_forest(const Graph& g) {
  std::vector<size_t> parent(g.vertices);
  for (size_t i = 0; i < g.vertices; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<size_t> forest;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    size_t a = find(g.edges[e].first), b = find(g.edges[e].second);
    if (a == b) continue;
    parent[a] = b;
    forest.push_back(e);
  }
  return forest;
}

std::vector<IntMat> graph_vanishing_forms(const Graph& g) {
  // Fundamental cycles of the greedy forest span H_1(G, Z); the form of edge
  // i evaluates a cycle to the square of its edge-i coefficient.
  std::vector<size_t> forest = greedy_spanning_forest(g);
  MatroidRep rep = cographic_rep(g, forest);
  std::vector<IntMat> out;
  for (size_t i = 0; i < rep.ground_size; ++i) {
    IntVec x = rep.columns.col(i);
    IntMat B(rep.rank_ambient, rep.rank_ambient);
    for (size_t a = 0; a < rep.rank_ambient; ++a)
      for (size_t b = 0; b < rep.rank_ambient; ++b) B.at(a, b) = x[a] * x[b];
    out.push_back(std::move(B));
  }
  return out;
}

}  // namespace mumford
