#include <doctest.h>

#include "core/monodromy.hpp"
#include "core/mumford_data.hpp"

using namespace mumford;

namespace {

// N x = L(gamma, x) gamma on the standard symplectic lattice.
IntMat dehn_twist(const SymplecticLattice& lat, const IntVec& gamma) {
  size_t n = 2 * lat.g;
  IntMat N(n, n);
  // Column j of N is L(gamma, e_j) * gamma, with L(u, v) = u . (J v).
  for (size_t j = 0; j < n; ++j) {
    IntVec ej(n, Int(0));
    ej[j] = 1;
    Int c = dot(gamma, lat.pairing.mul(ej));
    for (size_t i = 0; i < n; ++i) N.at(i, j) = c * gamma[i];
  }
  return N;
}

IntMat standard_unipotent_log(const IntMat& B) {
  size_t g = B.rows;
  IntMat N(2 * g, 2 * g);
  for (size_t i = 0; i < g; ++i)
    for (size_t j = 0; j < g; ++j) N.at(i, g + j) = B.at(i, j);
  return N;
}

}  // namespace

TEST_CASE("weight filtration of a maximal g=1 degeneration") {
  IntMat N(2, 2, {Int(0), Int(1), Int(0), Int(0)});
  WeightFiltration w = weight_filtration({N});
  REQUIRE(w.w_minus2.basis.size() == 1);
  REQUIRE(w.w_minus1.basis.size() == 1);
  CHECK(primitive(w.w_minus2.basis[0]) == IntVec{Int(1), Int(0)});
  CHECK(primitive(w.w_minus1.basis[0]) == IntVec{Int(1), Int(0)});
  CHECK(is_maximal({N}));
}

TEST_CASE("zero monodromy is not maximal") {
  IntMat N(4, 4);
  WeightFiltration w = weight_filtration({N});
  CHECK(w.w_minus2.basis.empty());
  CHECK(w.w_minus1.basis.size() == 4);
  CHECK(!is_maximal({N}));
}

TEST_CASE("a single rank-1 twist in g=2 is not maximal") {
  SymplecticLattice lat = SymplecticLattice::standard(2);
  IntMat N = dehn_twist(lat, {Int(1), Int(0), Int(0), Int(0)});
  CHECK(!is_maximal({N}));
}

TEST_CASE("invalid systems are rejected") {
  IntMat bad(2, 2, {Int(1), Int(0), Int(0), Int(0)});
  CHECK_THROWS_AS(weight_filtration({bad}), std::invalid_argument);
  // Non-commuting square-zero pair.
  IntMat a(3, 3), b(3, 3);
  a.at(0, 1) = 1;
  b.at(1, 2) = 1;
  CHECK_THROWS_AS(weight_filtration({a, b}), std::invalid_argument);
}

TEST_CASE("standard unipotent blocks recover their Gram matrices") {
  SymplecticLattice lat = SymplecticLattice::standard(2);
  IntMat B1(2, 2, {Int(1), Int(0), Int(0), Int(0)});
  IntMat B2(2, 2, {Int(0), Int(0), Int(0), Int(1)});
  IntMat B3(2, 2, {Int(1), Int(1), Int(1), Int(1)});
  std::vector<IntMat> Ns = {standard_unipotent_log(B1), standard_unipotent_log(B2),
                            standard_unipotent_log(B3)};
  CHECK(is_maximal(Ns));
  MonodromyForms mf = monodromy_forms(Ns, lat);
  CHECK(mf.positive_semidefinite);
  REQUIRE(mf.forms.size() == 3);
  CHECK(mf.forms[0] == B1);
  CHECK(mf.forms[1] == B2);
  CHECK(mf.forms[2] == B3);
}

TEST_CASE("theta-graph Dehn twists give the matroidal forms") {
  SymplecticLattice lat = SymplecticLattice::standard(2);
  // Vanishing cycles e1, e2, e1 + e2.
  std::vector<IntMat> Ns = {
      dehn_twist(lat, {Int(1), Int(0), Int(0), Int(0)}),
      dehn_twist(lat, {Int(0), Int(1), Int(0), Int(0)}),
      dehn_twist(lat, {Int(1), Int(1), Int(0), Int(0)}),
  };
  CHECK(is_maximal(Ns));
  WeightFiltration w = weight_filtration(Ns);
  CHECK(w.w_minus2.basis.size() == 2);
  MonodromyForms mf = monodromy_forms(Ns, lat);
  CHECK(mf.positive_semidefinite);
  IntMat B1(2, 2, {Int(1), Int(0), Int(0), Int(0)});
  IntMat B2(2, 2, {Int(0), Int(0), Int(0), Int(1)});
  IntMat B3(2, 2, {Int(1), Int(1), Int(1), Int(1)});
  CHECK(mf.forms[0] == B1);
  CHECK(mf.forms[1] == B2);
  CHECK(mf.forms[2] == B3);
}

TEST_CASE("conjugation covariance under the parabolic") {
  SymplecticLattice lat = SymplecticLattice::standard(2);
  IntMat B3(2, 2, {Int(1), Int(1), Int(1), Int(1)});
  IntMat B1(2, 2, {Int(2), Int(1), Int(1), Int(1)});
  std::vector<IntMat> Ns = {standard_unipotent_log(B1), standard_unipotent_log(B3)};
  // M = block diag(A, A^{-T}) for A in GL_2(Z).
  IntMat A(2, 2, {Int(1), Int(1), Int(0), Int(1)});
  IntMat Ainv(2, 2, {Int(1), Int(-1), Int(0), Int(1)});
  IntMat M(4, 4), Minv(4, 4);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      M.at(i, j) = A.at(i, j);
      M.at(2 + i, 2 + j) = Ainv.at(j, i);  // A^{-T}
      Minv.at(i, j) = Ainv.at(i, j);
      Minv.at(2 + i, 2 + j) = A.at(j, i);
    }
  std::vector<IntMat> conj;
  for (const IntMat& N : Ns) conj.push_back(Minv.mul(N).mul(M));
  MonodromyForms orig = monodromy_forms(Ns, lat);
  MonodromyForms moved = monodromy_forms(conj, lat);
  // The Levi part acting on gr^W_0 here is A^{-T}.
  IntMat At(2, 2, {Int(1), Int(0), Int(-1), Int(1)});  // (A^{-T})
  for (size_t i = 0; i < Ns.size(); ++i)
    CHECK(moved.forms[i] == At.transpose().mul(orig.forms[i]).mul(At));
}

TEST_CASE("graph vanishing forms of the theta graph") {
  Graph g{2, {{0, 1}, {0, 1}, {1, 0}}};
  auto forms = graph_vanishing_forms(g);
  REQUIRE(forms.size() == 3);
  // Forest = {e0}; fundamental cycles from e1, e2. Same cone as the
  // cographic representation by construction.
  MatroidRep rep = cographic_rep(g, greedy_spanning_forest(g));
  auto cone = matroidal_cone(rep);
  for (size_t i = 0; i < 3; ++i) CHECK(forms[i] == cone[i]);
  for (const IntMat& B : forms) CHECK(is_positive_semidefinite(to_rat(B)));
}

TEST_CASE("graph vanishing forms: tree and loop") {
  Graph tree{3, {{0, 1}, {1, 2}}};
  auto tf = graph_vanishing_forms(tree);
  REQUIRE(tf.size() == 2);
  for (const IntMat& B : tf) CHECK(B.rows == 0);
  Graph loop{1, {{0, 0}}};
  auto lf = graph_vanishing_forms(loop);
  REQUIRE(lf.size() == 1);
  CHECK(lf[0].at(0, 0) == 1);
}

TEST_CASE("mn-identify consistency with the mumford module") {
  // Standard unipotent matrices assembled from the quadratic parts of the
  // theta3 sections give back those same forms.
  MumfordData d;
  d.g = 2;
  d.k = 3;
  d.d = 1;
  PLSection b1(2, Int(1)), b2(2, Int(1)), b3(2, Int(1));
  b1.add_family({Int(1), Int(0)}, Rat(0), Rat(1));
  b2.add_family({Int(0), Int(1)}, Rat(0), Rat(1));
  b3.add_family({Int(1), Int(1)}, Rat(0), Rat(1));
  d.sections = {b1, b2, b3};
  SymplecticLattice lat = SymplecticLattice::standard(2);
  std::vector<IntMat> Ns;
  for (const PLSection& b : d.sections)
    Ns.push_back(standard_unipotent_log(quadratic_part_int(b)));
  MonodromyForms mf = monodromy_forms(Ns, lat);
  for (size_t i = 0; i < 3; ++i) CHECK(mf.forms[i] == quadratic_part_int(d.sections[i]));
  // gr^W_0 rank matches the H1 rank of the dual complex.
  WeightFiltration w = weight_filtration(Ns);
  CHECK(2 * d.g - w.w_minus1.basis.size() == dual_complex(d).h1_rank());
}
