#include <doctest.h>

#include "core/intmat.hpp"

using namespace mumford;

namespace {

IntMat mat(size_t r, size_t c, std::vector<int> e) {
  IntMat m(r, c);
  for (size_t i = 0; i < e.size(); ++i) m.a[i] = e[i];
  return m;
}

bool is_diagonal(const IntMat& d) {
  for (size_t i = 0; i < d.rows; ++i)
    for (size_t j = 0; j < d.cols; ++j)
      if (i != j && d.at(i, j) != 0) return false;
  return true;
}

void check_snf(const IntMat& a) {
  SmithResult s = smith_normal_form(a);
  CHECK(s.U.mul(a).mul(s.V) == s.D);
  CHECK(is_diagonal(s.D));
  Int du = det(s.U), dv = det(s.V);
  CHECK((du == 1 || du == -1));
  CHECK((dv == 1 || dv == -1));
  size_t n = std::min(a.rows, a.cols);
  for (size_t i = 0; i + 1 < n; ++i) {
    if (s.D.at(i + 1, i + 1) == 0) break;
    CHECK(s.D.at(i, i) != 0);
    CHECK(s.D.at(i + 1, i + 1) % s.D.at(i, i) == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form: identity") {
  IntMat id = IntMat::identity(2);
  SmithResult s = smith_normal_form(id);
  CHECK(s.D == id);
  check_snf(id);
}

TEST_CASE("smith normal form: theta graph rep") {
  IntMat a = mat(2, 3, {1, 0, 1, 0, 1, 1});
  SmithResult s = smith_normal_form(a);
  CHECK(s.D.at(0, 0) == 1);
  CHECK(s.D.at(1, 1) == 1);
  CHECK(s.D.at(0, 1) == 0);
  CHECK(s.D.at(0, 2) == 0);
  CHECK(s.D.at(1, 2) == 0);
  check_snf(a);
}

TEST_CASE("smith normal form: gcd/lcm on diagonal") {
  IntMat a = mat(2, 2, {2, 0, 0, 3});
  SmithResult s = smith_normal_form(a);
  CHECK(s.D.at(0, 0) == 1);
  CHECK(s.D.at(1, 1) == 6);
  check_snf(a);
}

TEST_CASE("smith normal form: random property sweep") {
  // Small deterministic pseudo-random matrices.
  uint64_t state = 12345;
  auto rnd = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return (int)((state >> 33) % 11) - 5;
  };
  for (int rep = 0; rep < 40; ++rep) {
    size_t r = 1 + rep % 4, c = 1 + (rep / 2) % 4;
    IntMat a(r, c);
    for (auto& x : a.a) x = rnd();
    check_snf(a);
  }
}

TEST_CASE("saturate") {
  SUBCASE("full-rank finite index") {
    SublatticeBasis s{2, {{Int(2), Int(0)}, {Int(0), Int(2)}}};
    SublatticeBasis t = saturate(s);
    REQUIRE(t.basis.size() == 2);
    IntMat m = IntMat::from_cols(t.basis);
    Int d = det(m);
    CHECK((d == 1 || d == -1));
    CHECK(sublattice_index_in_saturation(s) == 4);
  }
  SUBCASE("already saturated") {
    SublatticeBasis s{2, {{Int(1), Int(0)}}};
    SublatticeBasis t = saturate(s);
    REQUIRE(t.basis.size() == 1);
    CHECK(primitive(t.basis[0]) == IntVec{Int(1), Int(0)});
    CHECK(sublattice_index_in_saturation(s) == 1);
  }
  SUBCASE("divide by gcd") {
    SublatticeBasis s{2, {{Int(2), Int(4)}}};
    SublatticeBasis t = saturate(s);
    REQUIRE(t.basis.size() == 1);
    IntVec p = t.basis[0];
    if (p[0] < 0) p = neg(p);
    CHECK(p == IntVec{Int(1), Int(2)});
    CHECK(sublattice_index_in_saturation(s) == 2);
  }
  SUBCASE("idempotent") {
    SublatticeBasis s{3, {{Int(2), Int(4), Int(6)}, {Int(0), Int(3), Int(3)}}};
    SublatticeBasis t = saturate(s);
    SublatticeBasis t2 = saturate(t);
    CHECK(sublattice_index_in_saturation(t) == 1);
    CHECK(t2.basis.size() == t.basis.size());
  }
}

TEST_CASE("solve_integral") {
  SUBCASE("identity") {
    IntMat a = IntMat::identity(3);
    IntVec v{Int(5), Int(-2), Int(7)};
    auto x = solve_integral(a, v);
    REQUIRE(x.has_value());
    CHECK(*x == v);
  }
  SUBCASE("parity obstruction") {
    IntMat a = mat(1, 1, {2});
    auto x = solve_integral(a, {Int(3)});
    CHECK(!x.has_value());
  }
  SUBCASE("documented tie-break") {
    IntMat a = mat(2, 3, {1, 0, 1, 0, 1, 1});
    auto x = solve_integral(a, {Int(1), Int(1)});
    REQUIRE(x.has_value());
    CHECK(a.mul(*x) == IntVec{Int(1), Int(1)});
    CHECK(*x == IntVec{Int(1), Int(1), Int(0)});
  }
  SUBCASE("brute force agreement on solvability") {
    uint64_t state = 999;
    auto rnd = [&]() {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      return (int)((state >> 33) % 7) - 3;
    };
    for (int rep = 0; rep < 30; ++rep) {
      IntMat a(2, 2);
      for (auto& e : a.a) e = rnd();
      IntVec v{Int(rnd()), Int(rnd())};
      auto x = solve_integral(a, v);
      bool brute = false;
      for (int p = -12; p <= 12 && !brute; ++p)
        for (int q = -12; q <= 12 && !brute; ++q)
          if (a.mul(IntVec{Int(p), Int(q)}) == v) brute = true;
      if (x.has_value()) {
        CHECK(a.mul(*x) == v);
      } else {
        CHECK(!brute);
      }
    }
  }
}

TEST_CASE("kernel basis is saturated and correct") {
  IntMat a = mat(2, 3, {1, 0, 1, 0, 1, 1});
  auto k = kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(is_zero(a.mul(k[0])));
  IntVec p = primitive(k[0]);
  CHECK((p == IntVec{Int(1), Int(1), Int(-1)} || p == IntVec{Int(-1), Int(-1), Int(1)}));
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(mat(2, 3, {1, 0, 1, 0, 1, 1})));
  CHECK(!is_unimodular(mat(2, 2, {1, 1, -1, 1})));
}

TEST_CASE("positive (semi)definiteness") {
  RatMat b(2, 2);
  b.at(0, 0) = 4;
  b.at(0, 1) = 1;
  b.at(1, 0) = 1;
  b.at(1, 1) = 3;
  CHECK(is_positive_definite(b));
  RatMat z(2, 2);
  z.at(0, 0) = 1;
  z.at(0, 1) = 1;
  z.at(1, 0) = 1;
  z.at(1, 1) = 1;
  CHECK(is_positive_semidefinite(z));
  CHECK(!is_positive_definite(z));
  RatMat n(2, 2);
  n.at(0, 0) = 1;
  n.at(0, 1) = 2;
  n.at(1, 0) = 2;
  n.at(1, 1) = 1;
  CHECK(!is_positive_semidefinite(n));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rat("3/4") == Rat(3) / 4);
  CHECK(parse_rat("-2") == Rat(-2));
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
}
