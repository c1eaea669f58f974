#include <random>

#include <catch_amalgamated.hpp>

#include "fanofiber/exact_lp.hpp"
#include "fanofiber/lattice.hpp"
#include "oracles.hpp"

using namespace fanofiber;

namespace {

IntMatrix mat(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_hnf(const IntMatrix& h) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && c <= last_pivot) return false;
    if (h(i, c) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, c) < 0 || h(k, c) >= h(i, c)) return false;
    last_pivot = c;
  }
  return true;
}

}  // namespace

TEST_CASE("checked arithmetic detects overflow") {
  CHECK(checked::add(2, 3) == 5);
  CHECK_THROWS_AS(checked::add(INT64_MAX, 1), Error);
  CHECK_THROWS_AS(checked::mul(INT64_MAX / 2 + 1, 2), Error);
  CHECK_THROWS_AS(checked::narrow(BigInt(INT64_MAX) + 1), Error);
  try {
    checked::mul(INT64_MAX, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("matrix basics") {
  auto m = mat({{1, 2}, {3, 4}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK_THROWS_AS(m.at(2, 0), std::out_of_range);
  CHECK(m * IntMatrix::identity(2) == m);
  CHECK(m.transpose()(0, 1) == 3);
}

TEST_CASE("hnf examples") {
  SECTION("identity") {
    auto r = hnf_decompose(IntMatrix::identity(3));
    CHECK(r.H == IntMatrix::identity(3));
    CHECK(r.U == IntMatrix::identity(3));
  }
  SECTION("already reduced") {
    auto a = mat({{2, 0}, {0, 2}});
    CHECK(hnf_decompose(a).H == a);
  }
  SECTION("[[1,2],[3,4]] by hand") {
    // R2 -= 3 R1 gives [[1,2],[0,-2]]; negate, then reduce 2 above pivot 2 to 0.
    auto r = hnf_decompose(mat({{1, 2}, {3, 4}}));
    CHECK(r.H == mat({{1, 0}, {0, 2}}));
    CHECK(abs(determinant(r.H)) == 2);
    CHECK(r.U * mat({{1, 2}, {3, 4}}) == r.H);
  }
}

TEST_CASE("snf examples") {
  SECTION("zero matrix") {
    IntMatrix z(2, 3);
    auto r = snf_decompose(z);
    CHECK(r.S == z);
    CHECK(r.U == IntMatrix::identity(2));
    CHECK(r.V == IntMatrix::identity(3));
    CHECK(r.invariant_factors().empty());
  }
  SECTION("[[2,4],[6,8]]") {
    // d1 = gcd of entries = 2, d1 * d2 = |det| = 8
    auto r = snf_decompose(mat({{2, 4}, {6, 8}}));
    CHECK(r.invariant_factors() == std::vector<BigInt>{2, 4});
  }
  SECTION("identity") {
    auto r = snf_decompose(IntMatrix::identity(4));
    CHECK(r.invariant_factors() == std::vector<BigInt>(4, 1));
  }
}

TEST_CASE("normal form properties on random matrices") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix a = random_matrix(rng, r, c, -6, 6);
    if (trial % 7 == 0 && r > 1)  // force a dependent row
      for (std::size_t j = 0; j < c; ++j) a(r - 1, j) = 2 * a(0, j);

    const auto h = hnf_decompose(a);
    CHECK(h.U * a == h.H);
    CHECK(abs(determinant(h.U)) == 1);
    CHECK(is_hnf(h.H));

    const auto s = snf_decompose(a);
    CHECK(s.U * a * s.V == s.S);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    const auto f = s.invariant_factors();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1] % f[i] == 0);
    for (std::size_t i = 0; i < s.S.rows(); ++i)
      for (std::size_t j = 0; j < s.S.cols(); ++j)
        if (i != j) CHECK(s.S(i, j) == 0);

    // ranks agree: SNF, HNF nonzero rows, Bareiss, rational rref
    std::size_t hnf_rank = 0;
    for (std::size_t i = 0; i < r; ++i) {
      bool nz = false;
      for (std::size_t j = 0; j < c; ++j) nz |= h.H(i, j) != 0;
      hnf_rank += nz;
    }
    RatMatrix q(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) q(i, j) = Rational(a(i, j));
    const auto rr = rref(q).size();
    CHECK(s.rank() == bareiss_rank(a));
    CHECK(hnf_rank == bareiss_rank(a));
    CHECK(rr == bareiss_rank(a));

    if (r == c) {
      // |det| equals the product of the invariant factors (or 0)
      BigInt prod = 1;
      for (const auto& x : f) prod *= x;
      CHECK(abs(determinant(a)) == (f.size() == r ? prod : BigInt(0)));
    }
  }
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    auto a = random_matrix(rng, n, n, -9, 9);
    std::vector<std::vector<oracle::Int>> rows(n, std::vector<oracle::Int>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    CHECK(determinant(a) == oracle::det(rows));
  }
}

TEST_CASE("positive integer combination") {
  CHECK(positive_integer_combination({1, 1}, {{1, 0}, {0, 1}}) == std::vector<std::int64_t>{1, 1});
  CHECK(positive_integer_combination({2, 0}, {{1, 0}}) == std::vector<std::int64_t>{2});
  try {
    positive_integer_combination({1, 0}, {{2, 0}});
    FAIL("expected NonIntegralSolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegralSolution);
  }
  try {
    positive_integer_combination({-1, 0}, {{1, 0}});
    FAIL("expected NonPositive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositive);
  }
  CHECK_FALSE(positive_integer_combination({0, 1}, {{1, 0}}).has_value());

  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> gens{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}};
    std::vector<std::int64_t> c{1 + int(rng() % 5), 1 + int(rng() % 5), 1 + int(rng() % 5)};
    Point t(3, 0);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) t[i] += c[j] * gens[j][i];
    auto x = positive_integer_combination(t, gens);
    REQUIRE(x);
    CHECK(*x == c);
  }
}

TEST_CASE("kernel basis annihilates") {
  RatMatrix a(2, 4);
  std::vector<std::vector<int>> rows{{1, 2, 3, 4}, {0, 1, 1, 1}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = rows[i][j];
  const auto k = kernel_basis(a);
  CHECK(k.size() == 2);
  for (const auto& v : k)
    for (std::size_t i = 0; i < 2; ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < 4; ++j) s += BigInt(rows[i][j]) * v[j];
      CHECK(s == 0);
    }
}

TEST_CASE("small rationals are exact or overflow") {
  SmallRational a(1, 3), b(1, 6);
  CHECK(a + b == SmallRational(1, 2));
  CHECK(a * b == SmallRational(1, 18));
  CHECK(a / b == SmallRational(2));
  CHECK(SmallRational(-2, -4) == SmallRational(1, 2));
  CHECK(SmallRational(1, 2) < SmallRational(2, 3));
  CHECK_THROWS_AS(SmallRational(INT64_MAX) * SmallRational(2), Error);
}

TEST_CASE("cone membership") {
  // square's cone contains the diagonal, not its negative
  std::vector<std::vector<std::int64_t>> gens{{1, 0}, {0, 1}};
  auto x = cone_membership(gens, {2, 3});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(cone_membership(gens, {-1, 0}));
  // redundant rows (rank deficient) are fine
  std::vector<std::vector<std::int64_t>> g2{{1, 1, 2}, {1, -1, 0}};
  CHECK(cone_membership(g2, {2, 0, 2}));
  CHECK_FALSE(cone_membership(g2, {0, 2, 2}));

  // agrees with an exhaustive check on nonnegative integer combinations
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<std::int64_t>> g(3, std::vector<std::int64_t>(3));
    for (auto& v : g)
      for (auto& e : v) e = int(rng() % 7) - 3;
    std::vector<std::int64_t> t(3, 0);
    std::vector<int> c{int(rng() % 3), int(rng() % 3), int(rng() % 3)};
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) t[i] += c[j] * g[j][i];
    auto sol = cone_membership(g, t);
    REQUIRE(sol);
    for (std::size_t i = 0; i < 3; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += (*sol)[j] * g[j][i];
      CHECK(s == t[i]);
    }
    for (const auto& q : *sol) CHECK(q >= 0);
  }
}
