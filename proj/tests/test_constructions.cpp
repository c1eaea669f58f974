#include <numeric>

#include <catch_amalgamated.hpp>

#include "fanofiber/constructions.hpp"
#include "fanofiber/fibrelike.hpp"
#include "fanofiber/symmetry.hpp"
#include "fanofiber/toric.hpp"

using namespace fanofiber;

TEST_CASE("simplex") {
  auto seg = simplex(1);
  CHECK(seg.vertices() == std::vector<Point>{{-1}, {1}});
  CHECK(simplex(2).num_vertices() == 3);
  CHECK(simplex(8).num_vertices() == 9);
  for (std::size_t n = 1; n <= 8; ++n) CHECK(is_smooth(simplex(n)));
}

TEST_CASE("t-del Pezzo") {
  CHECK(t_del_pezzo(2).num_vertices() == 6);
  CHECK(t_del_pezzo(4).num_vertices() == 10);
  CHECK(t_del_pezzo(8).num_vertices() == 18);
  for (std::size_t d : {2, 4, 6})
    CHECK(is_centrally_symmetric(t_del_pezzo(d)));
  try {
    t_del_pezzo(3);
    FAIL("odd dimension accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddDimension);
  }
}

TEST_CASE("Klyachko") {
  CHECK(klyachko(3, 6).num_vertices() == 12);
  CHECK(klyachko(3, 8).num_vertices() == 15);
  CHECK(klyachko(2, 4).num_vertices() == 10);
  CHECK(lattice_equivalent(klyachko(2, 4), t_del_pezzo(4)));
  try {
    klyachko(3, 5);
    FAIL("divisibility not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisibilityViolated);
  }
  SECTION("vertex layout for (3,6)") {
    const auto v = klyachko_vertices(3, 6);
    REQUIRE(v.size() == 12);
    CHECK(v[6] == Point{1, 1, 1, 1, 1, 1});
    CHECK(v[7] == Point{-1, -1, 0, 0, 0, 0});  // consecutive blocks
    CHECK(v[9] == Point{0, 0, 0, 0, -1, -1});
    CHECK(v[10] == Point{-1, 0, -1, 0, -1, 0});  // strided sets
    CHECK(v[11] == Point{0, -1, 0, -1, 0, -1});
  }
  SECTION("order 2 reproduces the t-del Pezzo vertex set") {
    for (std::size_t d : {2, 4, 6, 8}) CHECK(klyachko(2, d).vertices() == t_del_pezzo(d).vertices());
  }
  SECTION("vertex count formula") {
    for (std::size_t d = 2; d <= 8; ++d)
      for (std::size_t k = 2; k <= d + 1; ++k) {
        if (d % (k - 1) != 0) continue;
        CHECK(klyachko(k, d).num_vertices() == d + 1 + d / (k - 1) + (k - 1));
        CHECK(klyachko_vertex_count(k, d) == klyachko(k, d).num_vertices());
      }
  }
}

TEST_CASE("Klyachko facet form") {
  // x_1 + x_2 - 2 x_3, the single summand i = 0 of L_{3,1}
  CHECK(klyachko_facet_form(3, 1, 4).coefficients == Point{1, 1, -2, 0});
  CHECK(klyachko_facet_form(3, 1, 4)(Point{0, 0, 0, 0}) == 0);
  CHECK(klyachko_facet_form(2, 1, 4).coefficients == Point{0, 0, 0, 0});  // empty sum
  try {
    klyachko_facet_form(3, 3, 4);
    FAIL("index past d accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }

  SECTION("L_{k,1} + x_d = 1 supports a facet with k(k-1) vertices on W^k_{(k-1)^2}") {
    for (std::size_t k : {3, 4}) {
      const std::size_t d = (k - 1) * (k - 1);
      if (k == 4) continue;  // (k-1)^2 = 9 exceeds the dimensions exercised here
      auto p = klyachko(k, d);
      auto form = klyachko_facet_form(k, 1, d);
      form.coefficients[d - 1] += 1;
      std::size_t on = 0;
      for (const auto& v : p.vertices()) {
        CHECK(form(v) <= 1);
        on += form(v) == 1;
      }
      CHECK(on == k * (k - 1));
      bool is_facet = false;
      for (const auto& f : p.facets()) is_facet |= f.normal == form.coefficients && f.level == 1;
      CHECK(is_facet);
      CHECK_FALSE(is_simplicial(p));
    }
  }
}

TEST_CASE("free sums and powers") {
  auto square = free_sum(simplex(1), simplex(1));
  CHECK(square.vertices() == std::vector<Point>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
  CHECK(power(simplex(1), 8).num_vertices() == 16);
  CHECK(power(t_del_pezzo(2), 4).num_vertices() == 24);
  CHECK(power(simplex(2), 1) == simplex(2));
  CHECK_THROWS_AS(power(simplex(2), 0), Error);

  SECTION("associative up to equivalence") {
    auto a = simplex(1), b = simplex(2), c = t_del_pezzo(2);
    CHECK(lattice_equivalent(free_sum(free_sum(a, b), c), free_sum(a, free_sum(b, c))));
  }
  SECTION("central symmetry of a sum iff both summands") {
    const std::vector<Polytope> parts{simplex(1), simplex(2), t_del_pezzo(2), klyachko(3, 4)};
    for (const auto& p : parts)
      for (const auto& q : parts)
        CHECK(is_centrally_symmetric(free_sum(p, q)) ==
              (is_centrally_symmetric(p) && is_centrally_symmetric(q)));
  }
}
