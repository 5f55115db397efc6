// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "renorm/errors.hpp"
#include "renorm/groups.hpp"

using namespace renorm;

namespace {

// Inversion count of a one-line permutation — the textbook word length for
// adjacent transpositions, computed here without touching GroupModel.
int inversions(const Element& sigma) {
  int count = 0;
  const auto& p = sigma.data;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++count;
  return count;
}

}  // namespace

TEST_CASE("sphere sizes match closed-form counts") {
  SUBCASE("free group of rank 2 grows 4 * 3^(r-1)") {
    const auto s = GroupModel::free_group(2).sphere_sizes(3);
    CHECK(s == std::vector<std::uint64_t>{1, 4, 12, 36});
  }
  SUBCASE("the integer line has two points per sphere") {
    const auto s = GroupModel::integer_lattice(1).sphere_sizes(3);
    CHECK(s == std::vector<std::uint64_t>{1, 2, 2, 2});
  }
  SUBCASE("a small cycle closes up at its diameter") {
    const auto s = GroupModel::cyclic(4).sphere_sizes(3);
    CHECK(s == std::vector<std::uint64_t>{1, 2, 1, 0});
  }
  SUBCASE("Sym(4) spheres follow the Mahonian distribution") {
    const auto s = GroupModel::symmetric(4).sphere_sizes(6);
    CHECK(s == std::vector<std::uint64_t>{1, 3, 5, 6, 5, 3, 1});
  }
}

TEST_CASE("ball sizes at the radii the rest of the suite relies on") {
  CHECK(ball_enumerate(GroupModel::torus(16, 2), 2).size() == 13);
  CHECK(ball_enumerate(GroupModel::integer_lattice(2), 8).size() == 145);
  CHECK(ball_enumerate(GroupModel::free_group(2), 6).size() == 1457);
  CHECK(GroupModel::free_group(2).predicted_ball_size(6) == 1457);
}

TEST_CASE("ball order is breadth-first, identity first, layers sorted") {
  const Ball ball = ball_enumerate(GroupModel::integer_lattice(1), 2);
  REQUIRE(ball.size() == 5);
  CHECK(ball.element(0).data == std::vector<std::int32_t>{0});
  CHECK(ball.element(1).data == std::vector<std::int32_t>{-1});
  CHECK(ball.element(2).data == std::vector<std::int32_t>{1});
  CHECK(ball.element(3).data == std::vector<std::int32_t>{-2});
  CHECK(ball.element(4).data == std::vector<std::int32_t>{2});
  CHECK(std::is_sorted(ball.distances.begin(), ball.distances.end()));
}

TEST_CASE("free group words reduce and the metric is left-invariant") {
  const GroupModel f2 = GroupModel::free_group(2);
  const Element a{{1}}, b{{2}};
  const Element ab = f2.multiply(a, b);
  CHECK(ab.data == std::vector<std::int32_t>{1, 2});
  CHECK(f2.multiply(a, f2.inverse(a)) == f2.identity());

  // a * (b * b^-1) * a reduces to a^2.
  const Element noisy = f2.multiply(f2.multiply(a, b),
                                    f2.multiply(f2.inverse(b), a));
  CHECK(noisy.data == std::vector<std::int32_t>{1, 1});

  // d(ab, b) = |b^-1 a b| = 3: conjugation does not cancel here.
  CHECK(f2.distance(ab, b) == 3);
  // Left translation preserves distance.
  const Element g = f2.multiply(b, ab);
  CHECK(f2.distance(g, f2.multiply(b, b)) == f2.distance(ab, b));
}

TEST_CASE("planar lattice ball agrees with direct coordinate enumeration") {
  const GroupModel z2 = GroupModel::integer_lattice(2);
  const Ball ball = ball_enumerate(z2, 5);
  std::set<std::vector<std::int32_t>> expected;
  for (std::int32_t x = -5; x <= 5; ++x)
    for (std::int32_t y = -5; y <= 5; ++y)
      if (std::abs(x) + std::abs(y) <= 5) expected.insert({x, y});
  REQUIRE(ball.size() == static_cast<int>(expected.size()));
  for (int i = 0; i < ball.size(); ++i) {
    const auto& v = ball.element(i).data;
    CHECK(expected.count(v) == 1);
    CHECK(ball.distance_of(i) == std::abs(v[0]) + std::abs(v[1]));
  }
}

TEST_CASE("Sym(4): word length is the inversion count, exhaustively") {
  const GroupModel s4 = GroupModel::symmetric(4);
  const Ball all = ball_enumerate(s4, s4.diameter());
  REQUIRE(all.size() == 24);
  for (int i = 0; i < all.size(); ++i) {
    const Element& g = all.element(i);
    CHECK(s4.word_length(g) == inversions(g));
    CHECK(s4.multiply(g, s4.inverse(g)) == s4.identity());
  }
  // The metric: d(g, h) = inversions(g^-1 h), spot-checked on all pairs of
  // the first sphere plus the identity.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const Element gh =
          s4.multiply(s4.inverse(all.element(i)), all.element(j));
      CHECK(s4.distance(all.element(i), all.element(j)) == inversions(gh));
    }
}

TEST_CASE("small torus balls look like lattice balls before wrap-around") {
  const GroupModel torus = GroupModel::torus(16, 2);
  const GroupModel z2 = GroupModel::integer_lattice(2);
  for (int r = 0; r <= 3; ++r) {
    CHECK(torus.predicted_ball_size(r) == z2.predicted_ball_size(r));
  }
  // Wrap-around shortens distances beyond half the modulus.
  const GroupModel ring = GroupModel::cyclic(8);
  CHECK(ring.word_length(Element{{7}}) == 1);
  CHECK(ring.word_length(Element{{4}}) == 4);
  CHECK(ring.diameter() == 4);
}

TEST_CASE("enumeration is deterministic and indexes invert the element list") {
  const GroupModel f2 = GroupModel::free_group(2);
  const Ball one = ball_enumerate(f2, 4);
  const Ball two = ball_enumerate(f2, 4);
  REQUIRE(one.size() == two.size());
  for (int i = 0; i < one.size(); ++i) {
    CHECK(one.element(i) == two.element(i));
    auto found = one.index_of(one.element(i));
    REQUIRE(found.has_value());
    CHECK(*found == i);
  }
  CHECK_FALSE(one.index_of(Element{{1, 2, 1, 2, 1}}).has_value());
}

TEST_CASE("oversized enumerations are refused up front with the prediction") {
  try {
    ball_enumerate(GroupModel::free_group(2), 12);
    FAIL("expected BallSizeError");
  } catch (const BallSizeError& e) {
    const std::string message = e.what();
    CHECK(message.find("1062881") != std::string::npos);
  }
}

TEST_CASE("group specs parse and round-trip") {
  for (const char* spec :
       {"z:2", "free:2", "torus:16,2", "cyclic:24", "sym:4"}) {
    const GroupModel g = GroupModel::parse(spec);
    CHECK(g.spec_string() == spec);
  }
  CHECK(GroupModel::parse("torus:16,2").order() == 256);
  CHECK(GroupModel::parse("sym:4").order() == 24);
  CHECK_THROWS_AS(GroupModel::parse("banana:3"), ParameterError);
  CHECK_THROWS_AS(GroupModel::parse("torus:0,2"), ParameterError);
  CHECK_THROWS_AS(GroupModel::parse("free:"), ParameterError);
}

TEST_CASE("covers_group flips exactly at the diameter") {
  const GroupModel ring = GroupModel::cyclic(12);
  CHECK_FALSE(ball_enumerate(ring, 5).covers_group());
  CHECK(ball_enumerate(ring, 6).covers_group());
  CHECK(ball_enumerate(ring, 6).size() == 12);
}
