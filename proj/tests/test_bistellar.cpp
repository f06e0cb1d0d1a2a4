#include <doctest.h>

#include "fixtures.hpp"
#include "vtman/bistellar.hpp"
#include "vtman/classify.hpp"
#include "vtman/enumerate.hpp"
#include "vtman/error.hpp"
#include "vtman/homology.hpp"
#include "vtman/reference.hpp"

using namespace vtman;

TEST_CASE("move enumeration") {
  auto tet = boundary_simplex(2);
  auto moves = valid_moves(tet);
  // A simplex boundary admits only facet subdivisions.
  CHECK(moves.size() == 4);
  for (const auto& mv : moves) CHECK(mv.index() == 2);
  CHECK(valid_moves(tet, false).empty());

  auto oct = fixtures::octahedron();
  auto oct_moves = valid_moves(oct, false);
  CHECK(oct_moves.size() == 12);  // every edge flips
  for (const auto& mv : oct_moves) {
    CHECK(mv.index() == 1);
    auto flipped = apply_move(oct, mv);
    CHECK(f_vector(flipped) == f_vector(oct));
    CHECK(is_pseudomanifold(flipped));
    CHECK(apply_move(flipped, mv.inverse()) == oct);
  }

  auto sub = apply_move(tet, moves[0]);
  CHECK(sub.n() == 5);
  CHECK(sub.facet_count() == 6);
  CHECK(is_admissible(sub, moves[0].inverse()));
  CHECK(apply_move(sub, moves[0].inverse()).facets() == tet.facets());

  CHECK_THROWS_AS(apply_move(tet, FlipMove{make_face({1, 2}), make_face({3, 4})}), PreconditionError);
}

TEST_CASE("move text") {
  FlipMove mv{make_face({1, 2}), make_face({3, 4})};
  CHECK(mv.format() == "1 2 | 3 4");
  CHECK(FlipMove::parse("1 2 | 3 4") == mv);
  CHECK(FlipMove::parse("  7 |1 2 3") == FlipMove{make_face({7}), make_face({1, 2, 3})});
  CHECK_THROWS_AS(FlipMove::parse("1 2 3"), InputError);
  CHECK_THROWS_AS(FlipMove::parse("1 x | 2"), InputError);
  std::vector<FlipMove> list{mv, mv.inverse()};
  CHECK(parse_moves(format_moves(list)) == list);
}

TEST_CASE("reductions") {
  auto c47 = cyclic_polytope_boundary(4, 7);
  auto r = reduce(c47);
  CHECK(r.verdict == ReduceVerdict::boundary_of_simplex);
  CHECK(r.complex == boundary_simplex(3));
  CHECK(replay_moves(c47, r.moves).compacted() == r.complex);

  auto t = reduce(fixtures::torus9());
  CHECK(t.verdict == ReduceVerdict::reduced_but_unrecognized);
  CHECK(f_vector(t.complex).format_full() == "(7,21,14)");
  CHECK(are_isomorphic(t.complex, fixtures::mobius_torus()).has_value());
  CHECK(replay_moves(fixtures::torus9(), t.moves).compacted() == t.complex);

  auto simplex = reduce(boundary_simplex(6));
  CHECK(simplex.verdict == ReduceVerdict::boundary_of_simplex);
  CHECK(simplex.moves.empty());

  ReduceOptions none;
  none.budget = 0;
  CHECK(links_are_spheres(cyclic_polytope_boundary(6, 10), none).verdict == ReduceVerdict::budget_exhausted);
  CHECK(links_are_spheres(cyclic_polytope_boundary(6, 10)).verdict == ReduceVerdict::boundary_of_simplex);

  // Same seed, same moves.
  ReduceOptions seeded;
  seeded.seed = 42;
  CHECK(reduce(fixtures::torus9(), seeded).moves == reduce(fixtures::torus9(), seeded).moves);
}

TEST_CASE("equivalence search") {
  auto inc = build_incidence(builtin_group(GroupFamily::dihedral, 7), 3);
  auto ad = assemble_rows(inc, {0, 3});
  auto c47 = cyclic_polytope_boundary(4, 7);
  CHECK(bistellar_equivalent(ad, c47).equivalent);

  auto same = bistellar_equivalent(fixtures::mobius_torus(), fixtures::mobius_torus());
  CHECK(same.equivalent);
  CHECK(same.moves.empty());

  auto torus = bistellar_equivalent(fixtures::torus9(), fixtures::mobius_torus());
  REQUIRE(torus.equivalent);
  auto end = replay_moves(fixtures::torus9(), torus.moves).compacted();
  CHECK(are_isomorphic(end, fixtures::mobius_torus()).has_value());

  ReduceOptions quick;
  quick.budget = 300;
  CHECK_FALSE(bistellar_equivalent(fixtures::mobius_torus(), boundary_simplex(2), quick).equivalent);
}

TEST_CASE("portable draws") {
  PortableRng a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    auto x = a.below(7);
    CHECK(x < 7);
    CHECK(x == b.below(7));
  }
}
