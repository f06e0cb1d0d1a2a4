#include <doctest.h>

#include <algorithm>
#include <random>

#include "vtman/error.hpp"
#include "vtman/face.hpp"

using namespace vtman;

TEST_CASE("masks and vertex lists round-trip") {
  Face f = make_face({1, 3, 10, 64});
  CHECK(face_size(f) == 4);
  CHECK(min_vertex(f) == 1);
  CHECK(vertices_of(f) == std::vector<int>{1, 3, 10, 64});
  CHECK(contains(f, make_face({3, 64})));
  CHECK_FALSE(contains(f, make_face({2})));
  CHECK(full_face(64) == ~Face{0});
  CHECK(full_face(5) == make_face({1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(make_face({0}), InputError);
  CHECK_THROWS_AS(make_face({65}), InputError);
}

TEST_CASE("lex order agrees with comparison of sorted tuples") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    Face a = rng() & full_face(12), b = rng() & full_face(12);
    if (trial % 3 == 0) b = a & (rng() | 1);  // prefixes and subsets
    auto va = vertices_of(a), vb = vertices_of(b);
    bool expected = std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    REQUIRE(lex_less(a, b) == expected);
  }
  CHECK(lex_less(make_face({1, 2}), make_face({1, 2, 3})));
  CHECK(lex_less(make_face({1, 2, 9}), make_face({1, 3})));
}

TEST_CASE("compact notation") {
  Face f = make_face({1, 2, 3, 5, 7, 10, 13});
  CHECK(format_face(f) == "12357 10 13");
  CHECK(parse_compact_face("12357 10 13") == f);
  CHECK(format_face_spaced(make_face({1, 2, 4})) == "1 2 4");
  CHECK(parse_compact_face("1 2 4") == make_face({1, 2, 4}));
  CHECK_THROWS_AS(parse_compact_face("12a"), InputError);
}

TEST_CASE("subface iteration") {
  Face f = make_face({2, 4, 5, 9});
  int all = 0, pairs = 0;
  for_each_subface(f, [&](Face s) {
    CHECK(contains(f, s));
    ++all;
  });
  for_each_subface_of_size(f, 2, [&](Face s) {
    CHECK(face_size(s) == 2);
    ++pairs;
  });
  CHECK(all == 15);
  CHECK(pairs == 6);
}
