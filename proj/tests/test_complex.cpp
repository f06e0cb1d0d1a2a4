#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "vtman/complex.hpp"
#include "vtman/enumerate.hpp"
#include "vtman/error.hpp"
#include "vtman/orbits.hpp"
#include "vtman/reference.hpp"

using namespace vtman;

TEST_CASE("from_orbits") {
  auto cat = fixtures::catalog({7});
  auto f42 = resolve_group("t7n4", 7, cat);
  auto torus = from_orbits(f42, {make_face({1, 2, 4})});
  CHECK(torus.facets() == fixtures::mobius_torus().facets());

  auto d15 = builtin_group(GroupFamily::dihedral, 15);
  auto sxs = from_orbits(d15, fixtures::reps(fixtures::kD15SxS));
  CHECK(sxs.facet_count() == 90);

  PermutationGroup trivial(5, {Permutation(5)});
  std::vector<Face> list{make_face({1, 2, 3}), make_face({2, 4, 5})};
  CHECK(from_orbits(trivial, list).facets() == list);
  // Overlapping orbits merge silently.
  CHECK(from_orbits(f42, {make_face({1, 2, 4}), make_face({1, 2, 6})}).facet_count() == 14);
  CHECK_THROWS_AS(from_orbits(f42, {make_face({1, 2, 4}), make_face({1, 2})}), PreconditionError);
}

TEST_CASE("construction validates facets") {
  CHECK_THROWS_AS(SimplicialComplex(4, 2, {make_face({1, 2, 3}), make_face({1, 2, 3})}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(4, 2, {make_face({1, 2})}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(3, 2, {make_face({1, 2, 4})}), InputError);
  CHECK_THROWS_AS(SimplicialComplex(4, 2, {make_face({1, 2, 3})}), InputError);  // vertex 4 unused
  CHECK_NOTHROW(SimplicialComplex(4, 2, {make_face({1, 2, 3})}, false));
  SimplicialComplex m(4, 2, {make_face({2, 3, 4}), make_face({1, 2, 3})}, false);
  CHECK(m.facets().front() == make_face({1, 2, 3}));
}

TEST_CASE("f-vectors") {
  CHECK(f_vector(boundary_simplex(6)).format_full() == "(8,28,56,70,56,28,8)");
  CHECK(f_vector(boundary_simplex(6)).format_table() == "(28,56,70,56,28,8)");
  auto sxs = from_orbits(builtin_group(GroupFamily::dihedral, 15), fixtures::reps(fixtures::kD15SxS));
  CHECK(f_vector(sxs).format_full() == "(15,105,315,525,525,315,90)");
  CHECK(f_vector(SimplicialComplex(3, 2, {make_face({1, 2, 3})})).format_full() == "(3,3,1)");
  for (const auto& m : {fixtures::mobius_torus(), fixtures::rp2_6(), fixtures::torus9(), boundary_simplex(5)})
    CHECK(f_vector(m).euler_characteristic() == euler_characteristic(m));
}

TEST_CASE("links and stars") {
  auto tet = boundary_simplex(2);
  CHECK(link(tet, vertex_bit(1)).facets() == std::vector<Face>{make_face({2, 3}), make_face({2, 4}), make_face({3, 4})});
  auto lk = link(fixtures::mobius_torus(), vertex_bit(1));
  CHECK(lk.vertex_set() == make_face({2, 3, 4, 5, 6, 7}));
  CHECK(lk.facet_count() == 6);
  CHECK(is_pseudomanifold(lk));
  CHECK(is_connected(lk));

  auto sxs = from_orbits(builtin_group(GroupFamily::dihedral, 15), fixtures::reps(fixtures::kD15SxS));
  SimplicialComplex full(15, 6, sxs.facets());
  auto vlink = link(full, vertex_bit(3));
  CHECK(vlink.vertex_count() == 14);
  CHECK(vlink.dim() == 5);
  CHECK(euler_characteristic(vlink) == 0);

  // star(F) = F * link(F), facet by facet.
  auto m = fixtures::torus9();
  for (Face f : {vertex_bit(1), make_face({1, 2}), make_face({1, 2, 5})}) {
    auto st = star(m, f), lf = link(m, f);
    REQUIRE(st.facet_count() == lf.facet_count());
    for (std::size_t i = 0; i < st.facet_count(); ++i) CHECK(st.facets()[i] == (lf.facets()[i] | f));
  }
  CHECK_THROWS_AS(link(m, make_face({1, 2, 3})), PreconditionError);
  CHECK_THROWS_AS(star(m, make_face({1, 2, 3})), PreconditionError);
  CHECK(link(m, make_face({1, 2, 5})).dim() == -1);
}

TEST_CASE("pseudomanifold property") {
  for (int d = 2; d <= 5; ++d) CHECK(is_pseudomanifold(boundary_simplex(d)));
  SimplicialComplex single(3, 2, {make_face({1, 2, 3})});
  CHECK_FALSE(is_pseudomanifold(single));
  REQUIRE(find_bad_ridge(single).has_value());
  CHECK(face_size(*find_bad_ridge(single)) == 2);
  auto inc = build_incidence(builtin_group(GroupFamily::dihedral, 7), 3);
  auto ac = assemble_rows(inc, {0, 2});
  CHECK(ac.facet_count() == 14);
  CHECK(is_pseudomanifold(ac));
}

TEST_CASE("connectivity") {
  auto two_triangles = fixtures::from_lists(6, 1, {{1, 3}, {1, 5}, {2, 4}, {2, 6}, {3, 5}, {4, 6}});
  CHECK_FALSE(is_connected(two_triangles));
  CHECK(is_strongly_connected(boundary_simplex(3)));
  // Two tetrahedron boundaries sharing vertex 4.
  auto wedge = fixtures::from_lists(7, 2,
                                    {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}, {4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}});
  CHECK(is_connected(wedge));
  CHECK_FALSE(is_strongly_connected(wedge));
  CHECK(is_pseudomanifold(wedge));
}

TEST_CASE("Euler characteristic and orientability") {
  CHECK(euler_characteristic(fixtures::mobius_torus()) == 0);
  CHECK(is_orientable(fixtures::mobius_torus()));
  CHECK(euler_characteristic(boundary_simplex(2)) == 2);
  CHECK(is_orientable(boundary_simplex(2)));
  CHECK(euler_characteristic(fixtures::rp2_6()) == 1);
  CHECK_FALSE(is_orientable(fixtures::rp2_6()));
  CHECK(is_pseudomanifold(fixtures::rp2_6()));
  for (int d = 1; d <= 8; ++d) CHECK(is_orientable(boundary_simplex(d)));
  CHECK_THROWS_AS(is_orientable(SimplicialComplex(3, 2, {make_face({1, 2, 3})})), PreconditionError);
}

TEST_CASE("Step 3 link tests") {
  auto inc = build_incidence(builtin_group(GroupFamily::dihedral, 7), 3);
  CHECK(step3_tests(assemble_rows(inc, {0, 2})).pass);
  CHECK(step3_tests(boundary_simplex(5)).pass);
  CHECK(step3_tests(fixtures::mobius_torus()).pass);
  auto two_triangles = fixtures::from_lists(6, 1, {{1, 3}, {1, 5}, {2, 4}, {2, 6}, {3, 5}, {4, 6}});
  auto r = step3_tests(two_triangles);
  CHECK_FALSE(r.pass);
  CHECK(r.reason.find("disconnected") != std::string::npos);
  // Pinched: the cone over two disjoint circles fails at the apex.
  auto pinched = fixtures::from_lists(7, 2,
                                      {{1, 2, 3}, {1, 3, 4}, {1, 2, 4}, {2, 3, 4}, {1, 5, 6}, {1, 6, 7}, {1, 5, 7}, {5, 6, 7}});
  CHECK_FALSE(step3_tests(pinched).pass);
}

TEST_CASE("complex files") {
  std::stringstream ss;
  write_complex(ss, fixtures::mobius_torus());
  CHECK(ss.str().rfind("7 2\n1 2 4\n1 2 6\n", 0) == 0);
  auto back = read_complex(ss);
  CHECK(back == fixtures::mobius_torus());
  std::istringstream commented("# torus\n4 2\n\n1 2 3\n1 2 4\n# x\n1 3 4\n2 3 4\n");
  CHECK(read_complex(commented) == boundary_simplex(2));
  std::istringstream bad_header("four 2\n");
  CHECK_THROWS_AS(read_complex(bad_header), InputError);
  std::istringstream bad_label("4 2\n1 2 x\n");
  CHECK_THROWS_AS(read_complex(bad_label), InputError);
  std::istringstream wrong_size("4 2\n1 2\n");
  CHECK_THROWS_AS(read_complex(wrong_size), InputError);
  CHECK_THROWS_AS(read_complex_file("/nonexistent/file"), InputError);
}

TEST_CASE("GAP output matches the printed snippet") {
  const std::string expected =
      "[ [ 1, 2, 4 ], [ 1, 2, 6 ], [ 1, 3, 4 ], [ 1, 3, 7 ],\n"
      "  [ 1, 5, 6 ], [ 1, 5, 7 ], [ 2, 3, 5 ], [ 2, 3, 7 ],\n"
      "  [ 2, 4, 5 ], [ 2, 6, 7 ], [ 3, 4, 6 ], [ 3, 5, 6 ],\n"
      "  [ 4, 5, 7 ], [ 4, 6, 7 ] ]";
  CHECK(format_gap(fixtures::mobius_torus()) == expected);
}

TEST_CASE("compaction and relabeling") {
  SimplicialComplex sparse(9, 2, {make_face({2, 5, 9}), make_face({2, 5, 7})}, false);
  auto c = sparse.compacted();
  CHECK(c.n() == 4);
  CHECK(c.facets() == std::vector<Face>{make_face({1, 2, 3}), make_face({1, 2, 4})});
  auto p = Permutation::from_images({2, 3, 4, 5, 6, 7, 1});
  auto shifted = fixtures::mobius_torus().relabeled(p);
  CHECK(shifted == fixtures::mobius_torus());  // the 7-cycle is an automorphism
}
