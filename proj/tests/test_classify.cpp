#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "fixtures.hpp"
#include "vtman/classify.hpp"
#include "vtman/enumerate.hpp"
#include "vtman/reference.hpp"

using namespace vtman;
using boost::multiprecision::cpp_rational;

namespace {

// Plain Gaussian elimination over the rationals.
BigInt rational_det_aat(const SimplicialComplex& m) {
  int n = m.n();
  std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n, 0));
  for (Face f : m.facets())
    for (int u : vertices_of(f))
      for (int v : vertices_of(f)) a[u - 1][v - 1] += 1;
  cpp_rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      cpp_rational k = a[r][c] / a[c][c];
      for (int j = c; j < n; ++j) a[r][j] -= k * a[c][j];
    }
  }
  return boost::multiprecision::numerator(det);
}

// Exhaustive search over all n! relabelings.
bool brute_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.n() != b.n() || a.facet_count() != b.facet_count()) return false;
  std::vector<int> images(a.n());
  for (int i = 0; i < a.n(); ++i) images[i] = i + 1;
  do {
    if (a.relabeled(Permutation::from_images(images)) == b) return true;
  } while (std::next_permutation(images.begin(), images.end()));
  return false;
}

std::vector<SimplicialComplex> census_up_to(int max_n) {
  std::set<int> degrees;
  for (int n = 4; n <= max_n; ++n) degrees.insert(n);
  std::vector<SimplicialComplex> out;
  for (const auto& g : fixtures::catalog(degrees))
    for (int d = 2; d <= g.degree() - 2; ++d)
      for (auto& m : enumerate_vt(g.degree(), d, g).complexes) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("determinant of small boundaries") {
  for (int d = 1; d <= 8; ++d) CHECK(as_determinant(boundary_simplex(d)) == BigInt((d + 1) * (d + 1)));
  // All 21 edges lie in two triangles: A A^T = 4 I + 2 J.
  CHECK(as_determinant(fixtures::mobius_torus()) == BigInt(73728));
  for (const auto& m : {fixtures::rp2_6(), fixtures::torus9(), fixtures::octahedron(), cyclic_polytope_boundary(5, 9),
                        fixtures::s2xs1_10(), cross_polytope_boundary(5)})
    CHECK(as_determinant(m) == rational_det_aat(m));
}

TEST_CASE("multiplication isomorphisms for D7") {
  auto inc = build_incidence(builtin_group(GroupFamily::dihedral, 7), 3);
  auto ac = assemble_rows(inc, {0, 2});
  auto ad = assemble_rows(inc, {0, 3});
  auto cd = assemble_rows(inc, {2, 3});
  CHECK(multiplication_isomorphic(ac, ad) == 2);
  CHECK(multiplication_isomorphic(ac, cd) == 3);
  CHECK(multiplication_isomorphic(ac, ac) == 1);
  for (const auto& [x, y] : {std::pair{ac, ad}, std::pair{ac, cd}, std::pair{ad, cd}}) {
    auto p = are_isomorphic(x, y);
    REQUIRE(p);
    CHECK(x.relabeled(*p) == y);
  }
}

TEST_CASE("isomorphism search against all relabelings") {
  std::mt19937_64 rng(11);
  auto census = census_up_to(7);
  std::vector<SimplicialComplex> small{fixtures::mobius_torus(), fixtures::rp2_6(), fixtures::octahedron(),
                                       cyclic_polytope_boundary(4, 7), cyclic_polytope_boundary(3, 7),
                                       fixtures::stacked_sphere({0, 3, 1})};
  for (const auto& m : census) small.push_back(m);
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto shuffled = small[i].relabeled(fixtures::random_permutation(small[i].n(), rng));
    auto p = are_isomorphic(small[i], shuffled);
    REQUIRE(p);
    CHECK(small[i].relabeled(*p) == shuffled);
    CHECK(are_isomorphic(small[i], small[i]).has_value());
    for (std::size_t j = 0; j < small.size(); ++j) {
      const auto& a = small[i];
      const auto& b = small[j];
      if (a.n() != b.n() || a.dim() != b.dim()) continue;
      bool fast = are_isomorphic(a, b).has_value();
      CHECK(fast == are_isomorphic(b, a).has_value());
      CHECK(fast == brute_isomorphic(a, b));
    }
  }
}

TEST_CASE("stacked spheres with equal f-vectors") {
  // Same f-vector (9,21,14); the stacking trees differ.
  auto chain = fixtures::stacked_sphere({0, 5, 8, 11, 14});
  auto star = fixtures::stacked_sphere({0, 0, 0, 0, 0});
  auto other = fixtures::stacked_sphere({0, 4, 6, 9, 2});
  REQUIRE(f_vector(chain) == f_vector(star));
  for (const auto& [a, b] : {std::pair{chain, star}, std::pair{chain, other}, std::pair{star, other}}) {
    bool fast = are_isomorphic(a, b).has_value();
    CHECK(fast == brute_isomorphic(a, b));
    CHECK(fast == (canonical_key(a) == canonical_key(b)));
  }
}

TEST_CASE("canonical keys") {
  std::mt19937_64 rng(5);
  for (const auto& m : {fixtures::mobius_torus(), fixtures::torus9(), fixtures::s2xs1_10(), cyclic_polytope_boundary(6, 11)})
    for (int i = 0; i < 5; ++i)
      CHECK(canonical_key(m) == canonical_key(m.relabeled(fixtures::random_permutation(m.n(), rng))));

  auto census = census_up_to(8);
  REQUIRE(census.size() > 20);
  for (std::size_t i = 0; i < census.size(); ++i)
    for (std::size_t j = i + 1; j < census.size(); ++j) {
      if (census[i].n() != census[j].n() || census[i].dim() != census[j].dim()) continue;
      CHECK((canonical_key(census[i]) == canonical_key(census[j])) == are_isomorphic(census[i], census[j]).has_value());
    }
}

TEST_CASE("vertex count bounds") {
  CHECK(kuehnel_bound_check(12, 6));
  CHECK_FALSE(kuehnel_bound_check(9, 4));
  CHECK(kuehnel_bound_check(7, 0));
  CHECK(brehm_kuehnel_bound(9, 4) == BrehmKuehnel::sphere_or_projective_like);
  CHECK(brehm_kuehnel_bound(6, 2) == BrehmKuehnel::sphere_or_projective_like);
  CHECK(brehm_kuehnel_bound(5, 2) == BrehmKuehnel::must_be_sphere);
  CHECK(brehm_kuehnel_bound(9, 3) == BrehmKuehnel::unconstrained);
  CHECK(brehm_kuehnel_bound(8, 3) == BrehmKuehnel::must_be_sphere);
  CHECK(brehm_kuehnel_bound(100, 2) == BrehmKuehnel::unconstrained);
  CHECK(to_string(BrehmKuehnel::must_be_sphere) == "must_be_sphere");
}
