#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "vtman/homology.hpp"
#include "vtman/reference.hpp"

using namespace vtman;
using boost::multiprecision::cpp_rational;

namespace {

BigInt det(std::vector<std::vector<cpp_rational>> a) {
  std::size_t n = a.size();
  cpp_rational result = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      result = -result;
    }
    result *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      cpp_rational k = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= k * a[c][j];
    }
  }
  return boost::multiprecision::numerator(result);
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors from determinantal divisors (gcd of all k x k minors).
SmithForm minors_oracle(const std::vector<std::vector<long long>>& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm out;
  BigInt previous = 1;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<cpp_rational>> minor(k, std::vector<cpp_rational>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) minor[i][j] = a[r[i]][c[j]];
        g = boost::multiprecision::gcd(g, BigInt(abs(det(minor))));
      }
    if (g == 0) break;
    out.rank = k;
    BigInt factor = g / previous;
    if (factor > 1) out.torsion.push_back(factor);
    previous = g;
  }
  return out;
}

SparseMatrix sparse_of(const std::vector<std::vector<long long>>& a) {
  SparseMatrix m;
  m.rows = a.size();
  m.cols = a.empty() ? 0 : a[0].size();
  m.columns.resize(m.cols);
  for (std::size_t c = 0; c < m.cols; ++c)
    for (std::size_t r = 0; r < m.rows; ++r)
      if (a[r][c]) m.columns[c].push_back({static_cast<int>(r), static_cast<int>(a[r][c])});
  return m;
}

std::vector<SimplicialComplex> fixture_complexes() {
  return {fixtures::mobius_torus(), fixtures::rp2_6(), fixtures::octahedron(), fixtures::torus9(),
          fixtures::s2xs1_10(), boundary_simplex(4), cyclic_polytope_boundary(5, 9),
          connected_sum(fixtures::rp2_6(), fixtures::rp2_6())};
}

}  // namespace

TEST_CASE("boundary matrices") {
  auto edge = fixtures::from_lists(2, 1, {{1, 2}});
  auto d = boundary_matrices(edge);
  REQUIRE(d.size() == 1);
  CHECK(d[0].to_dense() == std::vector<std::vector<long long>>{{-1}, {1}});

  for (const auto& m : fixture_complexes()) {
    auto maps = boundary_matrices(m);
    for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
      auto lo = maps[k].to_dense(), hi = maps[k + 1].to_dense();
      for (std::size_t r = 0; r < lo.size(); ++r)
        for (std::size_t c = 0; c < hi[0].size(); ++c) {
          long long s = 0;
          for (std::size_t j = 0; j < hi.size(); ++j) s += lo[r][j] * hi[j][c];
          CHECK(s == 0);
        }
    }
  }
  auto tet = boundary_matrices(boundary_simplex(2));
  CHECK(smith_form(tet[0]).rank == 3);
  CHECK(smith_form(tet[1]).rank == 3);
}

TEST_CASE("homology of fixtures") {
  auto rp2 = integer_homology(fixtures::rp2_6());
  CHECK(rp2.betti == std::vector<long long>{1, 0, 0});
  CHECK(rp2.torsion[1] == std::vector<BigInt>{2});
  CHECK(rp2.z2_betti == std::vector<long long>{1, 1, 1});
  CHECK(rp2.format() == "(Z, Z_2, 0)");
  CHECK(integer_homology(fixtures::mobius_torus()).format() == "(Z, Z^2, Z)");
  CHECK(integer_homology(boundary_simplex(5)) == sphere_homology(5));
  CHECK(integer_homology(fixtures::s2xs1_10()).format() == "(Z, Z, Z, Z)");
  auto klein = connected_sum(fixtures::rp2_6(), fixtures::rp2_6());
  CHECK(integer_homology(klein).format() == "(Z, Z + Z_2, 0)");

  for (const auto& m : fixture_complexes()) {
    auto h = integer_homology(m);
    long long chi = 0, chi2 = 0;
    for (std::size_t k = 0; k < h.betti.size(); ++k) {
      long long sign = k % 2 ? -1 : 1;
      chi += sign * h.betti[k];
      chi2 += sign * h.z2_betti[k];
    }
    CHECK(chi == euler_characteristic(m));
    CHECK(chi2 == euler_characteristic(m));
    // Universal coefficients over Z2.
    auto even = [&](std::size_t k) {
      return static_cast<long long>(
          std::count_if(h.torsion[k].begin(), h.torsion[k].end(), [](const BigInt& t) { return t % 2 == 0; }));
    };
    for (std::size_t k = 0; k < h.betti.size(); ++k)
      CHECK(h.z2_betti[k] == h.betti[k] + even(k) + (k ? even(k - 1) : 0));
  }

  HomologyOptions z2_only;
  z2_only.max_integral_faces = 1;
  auto partial = integer_homology(fixtures::rp2_6(), z2_only);
  CHECK_FALSE(partial.integral);
  CHECK(partial.z2_betti == std::vector<long long>{1, 1, 1});
}

TEST_CASE("duality and link checks") {
  CHECK(poincare_z2_check(fixtures::rp2_6()));
  CHECK(poincare_z2_check(fixtures::s2xs1_10()));
  auto cone_over_path = fixtures::from_lists(4, 2, {{1, 2, 4}, {2, 3, 4}});
  CHECK_FALSE(poincare_z2_check(cone_over_path));

  CHECK(link_sphere_homology_check(boundary_simplex(5)));
  CHECK(link_sphere_homology_check(fixtures::mobius_torus()));
  auto cone = join(point(), fixtures::rp2_6());
  CHECK_FALSE(link_sphere_homology_check(cone));
}

TEST_CASE("fundamental group presentations") {
  auto trivial = abelianization(pi1_presentation(boundary_simplex(4)));
  CHECK(trivial.format() == "0");
  CHECK(abelianization(pi1_presentation(fixtures::mobius_torus())).format() == "Z^2");
  CHECK(abelianization(pi1_presentation(fixtures::rp2_6())).format() == "Z_2");
  auto g = builtin_group(GroupFamily::dihedral, 15);
  auto sxs = from_orbits(g, fixtures::reps(fixtures::kD15SxS));
  CHECK(abelianization(pi1_presentation(sxs)).format() == "Z");
  CHECK(abelianization(pi1_presentation(fixtures::s2xs1_10())).format() == "Z");
  for (const auto& m : fixture_complexes())
    CHECK(abelianization(pi1_presentation(m)) == homology_group(integer_homology(m), 1));
}

TEST_CASE("Smith form against determinantal divisors") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(1, 5), entry(-6, 6);
  for (int trial = 0; trial < 150; ++trial) {
    int r = size(rng), c = size(rng);
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
    for (auto& row : a)
      for (auto& x : row) x = trial % 3 ? entry(rng) : entry(rng) * 2;
    auto expected = minors_oracle(a);
    auto sparse = smith_form(sparse_of(a));
    auto dense = smith_form_dense(a);
    CHECK(sparse.rank == expected.rank);
    CHECK(sparse.torsion == expected.torsion);
    CHECK(dense.rank == expected.rank);
    CHECK(dense.torsion == expected.torsion);
  }
}

TEST_CASE("elimination survives 64-bit overflow") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> big(1 << 28, (1 << 30) - 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<long long>> a(4, std::vector<long long>(4));
    for (auto& row : a)
      for (auto& x : row) x = big(rng);
    auto expected = minors_oracle(a);
    auto got = smith_form(sparse_of(a));
    CHECK(got.rank == expected.rank);
    CHECK(got.torsion == expected.torsion);
  }
}
