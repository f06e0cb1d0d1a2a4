#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "vtman/complex.hpp"
#include "vtman/groups.hpp"
#include "vtman/reference.hpp"

namespace fixtures {

using vtman::Face;
using vtman::make_face;
using vtman::SimplicialComplex;

inline std::string catalog_path() { return std::string(VTMAN_DATA_DIR) + "/transitive_groups.json"; }

inline std::vector<vtman::PermutationGroup> catalog(std::set<int> degrees) {
  vtman::CatalogOptions opts;
  opts.degrees = std::move(degrees);
  return vtman::load_catalog(catalog_path(), opts);
}

inline SimplicialComplex from_lists(int n, int d, const std::vector<std::vector<int>>& lists, bool spanning = true) {
  std::vector<Face> facets;
  for (const auto& l : lists) facets.push_back(make_face(l));
  return SimplicialComplex(n, d, facets, spanning);
}

/// The 14 triangles printed for the 7-vertex torus.
inline SimplicialComplex mobius_torus() {
  return from_lists(7, 2,
                    {{1, 2, 4}, {1, 2, 6}, {1, 3, 4}, {1, 3, 7}, {1, 5, 6}, {1, 5, 7}, {2, 3, 5}, {2, 3, 7}, {2, 4, 5},
                     {2, 6, 7}, {3, 4, 6}, {3, 5, 6}, {4, 5, 7}, {4, 6, 7}});
}

inline SimplicialComplex rp2_6() {
  return from_lists(6, 2,
                    {{1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}, {2, 5, 6}, {3, 4, 6},
                     {4, 5, 6}});
}

inline SimplicialComplex octahedron() { return vtman::cross_polytope_boundary(3); }

/// 3x3 grid torus: vertex (i, j) has label 3i + j + 1.
inline SimplicialComplex torus9() {
  std::vector<std::vector<int>> tri;
  auto v = [](int i, int j) { return 3 * ((i + 3) % 3) + (j + 3) % 3 + 1; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      tri.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      tri.push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
    }
  for (auto& t : tri) std::sort(t.begin(), t.end());
  return from_lists(9, 2, tri);
}

/// Stacked 2-sphere: start from the tetrahedron and subdivide facets in the
/// given order (index into the current lex-sorted facet list).
inline SimplicialComplex stacked_sphere(const std::vector<int>& picks) {
  std::vector<Face> facets = vtman::boundary_simplex(2).facets();
  int n = 4;
  for (int p : picks) {
    std::sort(facets.begin(), facets.end(), vtman::LexLess{});
    Face f = facets[p % facets.size()];
    facets.erase(facets.begin() + (p % facets.size()));
    ++n;
    for (int v : vtman::vertices_of(f)) facets.push_back((f & ~vtman::vertex_bit(v)) | vtman::vertex_bit(n));
  }
  return SimplicialComplex(n, 2, facets);
}

/// Orbit representatives from the compact table notation.
inline std::vector<Face> reps(const std::vector<std::vector<int>>& lists) {
  std::vector<Face> out;
  for (const auto& l : lists) out.push_back(make_face(l));
  return out;
}

inline const std::vector<std::vector<int>> kD15SxS{{1, 2, 3, 4, 5, 6, 8}, {1, 2, 3, 4, 5, 7, 8}, {1, 2, 3, 4, 6, 7, 8}};

inline const std::vector<std::vector<int>> kD15S3xS3{
    {1, 2, 3, 4, 5, 8, 10}, {1, 2, 3, 4, 5, 8, 11}, {1, 2, 3, 4, 6, 8, 9},  {1, 2, 3, 4, 6, 8, 14},
    {1, 2, 3, 4, 6, 9, 12}, {1, 2, 3, 4, 7, 8, 9},  {1, 2, 3, 4, 7, 8, 10}, {1, 2, 3, 5, 7, 8, 10},
    {1, 2, 3, 5, 7, 10, 13}, {1, 2, 4, 5, 8, 10, 11}, {1, 2, 4, 7, 8, 11, 14}};

inline const std::vector<std::vector<int>> kD13Cyclic{{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                                                      {1, 2, 3, 4, 5, 6, 7, 8, 10, 11},
                                                      {1, 2, 3, 4, 5, 6, 8, 9, 10, 11},
                                                      {1, 2, 3, 4, 5, 6, 8, 9, 11, 12},
                                                      {1, 2, 3, 4, 6, 7, 8, 9, 11, 12}};

/// 10-vertex S^2 x S^1 under the dihedral group of order 20.
inline SimplicialComplex s2xs1_10() {
  auto g = vtman::builtin_group(vtman::GroupFamily::dihedral, 10);
  auto m = vtman::from_orbits(g, reps({{1, 2, 3, 5}, {1, 2, 4, 5}}));
  return SimplicialComplex(10, 3, m.facets());
}

inline vtman::Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i + 1;
  std::shuffle(images.begin(), images.end(), rng);
  return vtman::Permutation::from_images(images);
}

}  // namespace fixtures
