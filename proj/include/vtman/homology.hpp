#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vtman/complex.hpp"

namespace vtman {

using BigInt = boost::multiprecision::cpp_int;

/// Integer matrix stored by columns: (row, value) pairs with nonzero values.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<int, int>>> columns;

  std::vector<std::vector<long long>> to_dense() const;
};

/// Boundary maps d_1..d_dim; d_k has rows indexed by the lex-sorted (k-1)-faces
/// and columns by the lex-sorted k-faces. Removing the j-th vertex (0-based,
/// increasing labels) contributes (-1)^j.
std::vector<SparseMatrix> boundary_matrices(const SimplicialComplex& m);

/// Rank and the diagonal entries > 1 (invariant factors) of a Smith normal form.
struct SmithForm {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

SmithForm smith_form(const SparseMatrix& a);
SmithForm smith_form_dense(const std::vector<std::vector<long long>>& a);

/// Rank over the two-element field.
std::size_t rank_mod2(const SparseMatrix& a);

struct HomologyProfile {
  bool integral = true;                     // false when only Z2 data was computed
  std::vector<long long> betti;             // beta_0 .. beta_d
  std::vector<std::vector<BigInt>> torsion;  // per dimension
  std::vector<long long> z2_betti;

  /// "(Z, 0, Z_2, 0, 0, Z)"; "Z^2 + Z_2" for mixed groups.
  std::string format() const;
  bool operator==(const HomologyProfile&) const = default;
};

struct HomologyOptions {
  /// Above this many faces in total only Z2 ranks are computed.
  std::size_t max_integral_faces = 2'000'000;
};

HomologyProfile integer_homology(const SimplicialComplex& m, const HomologyOptions& options = {});

/// Homology of the d-sphere.
HomologyProfile sphere_homology(int d);

/// True when the Z2 Betti numbers are symmetric.
bool poincare_z2_check(const SimplicialComplex& m);
bool poincare_z2_check(const HomologyProfile& h);

/// Homology of link(vertex 1) equals that of a (d-1)-sphere.
bool link_sphere_homology_check(const SimplicialComplex& m);

/// Edge-path presentation: generators are edges outside a spanning tree, one
/// relator per triangle. Letters are +-(generator index + 1).
struct Presentation {
  std::vector<Face> generator_edges;
  std::vector<std::vector<int>> relators;

  std::string format() const;
};

/// Presentation after removing generators killed by length-one relators and
/// dropping relators that reduce to the empty word.
Presentation pi1_presentation(const SimplicialComplex& m);

struct AbelianGroup {
  long long rank = 0;
  std::vector<BigInt> torsion;
  std::string format() const;  // "Z^2 + Z_3", "0"
  bool operator==(const AbelianGroup&) const = default;
};

AbelianGroup abelianization(const Presentation& p);

/// H_k as an abelian group, read off a profile.
AbelianGroup homology_group(const HomologyProfile& h, int k);

}  // namespace vtman
