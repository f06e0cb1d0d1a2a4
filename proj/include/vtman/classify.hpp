#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vtman/complex.hpp"
#include "vtman/groups.hpp"

namespace vtman {

using BigInt = boost::multiprecision::cpp_int;

/// det(A A^T) for the vertex-facet incidence matrix A over the used vertices.
BigInt as_determinant(const SimplicialComplex& m);

/// Smallest unit m mod n whose multiplication map carries facets(a) onto
/// facets(b); n is a.n().
std::optional<int> multiplication_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b);

/// A vertex bijection phi (as a permutation of 1..n) with phi(a) = b, if one
/// exists. Both complexes must be strongly connected pseudomanifolds on the
/// same labels 1..n. When b_facet_reps is given, only those facets of b are
/// tried as images of the fixed starting facet of a; every facet of b must then
/// lie in the orbit of one of them under an automorphism group of b.
std::optional<Permutation> are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b,
                                          const std::vector<Face>* b_facet_reps = nullptr);

/// Isomorphism-invariant key: f-vector, AS determinant and the minimal
/// relabeled facet list over all propagation labelings. Known automorphisms
/// (optional) only speed up the search; the key does not depend on them.
std::string canonical_key(const SimplicialComplex& m, const PermutationGroup* automorphisms = nullptr);

/// Relabeled facet list obtained by propagating labels 1..d+1 from the
/// ordered facet `start` across ridges. Exposed for tests.
std::vector<Face> propagation_labeling(const SimplicialComplex& m, const std::vector<int>& start);

/// C(n-4, 3) >= 10 (chi - 2).
bool kuehnel_bound_check(int n, long long chi);

enum class BrehmKuehnel { must_be_sphere, sphere_or_projective_like, unconstrained };
BrehmKuehnel brehm_kuehnel_bound(int n, int d);
std::string to_string(BrehmKuehnel b);

}  // namespace vtman
