#pragma once

#include "vtman/complex.hpp"

namespace vtman {

/// All (d+1)-subsets of {1..d+2}.
SimplicialComplex boundary_simplex(int d);

/// Boundary of the cyclic polytope of dimension `dim` on n vertices, facets by
/// Gale's evenness condition. Requires n >= dim + 1.
SimplicialComplex cyclic_polytope_boundary(int dim, int n);

/// Boundary of the k-dimensional cross-polytope on 2k vertices; i and i+k are antipodal.
SimplicialComplex cross_polytope_boundary(int k);

/// Cycle 1-2-...-k-1 (k >= 3).
SimplicialComplex polygon(int k);

/// Single vertex, dimension 0.
SimplicialComplex point();

/// Vertices of k2 are shifted past those of k1.
SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2);

/// Removes the lex-first facet of each summand and glues the boundaries by the
/// order-preserving bijection of their vertex sets.
SimplicialComplex connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2);

}  // namespace vtman
