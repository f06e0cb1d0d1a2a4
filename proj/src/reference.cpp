#include "vtman/reference.hpp"

#include "vtman/error.hpp"

namespace vtman {

SimplicialComplex boundary_simplex(int d) {
  if (d < 0 || d + 2 > kMaxVertices) throw PreconditionError("dimension out of range");
  const Face all = full_face(d + 2);
  std::vector<Face> facets;
  for (int v = 1; v <= d + 2; ++v) facets.push_back(all & ~vertex_bit(v));
  return SimplicialComplex(d + 2, d, std::move(facets));
}

SimplicialComplex cyclic_polytope_boundary(int dim, int n) {
  if (dim < 1 || n < dim + 1 || n > kMaxVertices) throw PreconditionError("cyclic polytope needs n >= dim + 1");
  std::vector<Face> facets;
  for_each_subface_of_size(full_face(n), dim, [&](Face s) {
    // Between any two non-members the run of members must have even length.
    int run = 0;
    bool seen_gap = false;
    for (int v = 1; v <= n; ++v) {
      if (s & vertex_bit(v)) {
        ++run;
      } else {
        if (seen_gap && run % 2 == 1) return;
        seen_gap = true;
        run = 0;
      }
    }
    facets.push_back(s);
  });
  return SimplicialComplex(n, dim - 1, std::move(facets));
}

SimplicialComplex cross_polytope_boundary(int k) {
  if (k < 1 || 2 * k > kMaxVertices) throw PreconditionError("cross-polytope dimension out of range");
  std::vector<Face> facets;
  for (std::uint64_t choice = 0; choice < (std::uint64_t{1} << k); ++choice) {
    Face f = 0;
    for (int i = 1; i <= k; ++i) f |= vertex_bit((choice >> (i - 1) & 1) ? i + k : i);
    facets.push_back(f);
  }
  return SimplicialComplex(2 * k, k - 1, std::move(facets));
}

SimplicialComplex polygon(int k) {
  if (k < 3 || k > kMaxVertices) throw PreconditionError("polygon needs at least 3 vertices");
  std::vector<Face> edges;
  for (int i = 1; i <= k; ++i) edges.push_back(vertex_bit(i) | vertex_bit(i % k + 1));
  return SimplicialComplex(k, 1, std::move(edges));
}

SimplicialComplex point() { return SimplicialComplex(1, 0, {vertex_bit(1)}); }

SimplicialComplex join(const SimplicialComplex& k1, const SimplicialComplex& k2) {
  if (k1.n() + k2.n() > kMaxVertices) throw PreconditionError("join has too many vertices");
  std::vector<Face> facets;
  facets.reserve(k1.facet_count() * k2.facet_count());
  for (Face a : k1.facets())
    for (Face b : k2.facets()) facets.push_back(a | (b << k1.n()));
  return SimplicialComplex(k1.n() + k2.n(), k1.dim() + k2.dim() + 1, std::move(facets), false);
}

SimplicialComplex connected_sum(const SimplicialComplex& k1, const SimplicialComplex& k2) {
  if (k1.dim() != k2.dim()) throw PreconditionError("connected sum needs equal dimensions");
  if (k1.facet_count() == 0 || k2.facet_count() == 0) throw PreconditionError("connected sum of empty complex");
  const int d = k1.dim();
  const int n = k1.n() + k2.n() - (d + 1);
  if (n > kMaxVertices) throw PreconditionError("connected sum has too many vertices");
  const Face removed1 = k1.facets().front();
  const Face removed2 = k2.facets().front();

  std::vector<int> image(k2.n() + 1, 0);
  auto glued1 = vertices_of(removed1);
  auto glued2 = vertices_of(removed2);
  for (std::size_t i = 0; i < glued2.size(); ++i) image[glued2[i]] = glued1[i];
  int next = k1.n();
  for (int v = 1; v <= k2.n(); ++v)
    if (!(removed2 & vertex_bit(v))) image[v] = ++next;

  std::vector<Face> facets(k1.facets().begin() + 1, k1.facets().end());
  for (auto it = k2.facets().begin() + 1; it != k2.facets().end(); ++it) {
    Face f = 0;
    for (int v : vertices_of(*it)) f |= vertex_bit(image[v]);
    facets.push_back(f);
  }
  return SimplicialComplex(n, d, std::move(facets), false);
}

}  // namespace vtman
