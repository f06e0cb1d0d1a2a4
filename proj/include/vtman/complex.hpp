#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vtman/face.hpp"
#include "vtman/groups.hpp"

namespace vtman {

struct FVector {
  std::vector<std::uint64_t> counts;  // f_0 .. f_d

  long long euler_characteristic() const;
  /// "(15,105,...,90)" with f_0 included.
  std::string format_full() const;
  /// Table convention "(105,...,90)": f_0 omitted.
  std::string format_table() const;
  bool operator==(const FVector&) const = default;
  auto operator<=>(const FVector&) const = default;
};

/// Pure simplicial complex given by its facets, lex-sorted and pairwise
/// distinct. Vertex labels lie in 1..n; a spanning complex uses all of them.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Throws InputError on duplicate facets, wrong facet sizes, labels > n,
  /// or (when require_spanning) unused labels. d = -1 with the single empty
  /// facet is the link of a facet.
  SimplicialComplex(int n, int d, std::vector<Face> facets, bool require_spanning = true);

  int n() const { return n_; }
  int dim() const { return d_; }
  const std::vector<Face>& facets() const { return facets_; }
  std::size_t facet_count() const { return facets_.size(); }

  /// Union of all facets.
  Face vertex_set() const;
  int vertex_count() const { return face_size(vertex_set()); }

  /// True when f lies in some facet.
  bool has_face(Face f) const;
  bool has_facet(Face f) const;

  /// Order-preserving relabeling of the used vertices onto 1..m.
  SimplicialComplex compacted() const;

  /// Image under a vertex map given as 1-based images of 1..n.
  SimplicialComplex relabeled(const Permutation& p) const;

  bool operator==(const SimplicialComplex& other) const = default;

 private:
  int n_ = 0;
  int d_ = -1;
  std::vector<Face> facets_;
};

/// Union of the orbits of the given representatives (set union).
SimplicialComplex from_orbits(const PermutationGroup& g, const std::vector<Face>& reps);

FVector f_vector(const SimplicialComplex& m);

SimplicialComplex link(const SimplicialComplex& m, Face face);
SimplicialComplex star(const SimplicialComplex& m, Face face);

bool is_pseudomanifold(const SimplicialComplex& m);

/// A ridge not contained in exactly two facets, if any.
std::optional<Face> find_bad_ridge(const SimplicialComplex& m);

bool is_connected(const SimplicialComplex& m);
bool is_strongly_connected(const SimplicialComplex& m);
long long euler_characteristic(const SimplicialComplex& m);

/// Requires a pseudomanifold. Each strong component is oriented by propagation.
bool is_orientable(const SimplicialComplex& m);

struct Step3Result {
  bool pass = false;
  std::string reason;  // empty on pass
};

/// Connectivity and Euler characteristic of the links at vertex 1: the vertex
/// link, edge links (d >= 3) and triangle links (d >= 4).
Step3Result step3_tests(const SimplicialComplex& m);

/// Complex file: first line "n d", then one facet per line (1-based labels).
SimplicialComplex read_complex(std::istream& in);
SimplicialComplex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const SimplicialComplex& m);

/// Facet list in GAP list syntax, wrapped like GAP's printer.
std::string format_gap(const SimplicialComplex& m);

}  // namespace vtman
