#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vtman/complex.hpp"

namespace vtman {

/// Replaces star(face) = face * boundary(cofacet) by boundary(face) * cofacet.
/// i = |face| - 1; i = d subdivides a facet with a new vertex (cofacet is that
/// single vertex), i = 0 removes the vertex `face`.
struct FlipMove {
  Face face = 0;
  Face cofacet = 0;

  int index() const { return face_size(face) - 1; }
  FlipMove inverse() const { return {cofacet, face}; }
  /// "1 2 | 3 4"
  std::string format() const;
  static FlipMove parse(const std::string& line);
  bool operator==(const FlipMove&) const = default;
};

/// All admissible moves; subdivisions use the smallest unused label.
std::vector<FlipMove> valid_moves(const SimplicialComplex& m, bool include_subdivisions = true);

bool is_admissible(const SimplicialComplex& m, const FlipMove& move);

/// Throws PreconditionError unless the move is admissible. The result keeps
/// the original labels (n grows for a subdivision with a fresh label).
SimplicialComplex apply_move(const SimplicialComplex& m, const FlipMove& move);

enum class ReduceVerdict { boundary_of_simplex, reduced_but_unrecognized, budget_exhausted };
std::string to_string(ReduceVerdict v);

struct ReduceOptions {
  std::uint64_t seed = 0;
  std::size_t budget = 50'000;       // applied moves
  std::size_t heat_after = 2'000;    // stalled moves before heating
  std::size_t heat_moves = 50;
  std::size_t max_heat_rounds = 30;  // heating rounds without improvement
};

struct ReduceResult {
  SimplicialComplex complex;  // compacted to labels 1..m
  ReduceVerdict verdict = ReduceVerdict::budget_exhausted;
  std::vector<FlipMove> moves;  // in the labels of the input and fresh labels
};

/// Seeded greedy reduction with random neutral moves and heating.
ReduceResult reduce(const SimplicialComplex& m, const ReduceOptions& options = {});

/// Reduction of link(vertex 1); boundary_of_simplex certifies a PL sphere.
ReduceResult links_are_spheres(const SimplicialComplex& m, const ReduceOptions& options = {});

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<FlipMove> moves;
};

/// One-sided search from a toward b; "not equivalent" is never concluded.
EquivalenceResult bistellar_equivalent(const SimplicialComplex& a, const SimplicialComplex& b,
                                       const ReduceOptions& options = {});

/// Replays a move sequence; throws if a move is not admissible.
SimplicialComplex replay_moves(const SimplicialComplex& m, const std::vector<FlipMove>& moves);

std::string format_moves(const std::vector<FlipMove>& moves);
std::vector<FlipMove> parse_moves(const std::string& text);

/// Unbiased draw in [0, bound). std::mt19937_64 output is fixed by the
/// standard; the distribution objects are not, hence the rejection sampling.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vtman
