#pragma once

// Vertex sets of simplicial complexes are packed into 64-bit masks: vertex v
// (1-based) occupies bit v-1. Every module shares this representation.

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace vtman {

using Face = std::uint64_t;

inline constexpr int kMaxVertices = 64;

constexpr Face vertex_bit(int v) { return Face{1} << (v - 1); }

constexpr int face_size(Face f) { return std::popcount(f); }

/// Smallest vertex of a nonempty face.
constexpr int min_vertex(Face f) { return std::countr_zero(f) + 1; }

constexpr bool contains(Face outer, Face inner) { return (outer & inner) == inner; }

/// All vertices 1..n.
constexpr Face full_face(int n) { return n >= 64 ? ~Face{0} : (Face{1} << n) - 1; }

Face make_face(std::initializer_list<int> vertices);
Face make_face(std::span<const int> vertices);

std::vector<int> vertices_of(Face f);

/// Lexicographic order on sorted vertex tuples (a proper prefix sorts first).
bool lex_less(Face a, Face b);

struct LexLess {
  bool operator()(Face a, Face b) const { return lex_less(a, b); }
};

/// Compact table notation: single digits run together, labels >= 10 are
/// space separated ("12357 10 13").
std::string format_face(Face f);

/// Parses the compact notation back. Only unambiguous for strictly increasing
/// labels, which is what format_face produces.
Face parse_compact_face(const std::string& text);

/// Space separated labels ("1 2 3 5").
std::string format_face_spaced(Face f);

/// Calls fn(sub) for every nonempty subset of f (including f itself).
template <typename Fn>
void for_each_subface(Face f, Fn&& fn) {
  for (Face sub = f; sub != 0; sub = (sub - 1) & f) fn(sub);
}

/// Calls fn(sub) for every subset of f with exactly k elements.
template <typename Fn>
void for_each_subface_of_size(Face f, int k, Fn&& fn) {
  for_each_subface(f, [&](Face sub) {
    if (face_size(sub) == k) fn(sub);
  });
}

}  // namespace vtman
