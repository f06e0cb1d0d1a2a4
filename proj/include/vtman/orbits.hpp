#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vtman/face.hpp"
#include "vtman/groups.hpp"

namespace vtman {

/// Applies the generators of a group to masks via per-byte lookup tables.
class MaskMapper {
 public:
  explicit MaskMapper(const PermutationGroup& g);
  std::size_t generator_count() const { return tables_.size(); }
  Face apply(std::size_t generator, Face f) const {
    const auto& t = tables_[generator];
    Face out = 0;
    for (int byte = 0; f != 0; ++byte, f >>= 8) out |= t[byte][f & 0xff];
    return out;
  }

 private:
  std::vector<std::array<std::array<Face, 256>, 8>> tables_;
};

struct SubsetOrbit {
  Face representative = 0;  // lex-minimal member
  std::size_t size = 0;
  int k = 0;
  std::vector<Face> members;  // lex-sorted
};

/// Orbits of all k-subsets of {1..n} under the group, sorted by representative.
/// Only generators are applied, so groups of any order are fine.
std::vector<SubsetOrbit> orbits_of_k_subsets(const PermutationGroup& g, int k);

/// Number of members of facet_orbit that contain the ridge orbit's representative.
int inclusion_multiplicity(const SubsetOrbit& facet_orbit, const SubsetOrbit& ridge_orbit);

/// "1235_14"
std::string format_orbit(const SubsetOrbit& orbit);

struct IncidenceEntry {
  int column;
  int t;
};

struct IncidenceBlock {
  int first_column;
  int row_begin;  // half-open range of rows
  int row_end;
};

/// Facet-orbit x ridge-orbit multiplicity matrix after pruning. Rows are
/// ordered by (first present column, representative); columns by representative.
struct OrbitIncidence {
  int n = 0;
  int d = 0;
  std::vector<SubsetOrbit> facet_orbits;
  std::vector<SubsetOrbit> ridge_orbits;
  std::vector<std::vector<IncidenceEntry>> rows;  // sorted by column
  std::vector<IncidenceBlock> blocks;

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return ridge_orbits.size(); }
  int entry(std::size_t row, std::size_t column) const;
  int first_column(std::size_t row) const { return rows[row].front().column; }

  /// Dense rendering with '.' for missing entries, one row per line.
  std::string format() const;
};

OrbitIncidence build_incidence(const PermutationGroup& g, int d);

/// Builds the pruned incidence structure for caller-supplied orbits; exposed
/// so the pruning and block layout can be checked on hand-made instances.
OrbitIncidence assemble_incidence(int n, int d, std::vector<SubsetOrbit> facet_orbits,
                                  std::vector<SubsetOrbit> ridge_orbits);

}  // namespace vtman
