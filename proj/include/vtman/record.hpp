#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtman/complex.hpp"
#include "vtman/homology.hpp"

namespace vtman {

enum class RecordStatus { candidate, verified_manifold, sphere, typed, rejected };

std::string to_string(RecordStatus s);
RecordStatus parse_status(const std::string& s);

/// Sphere recognition outcome used for census counts.
enum class Verdict { pending, sphere, non_sphere, undetermined };

std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

struct OrbitRep {
  Face representative = 0;
  std::size_t size = 0;
  bool operator==(const OrbitRep&) const = default;
};

/// One census entry. The group fields describe the acting group that
/// discovered the complex, not a certified automorphism group.
struct ManifoldRecord {
  std::string symbol;  // "^d n^i_k"
  int n = 0;
  int d = 0;
  std::string group;  // catalog ref ("t7n4") or name
  std::string group_name;
  std::uint64_t group_order = 0;
  int group_index = 0;
  std::vector<OrbitRep> orbit_reps;
  FVector f_vector;
  std::string as_det;
  std::string key;
  RecordStatus status = RecordStatus::candidate;
  Verdict verdict = Verdict::pending;
  std::string type_label;
  std::optional<HomologyProfile> homology;
  std::uint64_t seed = 0;
  std::string remarks;

  /// "1234568_30 1234578_30 1234678_30"
  std::string format_orbits() const;
};

/// "^d n^i_k" with i the catalog index (or the group ref when unknown).
std::string make_symbol(int d, int n, const std::string& group_index, int k);

}  // namespace vtman
