#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtman/bistellar.hpp"
#include "vtman/complex.hpp"
#include "vtman/enumerate.hpp"
#include "vtman/groups.hpp"
#include "vtman/record.hpp"

namespace vtman {

nlohmann::json record_to_json(const ManifoldRecord& rec);
ManifoldRecord record_from_json(const nlohmann::json& j);

/// Complex regenerated from a record's orbit representatives.
SimplicialComplex complex_of_record(const ManifoldRecord& rec, const PermutationGroup& g);

/// "S^2", "T^2", "RP^2", "K^2", "#3 T^2", "#4 RP^2"; requires a closed surface.
std::string surface_type(const SimplicialComplex& m);

enum class Tristate { yes, no, unknown };
std::string to_string(Tristate t);

/// Whether every vertex link is a combinatorial sphere. Links of dimension
/// <= 2 are decided exactly; higher links by reduction (unknown on failure).
Tristate links_are_combinatorial_spheres(const SimplicialComplex& m, const ReduceOptions& options);

struct VerifyOptions {
  ReduceOptions reduce;
  HomologyOptions homology;
  bool all_vertex_links = true;  // false: only vertex 1 (vertex-transitive input)
};

struct VerifyReport {
  int n = 0;
  int d = 0;
  FVector f_vector;
  bool pseudomanifold = false;
  std::optional<Face> bad_ridge;
  bool strongly_connected = false;
  long long euler_characteristic = 0;
  std::optional<bool> orientable;
  Tristate manifold = Tristate::unknown;
  std::string surface;  // d == 2 only
  std::optional<HomologyProfile> homology;
  bool poincare_z2 = false;
  bool link_homology = false;
  std::optional<ReduceVerdict> sphere_reduction;
  Verdict verdict = Verdict::pending;

  /// One-line summary, e.g. "2-manifold, χ=0, orientable, torus".
  std::string summary() const;
  /// Multi-line key: value listing.
  std::string format() const;
  nlohmann::json to_json() const;
};

/// Steps 3, 5, 6 and the sphere test on an arbitrary complex.
VerifyReport verify_complex(const SimplicialComplex& m, const VerifyOptions& options = {});

/// Fills status, verdict, type label, homology and remarks of a candidate.
/// Returns false when Step 5 rejects it.
bool verify_candidate(ManifoldRecord& rec, const SimplicialComplex& m, const VerifyOptions& options);

enum class TaskStatus { pending, done, timed_out };
std::string to_string(TaskStatus s);

/// Per (n, d, group) progress; found holds records discovered before a timeout.
struct SweepTask {
  int n = 0;
  int d = 0;
  std::string group;
  TaskStatus status = TaskStatus::pending;
  std::optional<BacktrackCheckpoint> checkpoint;
  std::vector<ManifoldRecord> found;
};

/// Append-only record store: records.jsonl, an index sidecar (key -> symbol)
/// and sweep_state.json in one directory. A default-constructed store lives
/// in memory only.
class CensusStore {
 public:
  CensusStore() = default;
  explicit CensusStore(std::filesystem::path dir);

  const std::vector<ManifoldRecord>& records() const { return records_; }
  bool has_key(const std::string& key) const { return index_.contains(key); }
  std::optional<std::string> symbol_of(const std::string& key) const;

  /// Assigns the next symbol for (d, n, group index) and appends. Throws on a
  /// duplicate key.
  const ManifoldRecord& add(ManifoldRecord rec);

  bool cell_done(int n, int d) const { return done_cells_.contains({n, d}); }
  void mark_cell_done(int n, int d);
  std::map<std::string, SweepTask>& tasks() { return tasks_; }
  const std::map<std::string, SweepTask>& tasks() const { return tasks_; }
  void save_state() const;

  bool partial() const { return partial_; }
  void set_partial(bool p) { partial_ = p; }
  std::vector<std::string>& messages() { return messages_; }
  const std::vector<std::string>& messages() const { return messages_; }
  const std::filesystem::path& dir() const { return dir_; }

  static std::string task_id(int n, int d, const std::string& group);

 private:
  void write_index() const;

  std::filesystem::path dir_;
  std::vector<ManifoldRecord> records_;
  std::map<std::string, std::string> index_;
  std::map<std::string, int> next_k_;
  std::set<std::pair<int, int>> done_cells_;
  std::map<std::string, SweepTask> tasks_;
  bool partial_ = false;
  std::vector<std::string> messages_;
};

struct SweepOptions {
  int threads = 1;
  std::uint64_t seed = 0;
  std::size_t budget = 50'000;  // flip moves per reduction
  std::optional<double> task_seconds;
  /// Group specs per degree instead of the catalog ("cyclic", "dihedral", ...).
  std::vector<std::string> group_specs;
  /// Progress lines (may be null).
  const TraceSink* log = nullptr;
};

/// For each (n, d) cell: groups by decreasing order (ties by catalog index),
/// parallel enumeration, deterministic merge, parallel verification, then
/// symbols in merge order. Completed cells are skipped. A cell with a timed-out
/// task stays uncommitted; its records so far remain in the task state.
void sweep(CensusStore& store, std::pair<int, int> n_range, std::pair<int, int> d_range,
           const std::vector<PermutationGroup>& catalog, const SweepOptions& options);

/// Records of uncommitted cells found so far, in task order.
std::vector<ManifoldRecord> staged_records(const CensusStore& store);

/// "counts": one line per n, "d=2: 0/1, d=3: 1/0" (sphere/non-sphere, with a
/// third "/u" count when undetermined records exist). "orbits": one line per
/// record "symbol | f-vector | group | orbit reps | remarks".
std::string report(const CensusStore& store, const std::string& style);

}  // namespace vtman
