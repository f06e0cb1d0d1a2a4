#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vtman/complex.hpp"
#include "vtman/groups.hpp"
#include "vtman/orbits.hpp"
#include "vtman/record.hpp"

namespace vtman {

/// Search position: chosen rows (increasing) and the pointer (row index, or
/// the row count for END).
struct BacktrackCheckpoint {
  std::vector<int> chosen;
  int pointer = 0;
  bool finished = false;
  std::size_t emissions = 0;

  std::string to_json() const;
  static BacktrackCheckpoint from_json(const std::string& text);
  bool operator==(const BacktrackCheckpoint&) const = default;
};

using TraceSink = std::function<void(const std::string&)>;

/// Resumable search for row sets whose column sums are all 0 or 2.
class Backtracker {
 public:
  enum class Status { finished, deadline, stopped };

  explicit Backtracker(const OrbitIncidence& inc);

  /// Runs until the search ends, the deadline passes, or emit returns false.
  /// emit receives the chosen rows of each closed combination.
  Status run(const std::function<bool(const std::vector<int>&)>& emit,
             std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
             const TraceSink* trace = nullptr);

  BacktrackCheckpoint checkpoint() const;
  void restore(const BacktrackCheckpoint& cp);

  /// Row label used in traces: a, b, c, ... (r27, r28, ... past z).
  std::string row_name(int row) const;

 private:
  int settle(int pointer, std::string* note) const;
  bool row_fits(int row, std::size_t level) const;
  void push(int row);
  std::string sum_string(int extra_row) const;
  std::string combination_string(int extra_row) const;
  std::string pointer_string(int pointer) const;

  const OrbitIncidence& inc_;
  int rows_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> ones_row_, twos_row_;  // t = 1 and t = 2 columns per row
  std::vector<int> block_of_row_;
  std::vector<std::uint64_t> ones_, twos_;  // per level, words_ each
  std::vector<int> chosen_;
  int pointer_ = 0;
  bool finished_ = false;
  bool started_ = false;
  std::size_t emissions_ = 0;
};

struct CandidateEmission {
  std::vector<int> rows;
  SimplicialComplex complex;
};

/// Complex formed by the orbits of the given rows.
SimplicialComplex assemble_rows(const OrbitIncidence& inc, const std::vector<int>& rows);

/// Runs the search to completion, emitting every closed combination in order.
std::size_t backtrack(const OrbitIncidence& inc, const std::function<void(const CandidateEmission&)>& emit);

struct EnumerateOptions {
  std::optional<double> budget_seconds;
  /// Where to resume from (empty: start fresh).
  std::optional<BacktrackCheckpoint> resume;
  const TraceSink* trace = nullptr;
  /// Keys already present (e.g. from larger groups); matching complexes are skipped.
  const std::set<std::string>* known_keys = nullptr;
};

struct EnumerateStats {
  std::size_t emissions = 0;
  std::size_t rejected_strong_connectivity = 0;
  std::size_t rejected_step3 = 0;
  std::size_t duplicates = 0;
};

struct EnumerateResult {
  std::vector<ManifoldRecord> records;
  bool complete = true;
  BacktrackCheckpoint checkpoint;
  EnumerateStats stats;
  std::vector<SimplicialComplex> complexes;  // parallel to records
};

/// Steps 2 to 4 for one group: search, strong connectivity, link tests at
/// vertex 1 and deduplication by canonical key.
EnumerateResult enumerate_vt(int n, int d, const PermutationGroup& g, const EnumerateOptions& options = {});

/// Builds a candidate record (orbit data, f-vector, determinant, key).
ManifoldRecord make_record(const PermutationGroup& g, const SimplicialComplex& m, std::vector<OrbitRep> reps,
                           std::string key);

}  // namespace vtman
