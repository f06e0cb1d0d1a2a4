#include "vtman/enumerate.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "vtman/classify.hpp"
#include "vtman/error.hpp"
#include "vtman/reference.hpp"

namespace vtman {

std::string BacktrackCheckpoint::to_json() const {
  nlohmann::json j;
  j["chosen"] = chosen;
  j["pointer"] = pointer;
  j["finished"] = finished;
  j["emissions"] = emissions;
  return j.dump();
}

BacktrackCheckpoint BacktrackCheckpoint::from_json(const std::string& text) {
  BacktrackCheckpoint cp;
  try {
    auto j = nlohmann::json::parse(text);
    cp.chosen = j.at("chosen").get<std::vector<int>>();
    cp.pointer = j.at("pointer").get<int>();
    cp.finished = j.value("finished", false);
    cp.emissions = j.value("emissions", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad checkpoint: ") + e.what());
  }
  return cp;
}

Backtracker::Backtracker(const OrbitIncidence& inc)
    : inc_(inc), rows_(static_cast<int>(inc.row_count())), words_((inc.column_count() + 63) / 64) {
  if (words_ == 0) words_ = 1;
  ones_row_.assign(rows_, std::vector<std::uint64_t>(words_, 0));
  twos_row_.assign(rows_, std::vector<std::uint64_t>(words_, 0));
  block_of_row_.assign(rows_, 0);
  for (int r = 0; r < rows_; ++r) {
    for (const auto& e : inc.rows[r]) {
      auto& target = e.t == 1 ? ones_row_[r] : twos_row_[r];
      if (e.t > 2) throw PreconditionError("incidence entries must be 1 or 2");
      target[e.column / 64] |= std::uint64_t{1} << (e.column % 64);
    }
  }
  for (std::size_t b = 0; b < inc.blocks.size(); ++b)
    for (int r = inc.blocks[b].row_begin; r < inc.blocks[b].row_end; ++r) block_of_row_[r] = static_cast<int>(b);
  ones_.assign((rows_ + 1) * words_, 0);
  twos_.assign((rows_ + 1) * words_, 0);
}

bool Backtracker::row_fits(int row, std::size_t level) const {
  const std::uint64_t* ones = &ones_[level * words_];
  const std::uint64_t* twos = &twos_[level * words_];
  for (std::size_t w = 0; w < words_; ++w) {
    if (twos_row_[row][w] & (ones[w] | twos[w])) return false;
    if (ones_row_[row][w] & twos[w]) return false;
  }
  return true;
}

void Backtracker::push(int row) {
  std::size_t level = chosen_.size();
  const std::uint64_t* ones = &ones_[level * words_];
  const std::uint64_t* twos = &twos_[level * words_];
  std::uint64_t* next_ones = &ones_[(level + 1) * words_];
  std::uint64_t* next_twos = &twos_[(level + 1) * words_];
  for (std::size_t w = 0; w < words_; ++w) {
    next_ones[w] = ones[w] ^ ones_row_[row][w];
    next_twos[w] = twos[w] | twos_row_[row][w] | (ones_row_[row][w] & ones[w]);
  }
  chosen_.push_back(row);
}

int Backtracker::settle(int pointer, std::string* note) const {
  std::size_t level = chosen_.size();
  const std::uint64_t* ones = &ones_[level * words_];
  const std::uint64_t* twos = &twos_[level * words_];
  while (pointer < rows_) {
    const auto& block = inc_.blocks[block_of_row_[pointer]];
    int c = block.first_column;
    if (!(twos[c / 64] >> (c % 64) & 1)) break;
    pointer = block.row_end;
    if (note) *note = "block";
  }
  if (pointer < rows_) {
    for (std::size_t w = 0; w < words_; ++w) {
      if (ones[w] == 0) continue;
      int first_one = static_cast<int>(w * 64) + std::countr_zero(ones[w]);
      if (first_one < inc_.first_column(pointer)) {
        if (note) *note = "open";
        return rows_;
      }
      break;
    }
  }
  return pointer;
}

std::string Backtracker::row_name(int row) const {
  if (rows_ <= 26) return std::string(1, static_cast<char>('a' + row));
  return "r" + std::to_string(row + 1);
}

std::string Backtracker::pointer_string(int pointer) const { return pointer >= rows_ ? "END" : row_name(pointer); }

std::string Backtracker::combination_string(int extra_row) const {
  std::string out;
  for (int r : chosen_) out += (out.empty() ? "" : "+") + row_name(r);
  if (extra_row >= 0) out += (out.empty() ? "" : "+") + row_name(extra_row);
  return out.empty() ? "-" : out;
}

std::string Backtracker::sum_string(int extra_row) const {
  std::vector<int> sums(inc_.column_count(), 0);
  auto add = [&](int r) {
    for (const auto& e : inc_.rows[r]) sums[e.column] += e.t;
  };
  for (int r : chosen_) add(r);
  if (extra_row >= 0) add(extra_row);
  std::string out = "(";
  for (std::size_t c = 0; c < sums.size(); ++c) out += (c ? "," : "") + std::to_string(sums[c]);
  return out + ")";
}

Backtracker::Status Backtracker::run(const std::function<bool(const std::vector<int>&)>& emit,
                                     std::optional<std::chrono::steady_clock::time_point> deadline,
                                     const TraceSink* trace) {
  auto say = [&](int extra_row, const std::string& action) {
    if (trace) (*trace)(combination_string(extra_row) + ": " + sum_string(extra_row) + " " + action);
  };
  auto moved = [&](const std::string& note) {
    if (note == "block") return "First entry is 2: set pointer to " + pointer_string(pointer_) + ".";
    if (note == "open") return std::string("Open entry 1 cannot be closed: set pointer to END.");
    return "Set pointer to " + pointer_string(pointer_) + ".";
  };

  if (finished_) return Status::finished;
  std::string note;
  if (!started_) {
    started_ = true;
    pointer_ = settle(0, &note);
    say(-1, moved(note));
  }
  std::uint64_t iterations = 0;
  while (true) {
    if (deadline && (++iterations & 1023) == 0 && std::chrono::steady_clock::now() >= *deadline)
      return Status::deadline;
    note.clear();
    if (pointer_ >= rows_) {
      if (chosen_.empty()) {
        finished_ = true;
        return Status::finished;
      }
      int r = chosen_.back();
      chosen_.pop_back();
      pointer_ = settle(r + 1, &note);
      say(-1, moved(note));
      continue;
    }
    int r = pointer_;
    if (!row_fits(r, chosen_.size())) {
      say(r, "Invalid combination! Set pointer to END.");
      pointer_ = settle(r + 1, &note);
      say(-1, moved(note));
      continue;
    }
    push(r);
    bool closed = true;
    for (std::size_t w = 0; w < words_; ++w)
      if (ones_[chosen_.size() * words_ + w] != 0) closed = false;
    if (closed) {
      ++emissions_;
      say(-1, "Candidate! Set pointer to END.");
      pointer_ = rows_;
      if (!emit(chosen_)) return Status::stopped;
      continue;
    }
    pointer_ = settle(r + 1, &note);
    say(-1, moved(note));
  }
}

BacktrackCheckpoint Backtracker::checkpoint() const {
  BacktrackCheckpoint cp;
  cp.chosen = chosen_;
  cp.pointer = started_ ? pointer_ : 0;
  cp.finished = finished_;
  cp.emissions = emissions_;
  return cp;
}

void Backtracker::restore(const BacktrackCheckpoint& cp) {
  chosen_.clear();
  for (int r : cp.chosen) {
    if (r < 0 || r >= rows_ || (!chosen_.empty() && r <= chosen_.back()))
      throw InputError("checkpoint rows do not match the incidence matrix");
    push(r);
  }
  if (cp.pointer < 0 || cp.pointer > rows_) throw InputError("checkpoint pointer out of range");
  pointer_ = cp.pointer;
  finished_ = cp.finished;
  emissions_ = cp.emissions;
  started_ = true;
}

SimplicialComplex assemble_rows(const OrbitIncidence& inc, const std::vector<int>& rows) {
  std::vector<Face> facets;
  for (int r : rows)
    facets.insert(facets.end(), inc.facet_orbits[r].members.begin(), inc.facet_orbits[r].members.end());
  return SimplicialComplex(inc.n, inc.d, std::move(facets), false);
}

std::size_t backtrack(const OrbitIncidence& inc, const std::function<void(const CandidateEmission&)>& emit) {
  Backtracker bt(inc);
  std::size_t count = 0;
  bt.run([&](const std::vector<int>& rows) {
    ++count;
    emit(CandidateEmission{rows, assemble_rows(inc, rows)});
    return true;
  });
  return count;
}

ManifoldRecord make_record(const PermutationGroup& g, const SimplicialComplex& m, std::vector<OrbitRep> reps,
                           std::string key) {
  ManifoldRecord rec;
  rec.n = m.n();
  rec.d = m.dim();
  rec.group = g.ref();
  rec.group_name = g.name();
  rec.group_order = g.order().value_or(0);
  rec.group_index = g.catalog_index();
  std::sort(reps.begin(), reps.end(),
            [](const OrbitRep& a, const OrbitRep& b) { return lex_less(a.representative, b.representative); });
  rec.orbit_reps = std::move(reps);
  rec.f_vector = f_vector(m);
  rec.as_det = as_determinant(m).str();
  rec.key = std::move(key);
  return rec;
}

EnumerateResult enumerate_vt(int n, int d, const PermutationGroup& g, const EnumerateOptions& options) {
  if (g.degree() != n) throw PreconditionError("group degree differs from n");
  if (d < 2 || d > n - 2) throw PreconditionError("dimension must satisfy 2 <= d <= n-2");
  if (!is_transitive(g)) throw PreconditionError("group " + g.ref() + " is not transitive");

  EnumerateResult result;
  std::set<std::string> local;
  auto seen = [&](const std::string& key) {
    return local.contains(key) || (options.known_keys && options.known_keys->contains(key));
  };

  if (g.is_symmetric_or_alternating()) {
    // Only the boundary of the simplex is invariant under these actions.
    result.checkpoint.finished = true;
    if (n == d + 2) {
      auto m = boundary_simplex(d);
      auto key = canonical_key(m);
      ++result.stats.emissions;
      if (!seen(key)) {
        result.records.push_back(make_record(g, m, {{full_face(n - 1), static_cast<std::size_t>(n)}}, key));
        result.complexes.push_back(m);
      } else {
        ++result.stats.duplicates;
      }
    }
    return result;
  }

  OrbitIncidence inc = build_incidence(g, d);
  Backtracker bt(inc);
  if (options.resume) bt.restore(*options.resume);
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (options.budget_seconds)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(*options.budget_seconds));

  auto status = bt.run(
      [&](const std::vector<int>& rows) {
        ++result.stats.emissions;
        SimplicialComplex m = assemble_rows(inc, rows);
        if (!is_strongly_connected(m)) {
          ++result.stats.rejected_strong_connectivity;
          return true;
        }
        if (!step3_tests(m).pass) {
          ++result.stats.rejected_step3;
          return true;
        }
        std::string key = canonical_key(m, &g);
        if (seen(key)) {
          ++result.stats.duplicates;
          return true;
        }
        local.insert(key);
        std::vector<OrbitRep> reps;
        for (int r : rows) reps.push_back({inc.facet_orbits[r].representative, inc.facet_orbits[r].size});
        result.records.push_back(make_record(g, m, std::move(reps), key));
        result.complexes.push_back(std::move(m));
        return true;
      },
      deadline, options.trace);
  result.complete = status == Backtracker::Status::finished;
  result.checkpoint = bt.checkpoint();
  return result;
}

}  // namespace vtman
