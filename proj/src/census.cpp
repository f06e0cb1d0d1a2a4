#include "vtman/census.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "vtman/classify.hpp"
#include "vtman/error.hpp"
#include "vtman/homology.hpp"

namespace vtman {

using nlohmann::json;

std::string to_string(RecordStatus s) {
  switch (s) {
    case RecordStatus::candidate: return "candidate";
    case RecordStatus::verified_manifold: return "verified_manifold";
    case RecordStatus::sphere: return "sphere";
    case RecordStatus::typed: return "typed";
    case RecordStatus::rejected: return "rejected";
  }
  return "candidate";
}

RecordStatus parse_status(const std::string& s) {
  for (auto v : {RecordStatus::candidate, RecordStatus::verified_manifold, RecordStatus::sphere, RecordStatus::typed,
                 RecordStatus::rejected})
    if (to_string(v) == s) return v;
  throw InputError("unknown record status: " + s);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pending: return "pending";
    case Verdict::sphere: return "sphere";
    case Verdict::non_sphere: return "non_sphere";
    case Verdict::undetermined: return "undetermined";
  }
  return "pending";
}

Verdict parse_verdict(const std::string& s) {
  for (auto v : {Verdict::pending, Verdict::sphere, Verdict::non_sphere, Verdict::undetermined})
    if (to_string(v) == s) return v;
  throw InputError("unknown verdict: " + s);
}

std::string ManifoldRecord::format_orbits() const {
  std::string out;
  for (const auto& o : orbit_reps) {
    if (!out.empty()) out += ' ';
    out += format_face(o.representative) + "_" + std::to_string(o.size);
  }
  return out;
}

std::string make_symbol(int d, int n, const std::string& group_index, int k) {
  return "^" + std::to_string(d) + " " + std::to_string(n) + "^" + group_index + "_" + std::to_string(k);
}

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(TaskStatus s) {
  switch (s) {
    case TaskStatus::pending: return "pending";
    case TaskStatus::done: return "done";
    case TaskStatus::timed_out: return "timed_out";
  }
  return "pending";
}

namespace {

TaskStatus parse_task_status(const std::string& s) {
  for (auto v : {TaskStatus::pending, TaskStatus::done, TaskStatus::timed_out})
    if (to_string(v) == s) return v;
  throw InputError("unknown task status: " + s);
}

json homology_to_json(const HomologyProfile& h) {
  json torsion = json::array();
  for (const auto& t : h.torsion) {
    json row = json::array();
    for (const auto& x : t) row.push_back(x.str());
    torsion.push_back(row);
  }
  return {{"integral", h.integral}, {"betti", h.betti}, {"torsion", torsion}, {"z2_betti", h.z2_betti}};
}

HomologyProfile homology_from_json(const json& j) {
  HomologyProfile h;
  h.integral = j.at("integral").get<bool>();
  h.betti = j.at("betti").get<std::vector<long long>>();
  for (const auto& row : j.at("torsion")) {
    std::vector<BigInt> t;
    for (const auto& x : row) t.emplace_back(x.get<std::string>());
    h.torsion.push_back(std::move(t));
  }
  h.z2_betti = j.at("z2_betti").get<std::vector<long long>>();
  return h;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool matches_sphere(const HomologyProfile& h, int d) {
  auto s = sphere_homology(d);
  if (!h.integral) return h.z2_betti == s.z2_betti;
  return h.betti == s.betti && h.torsion == s.torsion;
}

// Exact test for a closed (d-1)-sphere when d - 1 <= 2.
bool is_small_sphere(const SimplicialComplex& lk) {
  switch (lk.dim()) {
    case 0: return lk.facet_count() == 2;
    case 1: return is_pseudomanifold(lk) && is_connected(lk);
    case 2: {
      if (!is_pseudomanifold(lk) || !is_connected(lk) || euler_characteristic(lk) != 2) return false;
      for (int v : vertices_of(lk.vertex_set()))
        if (!is_small_sphere(link(lk, vertex_bit(v)))) return false;
      return true;
    }
    default: throw PreconditionError("exact sphere test only up to dimension 2");
  }
}

Tristate link_is_sphere(const SimplicialComplex& lk, const ReduceOptions& options) {
  if (lk.dim() <= 2) return is_small_sphere(lk) ? Tristate::yes : Tristate::no;
  if (!is_pseudomanifold(lk) || !is_connected(lk)) return Tristate::no;
  if (reduce(lk, options).verdict == ReduceVerdict::boundary_of_simplex) return Tristate::yes;
  return matches_sphere(integer_homology(lk), lk.dim()) ? Tristate::unknown : Tristate::no;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

json record_to_json(const ManifoldRecord& rec) {
  json reps = json::array();
  for (const auto& o : rec.orbit_reps) reps.push_back({{"rep", vertices_of(o.representative)}, {"size", o.size}});
  return {{"symbol", rec.symbol},
          {"n", rec.n},
          {"d", rec.d},
          {"group", rec.group},
          {"group_name", rec.group_name},
          {"group_order", rec.group_order},
          {"group_index", rec.group_index},
          {"orbit_reps", reps},
          {"f_vector", rec.f_vector.counts},
          {"as_det", rec.as_det},
          {"key", rec.key},
          {"status", to_string(rec.status)},
          {"verdict", to_string(rec.verdict)},
          {"type_label", rec.type_label},
          {"homology", rec.homology ? homology_to_json(*rec.homology) : json(nullptr)},
          {"seed", rec.seed},
          {"remarks", rec.remarks}};
}

ManifoldRecord record_from_json(const json& j) {
  ManifoldRecord rec;
  try {
    rec.symbol = j.at("symbol").get<std::string>();
    rec.n = j.at("n").get<int>();
    rec.d = j.at("d").get<int>();
    rec.group = j.at("group").get<std::string>();
    rec.group_name = j.value("group_name", std::string{});
    rec.group_order = j.value("group_order", std::uint64_t{0});
    rec.group_index = j.value("group_index", 0);
    for (const auto& o : j.at("orbit_reps"))
      rec.orbit_reps.push_back({make_face(o.at("rep").get<std::vector<int>>()), o.at("size").get<std::size_t>()});
    rec.f_vector.counts = j.at("f_vector").get<std::vector<std::uint64_t>>();
    rec.as_det = j.at("as_det").get<std::string>();
    rec.key = j.at("key").get<std::string>();
    rec.status = parse_status(j.at("status").get<std::string>());
    rec.verdict = parse_verdict(j.at("verdict").get<std::string>());
    rec.type_label = j.value("type_label", std::string{});
    if (j.contains("homology") && !j.at("homology").is_null()) rec.homology = homology_from_json(j.at("homology"));
    rec.seed = j.value("seed", std::uint64_t{0});
    rec.remarks = j.value("remarks", std::string{});
  } catch (const json::exception& e) {
    throw InputError(std::string("bad record: ") + e.what());
  }
  return rec;
}

SimplicialComplex complex_of_record(const ManifoldRecord& rec, const PermutationGroup& g) {
  std::vector<Face> reps;
  for (const auto& o : rec.orbit_reps) reps.push_back(o.representative);
  auto orbits = from_orbits(g, reps);
  return SimplicialComplex(rec.n, rec.d, orbits.facets());
}

std::string surface_type(const SimplicialComplex& m) {
  if (m.dim() != 2 || !is_pseudomanifold(m) || !is_connected(m)) throw PreconditionError("not a closed connected surface");
  long long chi = euler_characteristic(m);
  if (is_orientable(m)) {
    long long genus = (2 - chi) / 2;
    if (genus == 0) return "sphere";
    if (genus == 1) return "torus";
    return "orientable surface of genus " + std::to_string(genus);
  }
  long long genus = 2 - chi;
  if (genus == 1) return "real projective plane";
  if (genus == 2) return "Klein bottle";
  return "non-orientable surface of genus " + std::to_string(genus);
}

Tristate links_are_combinatorial_spheres(const SimplicialComplex& m, const ReduceOptions& options) {
  Tristate result = Tristate::yes;
  for (int v : vertices_of(m.vertex_set())) {
    Tristate t = link_is_sphere(link(m, vertex_bit(v)), options);
    if (t == Tristate::no) return Tristate::no;
    if (t == Tristate::unknown) result = Tristate::unknown;
  }
  return result;
}

std::string VerifyReport::summary() const {
  if (!pseudomanifold) {
    std::string out = "not a pseudomanifold";
    if (bad_ridge) out += ": ridge " + format_face_spaced(*bad_ridge) + " does not lie in exactly two facets";
    return out;
  }
  if (manifold == Tristate::no) return "pseudomanifold, not a combinatorial manifold";
  std::string out = std::to_string(d) + (manifold == Tristate::yes ? "-manifold" : "-pseudomanifold (links undetermined)");
  out += ", χ=" + std::to_string(euler_characteristic);
  if (orientable) out += *orientable ? ", orientable" : ", non-orientable";
  if (!surface.empty()) out += ", " + surface;
  if (verdict == Verdict::sphere) out += ", sphere (reduced to boundary of simplex)";
  if (verdict == Verdict::non_sphere && d != 2) out += ", not a sphere (homology)";
  if (verdict == Verdict::undetermined) out += ", sphere recognition undetermined";
  return out;
}

std::string VerifyReport::format() const {
  std::ostringstream out;
  out << "summary: " << summary() << "\n";
  out << "n: " << n << "\nd: " << d << "\n";
  out << "f-vector: " << f_vector.format_full() << "\n";
  out << "f-vector (f_1..f_d): " << f_vector.format_table() << "\n";
  out << "pseudomanifold: " << (pseudomanifold ? "yes" : "no") << "\n";
  if (bad_ridge) out << "offending ridge: " << format_face_spaced(*bad_ridge) << "\n";
  out << "strongly connected: " << (strongly_connected ? "yes" : "no") << "\n";
  out << "euler characteristic: " << euler_characteristic << "\n";
  if (orientable) out << "orientable: " << (*orientable ? "yes" : "no") << "\n";
  out << "vertex links are spheres: " << to_string(manifold) << "\n";
  if (!surface.empty()) out << "surface: " << surface << "\n";
  if (homology) {
    out << "homology: " << homology->format() << "\n";
    out << "z2 poincare duality: " << (poincare_z2 ? "yes" : "no") << "\n";
    out << "link homology: " << (link_homology ? "sphere" : "not a sphere") << "\n";
  }
  if (sphere_reduction) out << "reduction: " << to_string(*sphere_reduction) << "\n";
  out << "verdict: " << to_string(verdict) << "\n";
  return out.str();
}

json VerifyReport::to_json() const {
  json j = {{"summary", summary()},
            {"n", n},
            {"d", d},
            {"f_vector", f_vector.counts},
            {"pseudomanifold", pseudomanifold},
            {"strongly_connected", strongly_connected},
            {"euler_characteristic", euler_characteristic},
            {"manifold", to_string(manifold)},
            {"verdict", to_string(verdict)}};
  if (bad_ridge) j["bad_ridge"] = vertices_of(*bad_ridge);
  if (orientable) j["orientable"] = *orientable;
  if (!surface.empty()) j["surface"] = surface;
  if (homology) {
    j["homology"] = homology->format();
    j["poincare_z2"] = poincare_z2;
    j["link_homology"] = link_homology;
  }
  if (sphere_reduction) j["reduction"] = to_string(*sphere_reduction);
  return j;
}

VerifyReport verify_complex(const SimplicialComplex& m, const VerifyOptions& options) {
  VerifyReport r;
  r.n = m.n();
  r.d = m.dim();
  r.f_vector = f_vector(m);
  r.euler_characteristic = r.f_vector.euler_characteristic();
  r.bad_ridge = find_bad_ridge(m);
  r.pseudomanifold = !r.bad_ridge;
  r.strongly_connected = is_strongly_connected(m);
  if (!r.pseudomanifold || r.d < 1) {
    r.manifold = r.pseudomanifold ? Tristate::yes : Tristate::no;
    return r;
  }
  r.orientable = is_orientable(m);
  if (options.all_vertex_links) {
    r.manifold = links_are_combinatorial_spheres(m, options.reduce);
  } else {
    r.manifold = link_is_sphere(link(m, m.vertex_set() & (~m.vertex_set() + 1)), options.reduce);
  }
  if (r.manifold == Tristate::no) return r;
  if (r.d == 2 && is_connected(m)) r.surface = surface_type(m);
  r.homology = integer_homology(m, options.homology);
  r.poincare_z2 = poincare_z2_check(*r.homology);
  r.link_homology = link_sphere_homology_check(m);
  if (!r.strongly_connected) {
    r.verdict = Verdict::non_sphere;
    return r;
  }
  auto red = reduce(m, options.reduce);
  r.sphere_reduction = red.verdict;
  if (red.verdict == ReduceVerdict::boundary_of_simplex)
    r.verdict = Verdict::sphere;
  else
    r.verdict = matches_sphere(*r.homology, r.d) ? Verdict::undetermined : Verdict::non_sphere;
  return r;
}

bool verify_candidate(ManifoldRecord& rec, const SimplicialComplex& m, const VerifyOptions& options) {
  auto h = integer_homology(m, options.homology);
  rec.homology = h;
  if (!poincare_z2_check(h)) {
    rec.status = RecordStatus::rejected;
    rec.remarks = "Z2 Betti numbers are not symmetric";
    return false;
  }
  if (!link_sphere_homology_check(m)) {
    rec.status = RecordStatus::rejected;
    rec.remarks = "vertex link does not have sphere homology";
    return false;
  }
  ReduceOptions ro = options.reduce;
  ro.seed = options.reduce.seed ^ fnv1a(rec.key);
  rec.seed = ro.seed;
  Tristate links = link_is_sphere(link(m, vertex_bit(1)), ro);
  if (links == Tristate::no) {
    rec.status = RecordStatus::rejected;
    rec.remarks = "vertex link is not a sphere";
    return false;
  }
  auto red = reduce(m, ro);
  if (red.verdict == ReduceVerdict::boundary_of_simplex) {
    rec.verdict = Verdict::sphere;
    rec.type_label = "S^" + std::to_string(m.dim());
  } else {
    rec.verdict = matches_sphere(h, m.dim()) ? Verdict::undetermined : Verdict::non_sphere;
  }
  if (links == Tristate::unknown) {
    rec.status = RecordStatus::candidate;
    rec.remarks = "vertex link not recognized as a sphere";
  } else if (rec.verdict == Verdict::sphere) {
    rec.status = RecordStatus::sphere;
  } else if (m.dim() == 2) {
    rec.status = RecordStatus::typed;
    rec.type_label = surface_type(m);
  } else {
    rec.status = RecordStatus::verified_manifold;
  }
  if (rec.verdict == Verdict::undetermined && rec.remarks.empty()) rec.remarks = "homology sphere, reduction failed";
  return true;
}

// ---------------------------------------------------------------------------
// Store

namespace {

const char* kRecordsFile = "records.jsonl";
const char* kIndexFile = "index.json";
const char* kStateFile = "sweep_state.json";

std::string symbol_slot(const ManifoldRecord& rec) {
  return std::to_string(rec.d) + "/" + std::to_string(rec.n) + "/" +
         (rec.group_index > 0 ? std::to_string(rec.group_index) : rec.group);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

json task_to_json(const SweepTask& t) {
  json found = json::array();
  for (const auto& r : t.found) found.push_back(record_to_json(r));
  json j = {{"n", t.n}, {"d", t.d}, {"group", t.group}, {"status", to_string(t.status)}, {"found", found}};
  if (t.checkpoint) j["checkpoint"] = json::parse(t.checkpoint->to_json());
  return j;
}

SweepTask task_from_json(const json& j) {
  SweepTask t;
  t.n = j.at("n").get<int>();
  t.d = j.at("d").get<int>();
  t.group = j.at("group").get<std::string>();
  t.status = parse_task_status(j.at("status").get<std::string>());
  if (j.contains("checkpoint")) t.checkpoint = BacktrackCheckpoint::from_json(j.at("checkpoint").dump());
  for (const auto& r : j.at("found")) t.found.push_back(record_from_json(r));
  return t;
}

}  // namespace

CensusStore::CensusStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
  if (std::ifstream in(dir_ / kRecordsFile); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw InputError("bad line in " + (dir_ / kRecordsFile).string() + ": " + e.what());
      }
      auto rec = record_from_json(j);
      if (index_.contains(rec.key)) throw InputError("duplicate key in store: " + rec.symbol);
      index_[rec.key] = rec.symbol;
      ++next_k_[symbol_slot(rec)];
      records_.push_back(std::move(rec));
    }
  }
  if (!std::filesystem::exists(dir_ / kIndexFile)) write_index();
  if (std::ifstream in(dir_ / kStateFile); in) {
    try {
      json j = json::parse(in);
      for (const auto& c : j.at("done_cells")) done_cells_.insert({c.at(0).get<int>(), c.at(1).get<int>()});
      for (const auto& [id, t] : j.at("tasks").items()) tasks_[id] = task_from_json(t);
      partial_ = j.value("partial", false);
    } catch (const json::exception& e) {
      throw InputError(std::string("bad sweep state: ") + e.what());
    }
  }
}

std::optional<std::string> CensusStore::symbol_of(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const ManifoldRecord& CensusStore::add(ManifoldRecord rec) {
  if (index_.contains(rec.key)) throw PreconditionError("record with this canonical key already stored");
  int k = ++next_k_[symbol_slot(rec)];
  rec.symbol = make_symbol(rec.d, rec.n, rec.group_index > 0 ? std::to_string(rec.group_index) : rec.group, k);
  index_[rec.key] = rec.symbol;
  records_.push_back(std::move(rec));
  if (!dir_.empty()) {
    std::ofstream out(dir_ / kRecordsFile, std::ios::binary | std::ios::app);
    if (!out) throw InputError("cannot append to " + (dir_ / kRecordsFile).string());
    out << record_to_json(records_.back()).dump() << "\n";
    write_index();
  }
  return records_.back();
}

void CensusStore::mark_cell_done(int n, int d) { done_cells_.insert({n, d}); }

void CensusStore::write_index() const {
  if (dir_.empty()) return;
  json j = json::object();
  for (const auto& [key, symbol] : index_) j[key] = symbol;
  write_text(dir_ / kIndexFile, j.dump(1) + "\n");
}

void CensusStore::save_state() const {
  if (dir_.empty()) return;
  json cells = json::array();
  for (auto [n, d] : done_cells_) cells.push_back({n, d});
  json tasks = json::object();
  for (const auto& [id, t] : tasks_) tasks[id] = task_to_json(t);
  json j = {{"done_cells", cells}, {"tasks", tasks}, {"partial", partial_}};
  write_text(dir_ / kStateFile, j.dump(1) + "\n");
}

std::string CensusStore::task_id(int n, int d, const std::string& group) {
  return std::to_string(n) + "/" + std::to_string(d) + "/" + group;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

std::vector<PermutationGroup> groups_for_degree(CensusStore& store, int n, const std::vector<PermutationGroup>& catalog,
                                                const SweepOptions& options) {
  std::vector<PermutationGroup> groups;
  auto note = [&](const std::string& msg) {
    store.messages().push_back(msg);
    store.set_partial(true);
    if (options.log) (*options.log)(msg);
  };
  if (!options.group_specs.empty()) {
    for (const auto& spec : options.group_specs) {
      try {
        groups.push_back(resolve_group(spec, n, catalog));
      } catch (const std::exception& e) {
        note("n=" + std::to_string(n) + ": skipping group '" + spec + "': " + e.what());
      }
    }
  } else {
    for (const auto& g : catalog)
      if (g.degree() == n) groups.push_back(g);
    int expected = transitive_group_count(n);
    if (groups.empty())
      note("n=" + std::to_string(n) + ": no catalog groups; skipped");
    else if (expected > 0 && static_cast<int>(groups.size()) < expected)
      note("n=" + std::to_string(n) + ": catalog has " + std::to_string(groups.size()) + " of " +
           std::to_string(expected) + " transitive groups");
  }
  std::stable_sort(groups.begin(), groups.end(), [](const PermutationGroup& a, const PermutationGroup& b) {
    auto oa = a.order().value_or(0), ob = b.order().value_or(0);
    if (oa != ob) return oa > ob;
    return a.catalog_index() < b.catalog_index();
  });
  std::vector<PermutationGroup> unique;
  std::set<std::string> refs;
  for (auto& g : groups)
    if (refs.insert(g.ref()).second) unique.push_back(std::move(g));
  return unique;
}

void run_task(SweepTask& task, const PermutationGroup& g, const SweepOptions& options) {
  EnumerateOptions eo;
  eo.budget_seconds = options.task_seconds;
  if (task.status == TaskStatus::timed_out) eo.resume = task.checkpoint;
  std::set<std::string> known;
  for (const auto& r : task.found) known.insert(r.key);
  eo.known_keys = &known;
  auto result = enumerate_vt(task.n, task.d, g, eo);
  for (auto& r : result.records) task.found.push_back(std::move(r));
  if (result.complete) {
    task.status = TaskStatus::done;
    task.checkpoint.reset();
  } else {
    task.status = TaskStatus::timed_out;
    task.checkpoint = result.checkpoint;
  }
}

}  // namespace

void sweep(CensusStore& store, std::pair<int, int> n_range, std::pair<int, int> d_range,
           const std::vector<PermutationGroup>& catalog, const SweepOptions& options) {
  auto log = [&](const std::string& msg) {
    if (options.log) (*options.log)(msg);
  };
  if (catalog.empty() && options.group_specs.empty()) {
    store.messages().push_back("empty catalog: nothing to sweep");
    store.set_partial(true);
    store.save_state();
    return;
  }
  // Recomputed per run: this run's gaps plus tasks still waiting on a resume.
  store.set_partial(false);
  for (int n = n_range.first; n <= n_range.second; ++n) {
    int d_lo = std::max(2, d_range.first), d_hi = std::min(n - 2, d_range.second);
    if (d_lo > d_hi) continue;
    bool any_open = false;
    for (int d = d_lo; d <= d_hi; ++d) any_open |= !store.cell_done(n, d);
    if (!any_open) continue;
    auto groups = groups_for_degree(store, n, catalog, options);
    if (groups.empty()) continue;

    for (int d = d_lo; d <= d_hi; ++d) {
      if (store.cell_done(n, d)) continue;
      std::vector<SweepTask*> tasks;
      for (const auto& g : groups) {
        auto id = CensusStore::task_id(n, d, g.ref());
        auto [it, inserted] = store.tasks().try_emplace(id);
        if (inserted) {
          it->second.n = n;
          it->second.d = d;
          it->second.group = g.ref();
        }
        tasks.push_back(&it->second);
      }

      // Phase 1: independent searches.
      parallel_for(tasks.size(), options.threads, [&](std::size_t i) {
        if (tasks[i]->status != TaskStatus::done) run_task(*tasks[i], groups[i], options);
      });

      // Phase 2: merge in group order.
      std::vector<ManifoldRecord> merged;
      std::vector<SimplicialComplex> complexes;
      std::set<std::string> keys;
      bool complete = true;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        complete &= tasks[i]->status == TaskStatus::done;
        for (const auto& r : tasks[i]->found) {
          if (store.has_key(r.key) || !keys.insert(r.key).second) continue;
          merged.push_back(r);
          complexes.push_back(complex_of_record(r, groups[i]));
        }
      }
      if (!complete) {
        store.set_partial(true);
        store.save_state();
        log("n=" + std::to_string(n) + " d=" + std::to_string(d) + ": timed out with " +
            std::to_string(merged.size()) + " candidates staged");
        continue;
      }

      // Phase 3: verification.
      VerifyOptions vo;
      vo.reduce.seed = options.seed;
      vo.reduce.budget = options.budget;
      std::vector<char> keep(merged.size(), 0);
      parallel_for(merged.size(), options.threads,
                   [&](std::size_t i) { keep[i] = verify_candidate(merged[i], complexes[i], vo); });
      std::size_t added = 0;
      for (std::size_t i = 0; i < merged.size(); ++i) {
        if (!keep[i]) continue;
        store.add(std::move(merged[i]));
        ++added;
      }
      for (auto* t : tasks) store.tasks().erase(CensusStore::task_id(t->n, t->d, t->group));
      store.mark_cell_done(n, d);
      store.save_state();
      log("n=" + std::to_string(n) + " d=" + std::to_string(d) + ": " + std::to_string(added) + " records");
    }
  }
  for (const auto& [id, t] : store.tasks())
    if (t.status != TaskStatus::done) store.set_partial(true);
  store.save_state();
}

std::vector<ManifoldRecord> staged_records(const CensusStore& store) {
  std::vector<ManifoldRecord> out;
  std::set<std::string> keys;
  for (const auto& [id, t] : store.tasks())
    for (const auto& r : t.found)
      if (!store.has_key(r.key) && keys.insert(r.key).second) out.push_back(r);
  return out;
}

std::string report(const CensusStore& store, const std::string& style) {
  std::ostringstream out;
  if (style == "counts") {
    struct Cell {
      int sphere = 0, non_sphere = 0, undetermined = 0;
    };
    std::map<int, std::map<int, Cell>> grid;
    for (const auto& r : store.records()) {
      auto& c = grid[r.n][r.d];
      if (r.verdict == Verdict::sphere)
        ++c.sphere;
      else if (r.verdict == Verdict::non_sphere)
        ++c.non_sphere;
      else
        ++c.undetermined;
    }
    for (const auto& [n, row] : grid) {
      out << "n=" << n << ":";
      bool first = true;
      for (const auto& [d, c] : row) {
        out << (first ? " " : ", ") << "d=" << d << ": " << c.sphere << "/" << c.non_sphere;
        if (c.undetermined) out << "/" << c.undetermined;
        first = false;
      }
      out << "\n";
    }
    return out.str();
  }
  if (style == "orbits") {
    for (const auto& r : store.records())
      out << r.symbol << " | " << r.f_vector.format_table() << " | " << r.group << " | " << r.format_orbits() << " | "
          << (r.type_label.empty() ? to_string(r.verdict) : r.type_label)
          << (r.remarks.empty() ? "" : "; " + r.remarks) << "\n";
    return out.str();
  }
  throw InputError("unknown report style: " + style);
}

}  // namespace vtman
