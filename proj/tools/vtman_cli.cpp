#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vtman/bistellar.hpp"
#include "vtman/census.hpp"
#include "vtman/classify.hpp"
#include "vtman/complex.hpp"
#include "vtman/enumerate.hpp"
#include "vtman/error.hpp"
#include "vtman/groups.hpp"
#include "vtman/homology.hpp"
#include "vtman/orbits.hpp"
#include "vtman/reference.hpp"

using namespace vtman;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kPartial = 2;

struct Globals {
  std::string catalog = std::string(VTMAN_DATA_DIR) + "/transitive_groups.json";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t budget = 50'000;
  int threads = 1;
  bool resume = false;
};

std::vector<PermutationGroup> load_for(const Globals& g, std::set<int> degrees) {
  CatalogOptions opts;
  opts.degrees = std::move(degrees);
  return load_catalog(g.catalog, opts);
}

// "4..8" or "7".
std::pair<int, int> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("bad range '" + text + "' (expected a or a..b)");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// Writes to --out when given, otherwise to stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

std::string complex_text(const SimplicialComplex& m, bool gap) {
  if (gap) return format_gap(m) + "\n";
  std::ostringstream ss;
  write_complex(ss, m);
  return ss.str();
}

ReduceOptions reduce_options(const Globals& g) {
  ReduceOptions r;
  r.seed = g.seed;
  r.budget = g.budget;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertex-transitive combinatorial manifolds: enumeration, verification and census tools"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--catalog", g.catalog, "Transitive group catalog (JSON)");
  app.add_option("--out", g.out, "Output file (store directory for sweep/report)");
  app.add_option("--seed", g.seed, "Random seed for bistellar search");
  app.add_option("--budget", g.budget, "Flip-move budget");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--resume", g.resume, "Resume from saved state");

  std::function<int()> action;

  // groups
  auto* groups_cmd = app.add_subcommand("groups", "List transitive groups of a degree");
  int groups_n = 0;
  groups_cmd->add_option("--n", groups_n, "Degree")->required();
  groups_cmd->callback([&] {
    action = [&] {
      for (const auto& grp : load_for(g, {groups_n})) {
        std::cout << grp.ref() << "\t" << grp.name() << "\torder " << grp.order().value_or(0) << "\t";
        for (std::size_t i = 0; i < grp.generators().size(); ++i)
          std::cout << (i ? " " : "") << grp.generators()[i].to_cycles();
        std::cout << "\n";
      }
      return kOk;
    };
  });

  // orbits
  auto* orbits_cmd = app.add_subcommand("orbits", "Orbits of k-subsets, or the facet/ridge incidence matrix");
  int orbits_n = 0, orbits_k = 0, orbits_d = 0;
  std::string orbits_group;
  orbits_cmd->add_option("--n", orbits_n, "Degree")->required();
  orbits_cmd->add_option("--group", orbits_group, "Catalog ref, family or name")->required();
  auto* k_opt = orbits_cmd->add_option("--k", orbits_k, "Subset size");
  auto* d_opt = orbits_cmd->add_option("--incidence", orbits_d, "Print the pruned incidence matrix for dimension d");
  k_opt->excludes(d_opt);
  orbits_cmd->callback([&] {
    action = [&] {
      auto grp = resolve_group(orbits_group, orbits_n, load_for(g, {orbits_n}));
      std::ostringstream out;
      if (*d_opt) {
        auto inc = build_incidence(grp, orbits_d);
        out << "columns:";
        for (const auto& c : inc.ridge_orbits) out << " " << format_orbit(c);
        out << "\n";
        std::istringstream rows(inc.format());
        std::string line;
        for (std::size_t r = 0; std::getline(rows, line); ++r)
          out << line << "   " << (r < inc.row_count() ? format_orbit(inc.facet_orbits[r]) : "") << "\n";
      } else {
        if (!*k_opt) throw InputError("orbits needs --k or --incidence");
        for (const auto& o : orbits_of_k_subsets(grp, orbits_k)) out << format_orbit(o) << "\n";
      }
      emit(g, out.str());
      return kOk;
    };
  });

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate candidates for one group (Steps 2-4)");
  int en_n = 0, en_d = 0;
  std::string en_group, en_checkpoint;
  std::optional<double> en_seconds;
  bool en_trace = false;
  enum_cmd->add_option("--n", en_n, "Number of vertices")->required();
  enum_cmd->add_option("--d", en_d, "Dimension")->required();
  enum_cmd->add_option("--group", en_group, "Catalog ref, family or name")->required();
  enum_cmd->add_option("--checkpoint", en_checkpoint, "Checkpoint file (written on timeout, read with --resume)");
  enum_cmd->add_option("--budget-seconds", en_seconds, "Wall-clock budget");
  enum_cmd->add_flag("--trace", en_trace, "Print the backtracking trace");
  enum_cmd->callback([&] {
    action = [&] {
      auto grp = resolve_group(en_group, en_n, load_for(g, {en_n}));
      EnumerateOptions eo;
      eo.budget_seconds = en_seconds;
      if (g.resume) {
        if (en_checkpoint.empty()) throw InputError("--resume needs --checkpoint");
        if (std::filesystem::exists(en_checkpoint))
          eo.resume = BacktrackCheckpoint::from_json(read_file(en_checkpoint));
      }
      TraceSink sink = [](const std::string& line) { std::cout << line << "\n"; };
      if (en_trace) eo.trace = &sink;
      auto result = enumerate_vt(en_n, en_d, grp, eo);
      std::string jsonl;
      for (const auto& r : result.records) jsonl += record_to_json(r).dump() + "\n";
      if (!g.out.empty()) {
        std::ofstream out(g.out, std::ios::binary | (g.resume ? std::ios::app : std::ios::trunc));
        if (!out) throw InputError("cannot write " + g.out);
        out << jsonl;
      } else if (!en_trace) {
        std::cout << jsonl;
      }
      std::cerr << "emissions " << result.stats.emissions << ", not strongly connected "
                << result.stats.rejected_strong_connectivity << ", link tests failed " << result.stats.rejected_step3
                << ", duplicates " << result.stats.duplicates << ", new " << result.records.size() << "\n";
      if (!result.complete) {
        if (!en_checkpoint.empty()) write_file(en_checkpoint, result.checkpoint.to_json() + "\n");
        std::cerr << "budget exhausted; search incomplete\n";
        return kPartial;
      }
      if (!en_checkpoint.empty()) write_file(en_checkpoint, result.checkpoint.to_json() + "\n");
      return kOk;
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Manifold, homology and sphere checks for a complex file");
  std::string verify_file;
  bool verify_json = false;
  verify_cmd->add_option("file", verify_file, "Complex file")->required();
  verify_cmd->add_flag("--json", verify_json, "JSON output");
  verify_cmd->callback([&] {
    action = [&] {
      auto m = read_complex_file(verify_file);
      VerifyOptions vo;
      vo.reduce = reduce_options(g);
      auto rep = verify_complex(m, vo);
      emit(g, verify_json ? rep.to_json().dump(2) + "\n" : rep.format());
      if (!rep.pseudomanifold || rep.manifold == Tristate::no) return kBadInput;
      if (rep.manifold == Tristate::unknown || rep.verdict == Verdict::undetermined) return kPartial;
      return kOk;
    };
  });

  // homology
  auto* hom_cmd = app.add_subcommand("homology", "Integral homology of a complex file");
  std::string hom_file;
  bool hom_pi1 = false;
  hom_cmd->add_option("file", hom_file, "Complex file")->required();
  hom_cmd->add_flag("--pi1", hom_pi1, "Also print a fundamental group presentation and its abelianization");
  hom_cmd->callback([&] {
    action = [&] {
      auto m = read_complex_file(hom_file);
      std::ostringstream out;
      out << integer_homology(m).format() << "\n";
      if (hom_pi1) {
        auto p = pi1_presentation(m);
        out << "pi1: " << p.format() << "\n";
        out << "abelianization: " << abelianization(p).format() << "\n";
      }
      emit(g, out.str());
      return kOk;
    };
  });

  // reduce
  auto* red_cmd = app.add_subcommand("reduce", "Bistellar reduction of a complex file");
  std::string red_file, red_log;
  red_cmd->add_option("file", red_file, "Complex file")->required();
  red_cmd->add_option("--log-moves", red_log, "Write the applied moves as a replayable file");
  red_cmd->callback([&] {
    action = [&] {
      auto m = read_complex_file(red_file);
      auto res = reduce(m, reduce_options(g));
      if (!red_log.empty()) write_file(red_log, format_moves(res.moves));
      std::cerr << to_string(res.verdict) << " after " << res.moves.size() << " moves, "
                << res.complex.vertex_count() << " vertices, " << res.complex.facet_count() << " facets\n";
      emit(g, complex_text(res.complex, false));
      return res.verdict == ReduceVerdict::boundary_of_simplex ? kOk : kPartial;
    };
  });

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Isomorphism or bistellar equivalence of two complex files");
  std::string cmp_a, cmp_b, cmp_log;
  cmp_cmd->add_option("first", cmp_a, "Complex file")->required();
  cmp_cmd->add_option("second", cmp_b, "Complex file")->required();
  cmp_cmd->add_option("--log-moves", cmp_log, "Write the flip sequence from first to second");
  cmp_cmd->callback([&] {
    action = [&] {
      auto a = read_complex_file(cmp_a), b = read_complex_file(cmp_b);
      if (a.n() == b.n() && a.dim() == b.dim() && f_vector(a) == f_vector(b) && is_pseudomanifold(a) &&
          is_pseudomanifold(b) && is_strongly_connected(a) && is_strongly_connected(b)) {
        if (auto phi = are_isomorphic(a, b)) {
          emit(g, "isomorphic " + phi->to_cycles() + "\n");
          if (!cmp_log.empty()) write_file(cmp_log, "");
          return kOk;
        }
      }
      auto res = bistellar_equivalent(a, b, reduce_options(g));
      if (!cmp_log.empty()) write_file(cmp_log, format_moves(res.moves));
      emit(g, res.equivalent ? "bistellar equivalent after " + std::to_string(res.moves.size()) + " moves\n"
                             : std::string("undetermined\n"));
      return res.equivalent ? kOk : kPartial;
    };
  });

  // reference
  auto* ref_cmd = app.add_subcommand("reference", "Emit a reference triangulation");
  std::string ref_kind;
  std::vector<std::string> ref_args;
  bool ref_gap = false;
  ref_cmd->add_option("kind", ref_kind, "simplex D | cyclic DIM N | cross K | polygon K | join A B | sum A B")
      ->required();
  ref_cmd->add_option("args", ref_args, "Parameters or complex files");
  ref_cmd->add_flag("--gap", ref_gap, "GAP list syntax");
  ref_cmd->callback([&] {
    action = [&] {
      auto want = [&](std::size_t count) {
        if (ref_args.size() != count)
          throw InputError(ref_kind + " takes " + std::to_string(count) + " argument(s)");
      };
      auto num = [&](std::size_t i) {
        try {
          return std::stoi(ref_args[i]);
        } catch (const std::exception&) {
          throw InputError("expected an integer, got '" + ref_args[i] + "'");
        }
      };
      SimplicialComplex m;
      if (ref_kind == "simplex") {
        want(1);
        m = boundary_simplex(num(0));
      } else if (ref_kind == "cyclic") {
        want(2);
        m = cyclic_polytope_boundary(num(0), num(1));
      } else if (ref_kind == "cross") {
        want(1);
        m = cross_polytope_boundary(num(0));
      } else if (ref_kind == "polygon") {
        want(1);
        m = polygon(num(0));
      } else if (ref_kind == "join") {
        want(2);
        m = join(read_complex_file(ref_args[0]), read_complex_file(ref_args[1]));
      } else if (ref_kind == "sum") {
        want(2);
        m = connected_sum(read_complex_file(ref_args[0]), read_complex_file(ref_args[1]));
      } else {
        throw InputError("unknown reference kind '" + ref_kind + "'");
      }
      emit(g, complex_text(m, ref_gap));
      return kOk;
    };
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Resumable census over ranges of n and d");
  std::string sw_n = "4..8", sw_d = "2..64";
  std::vector<std::string> sw_groups;
  std::optional<double> sw_seconds;
  sweep_cmd->add_option("--n", sw_n, "Vertex range a..b");
  sweep_cmd->add_option("--d", sw_d, "Dimension range a..b");
  sweep_cmd->add_option("--groups", sw_groups, "Restrict to these group specs (e.g. cyclic dihedral)")->delimiter(',');
  sweep_cmd->add_option("--task-seconds", sw_seconds, "Budget per (n, d, group) search");
  sweep_cmd->callback([&] {
    action = [&] {
      if (g.out.empty()) throw InputError("sweep needs --out <store directory>");
      auto nr = parse_range(sw_n), dr = parse_range(sw_d);
      if (!g.resume && std::filesystem::exists(std::filesystem::path(g.out) / "sweep_state.json")) {
        std::cerr << "store exists; continuing (pass --resume to silence this note)\n";
      }
      std::set<int> degrees;
      for (int n = nr.first; n <= nr.second; ++n) degrees.insert(n);
      auto catalog = load_for(g, degrees);
      CensusStore store{std::filesystem::path(g.out)};
      store.set_partial(false);
      SweepOptions so;
      so.threads = g.threads;
      so.seed = g.seed;
      so.budget = g.budget;
      so.task_seconds = sw_seconds;
      so.group_specs = sw_groups;
      TraceSink log = [](const std::string& line) { std::cerr << line << "\n"; };
      so.log = &log;
      sweep(store, nr, dr, catalog, so);
      std::cout << report(store, "counts");
      bool undetermined = false;
      for (const auto& r : store.records()) undetermined |= r.verdict == Verdict::undetermined;
      return store.partial() || undetermined ? kPartial : kOk;
    };
  });

  // report
  auto* rep_cmd = app.add_subcommand("report", "Census report from a store");
  std::string rep_style = "counts";
  rep_cmd->add_option("--style", rep_style, "counts or orbits")->check(CLI::IsMember({"counts", "orbits"}));
  rep_cmd->callback([&] {
    action = [&] {
      if (g.out.empty()) throw InputError("report needs --out <store directory>");
      if (!std::filesystem::exists(g.out)) throw InputError("no store at " + g.out);
      CensusStore store{std::filesystem::path(g.out)};
      std::cout << report(store, rep_style);
      auto staged = staged_records(store);
      if (!staged.empty()) std::cout << "# " << staged.size() << " candidates in unfinished cells\n";
      return store.partial() ? kPartial : kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    return action ? action() : kBadInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}
