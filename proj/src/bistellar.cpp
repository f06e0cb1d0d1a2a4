#include "vtman/bistellar.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vtman/classify.hpp"
#include "vtman/error.hpp"

namespace vtman {

std::uint64_t PortableRng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

std::string FlipMove::format() const { return format_face_spaced(face) + " | " + format_face_spaced(cofacet); }

FlipMove FlipMove::parse(const std::string& line) {
  auto bar = line.find('|');
  if (bar == std::string::npos) throw InputError("move needs 'face | cofacet': " + line);
  auto read = [&](const std::string& part) {
    std::istringstream in(part);
    std::vector<int> labels;
    int v;
    while (in >> v) labels.push_back(v);
    if (!in.eof()) throw InputError("bad label in move: " + line);
    return make_face(labels);
  };
  FlipMove mv{read(line.substr(0, bar)), read(line.substr(bar + 1))};
  if (!mv.face || !mv.cofacet || (mv.face & mv.cofacet)) throw InputError("malformed move: " + line);
  return mv;
}

namespace {

struct FaceStat {
  int count = 0;  // facets containing the face
  Face span = 0;  // union of those facets
};

// Mutable facet set used during flip sequences.
class FlipState {
 public:
  FlipState(const std::vector<Face>& facets, int d) : facets_(facets.begin(), facets.end()), d_(d) {}

  int dim() const { return d_; }
  std::size_t facet_count() const { return facets_.size(); }
  Face vertex_set() const {
    Face all = 0;
    for (Face f : facets_) all |= f;
    return all;
  }

  std::unordered_map<Face, FaceStat> stats() const {
    std::unordered_map<Face, FaceStat> out;
    out.reserve(facets_.size() << std::min(d_ + 1, 12));
    for (Face f : facets_)
      for_each_subface(f, [&](Face s) {
        auto& st = out[s];
        ++st.count;
        st.span |= f;
      });
    return out;
  }

  /// Sorted by (index, face) so the choice sequence is reproducible.
  std::vector<FlipMove> moves(bool include_subdivisions) const {
    auto st = stats();
    std::vector<FlipMove> out;
    for (const auto& [face, s] : st) {
      int i = face_size(face) - 1;
      if (i >= d_) continue;
      if (s.count != d_ - i + 1 || face_size(s.span) != d_ + 2) continue;
      Face cofacet = s.span & ~face;
      if (st.contains(cofacet)) continue;
      out.push_back({face, cofacet});
    }
    if (include_subdivisions) {
      Face used = vertex_set();
      if (~used != 0) {
        Face fresh = ~used & (used + 1);  // lowest clear bit
        for (Face f : facets_) out.push_back({f, fresh});
      }
    }
    std::sort(out.begin(), out.end(), [](const FlipMove& a, const FlipMove& b) {
      if (a.index() != b.index()) return a.index() < b.index();
      if (a.face != b.face) return lex_less(a.face, b.face);
      return lex_less(a.cofacet, b.cofacet);
    });
    return out;
  }

  bool admissible(const FlipMove& mv) const {
    if (!mv.face || !mv.cofacet || (mv.face & mv.cofacet)) return false;
    int i = mv.index();
    if (face_size(mv.face) + face_size(mv.cofacet) != d_ + 2) return false;
    if (i == d_) return facets_.contains(mv.face) && !(vertex_set() & mv.cofacet);
    std::size_t count = 0;
    Face span = 0;
    bool cofacet_is_face = false;
    for (Face f : facets_) {
      if (contains(f, mv.face)) {
        ++count;
        span |= f;
      }
      if (contains(f, mv.cofacet)) cofacet_is_face = true;
    }
    return count == static_cast<std::size_t>(d_ - i + 1) && span == (mv.face | mv.cofacet) && !cofacet_is_face;
  }

  void apply(const FlipMove& mv) {
    for (Face rest = mv.cofacet; rest; rest &= rest - 1) facets_.erase(mv.face | (mv.cofacet & ~(rest & (~rest + 1))));
    for (Face rest = mv.face; rest; rest &= rest - 1) facets_.insert((mv.face & ~(rest & (~rest + 1))) | mv.cofacet);
  }

  SimplicialComplex to_complex(int min_n) const {
    Face used = vertex_set();
    int n = std::max(min_n, used ? kMaxVertices - std::countl_zero(used) : 0);
    return SimplicialComplex(n, d_, std::vector<Face>(facets_.begin(), facets_.end()), false);
  }

 private:
  std::unordered_set<Face> facets_;
  int d_;
};

template <typename Pred>
std::vector<FlipMove> select(const std::vector<FlipMove>& moves, Pred pred) {
  std::vector<FlipMove> out;
  for (const auto& mv : moves)
    if (pred(mv)) out.push_back(mv);
  return out;
}

// Random element, avoiding `tabu` when there is any alternative.
const FlipMove& pick(const std::vector<FlipMove>& options, const std::optional<FlipMove>& tabu, PortableRng& rng) {
  if (tabu && options.size() > 1) {
    std::vector<std::size_t> allowed;
    for (std::size_t k = 0; k < options.size(); ++k)
      if (!(options[k] == *tabu)) allowed.push_back(k);
    if (!allowed.empty()) return options[allowed[rng.below(allowed.size())]];
  }
  return options[rng.below(options.size())];
}

// Moves that lower the facet count the most (smallest index), vertex removals first.
std::vector<FlipMove> reducing_moves(const std::vector<FlipMove>& moves, int d, bool allow_removal) {
  int best = -1;
  for (const auto& mv : moves) {
    int i = mv.index();
    if (2 * i >= d || (i == 0 && !allow_removal)) continue;
    if (best == -1 || i < best) best = i;
  }
  if (best == -1) return {};
  return select(moves, [&](const FlipMove& mv) { return mv.index() == best; });
}

std::vector<FlipMove> stall_moves(const std::vector<FlipMove>& moves, int d) {
  int target = (d + 1) / 2;  // d/2 keeps the facet count, otherwise one more facet
  return select(moves, [&](const FlipMove& mv) { return mv.index() == target && target < d; });
}

}  // namespace

std::string to_string(ReduceVerdict v) {
  switch (v) {
    case ReduceVerdict::boundary_of_simplex: return "boundary_of_simplex";
    case ReduceVerdict::reduced_but_unrecognized: return "reduced_but_unrecognized";
    case ReduceVerdict::budget_exhausted: return "budget_exhausted";
  }
  return "budget_exhausted";
}

std::vector<FlipMove> valid_moves(const SimplicialComplex& m, bool include_subdivisions) {
  if (m.dim() < 1) return {};
  return FlipState(m.facets(), m.dim()).moves(include_subdivisions);
}

bool is_admissible(const SimplicialComplex& m, const FlipMove& move) {
  return m.dim() >= 1 && FlipState(m.facets(), m.dim()).admissible(move);
}

SimplicialComplex apply_move(const SimplicialComplex& m, const FlipMove& move) {
  FlipState st(m.facets(), m.dim());
  if (m.dim() < 1 || !st.admissible(move)) throw PreconditionError("move " + move.format() + " is not admissible");
  st.apply(move);
  return st.to_complex(m.n());
}

SimplicialComplex replay_moves(const SimplicialComplex& m, const std::vector<FlipMove>& moves) {
  FlipState st(m.facets(), m.dim());
  for (const auto& mv : moves) {
    if (!st.admissible(mv)) throw PreconditionError("move " + mv.format() + " is not admissible");
    st.apply(mv);
  }
  return st.to_complex(m.n());
}

std::string format_moves(const std::vector<FlipMove>& moves) {
  std::string out;
  for (const auto& mv : moves) out += mv.format() + "\n";
  return out;
}

std::vector<FlipMove> parse_moves(const std::string& text) {
  std::vector<FlipMove> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    out.push_back(FlipMove::parse(line));
  }
  return out;
}

ReduceResult reduce(const SimplicialComplex& m, const ReduceOptions& options) {
  const int d = m.dim();
  if (d < 1) throw PreconditionError("reduction needs dimension >= 1");
  FlipState st(m.facets(), d);
  PortableRng rng(options.seed);
  ReduceResult result;

  auto measure = [&] { return std::pair<int, std::size_t>(face_size(st.vertex_set()), st.facet_count()); };
  auto best = measure();
  std::size_t stalled = 0, heat_rounds = 0;
  std::optional<FlipMove> tabu;
  auto apply = [&](const FlipMove& mv) {
    st.apply(mv);
    result.moves.push_back(mv);
    tabu = mv.inverse();
    auto now = measure();
    if (now < best) {
      best = now;
      stalled = 0;
      heat_rounds = 0;
    }
  };

  while (true) {
    if (face_size(st.vertex_set()) == d + 2) {
      result.verdict = ReduceVerdict::boundary_of_simplex;
      break;
    }
    if (result.moves.size() >= options.budget) {
      result.verdict = ReduceVerdict::budget_exhausted;
      break;
    }
    auto moves = st.moves(false);
    auto reducing = reducing_moves(moves, d, true);
    if (!reducing.empty()) {
      apply(pick(reducing, tabu, rng));
      continue;
    }
    auto neutral = stall_moves(moves, d);
    if (!neutral.empty() && stalled < options.heat_after) {
      ++stalled;
      apply(pick(neutral, tabu, rng));
      continue;
    }
    // Heating: random moves that do not lower the facet count.
    if (++heat_rounds > options.max_heat_rounds) {
      result.verdict = ReduceVerdict::reduced_but_unrecognized;
      break;
    }
    stalled = 0;
    for (std::size_t k = 0; k < options.heat_moves && result.moves.size() < options.budget; ++k) {
      auto all = st.moves(true);
      auto hot = select(all, [&](const FlipMove& mv) { return 2 * mv.index() >= d; });
      if (hot.empty()) break;
      const FlipMove& mv = hot[rng.below(hot.size())];
      st.apply(mv);
      result.moves.push_back(mv);
      tabu.reset();
    }
  }
  result.complex = st.to_complex(0).compacted();
  return result;
}

ReduceResult links_are_spheres(const SimplicialComplex& m, const ReduceOptions& options) {
  Face v = m.vertex_set() & (~m.vertex_set() + 1);
  if (!v) throw PreconditionError("empty complex");
  return reduce(link(m, v), options);
}

EquivalenceResult bistellar_equivalent(const SimplicialComplex& a, const SimplicialComplex& b,
                                       const ReduceOptions& options) {
  EquivalenceResult result;
  if (a.dim() != b.dim()) return result;
  const int d = a.dim();
  const auto target_f = f_vector(b);
  const SimplicialComplex target = b.compacted();
  const int target_vertices = target.n();
  const std::size_t target_facets = target.facet_count();

  FlipState st(a.facets(), d);
  PortableRng rng(options.seed);
  std::optional<FlipMove> tabu;

  auto matches = [&] {
    if (face_size(st.vertex_set()) != target_vertices || st.facet_count() != target_facets) return false;
    auto current = st.to_complex(0).compacted();
    if (f_vector(current) != target_f) return false;
    return are_isomorphic(current, target).has_value();
  };
  auto distance = [&] {
    int nv = face_size(st.vertex_set());
    long long nf = static_cast<long long>(st.facet_count());
    return std::pair<int, long long>(std::abs(nv - target_vertices), std::llabs(nf - static_cast<long long>(target_facets)));
  };

  auto best = distance();
  std::size_t stalled = 0, heat_rounds = 0;
  while (true) {
    if (matches()) {
      result.equivalent = true;
      return result;
    }
    if (result.moves.size() >= options.budget) return result;
    int nv = face_size(st.vertex_set());
    auto moves = st.moves(nv < target_vertices);
    std::vector<FlipMove> options_now;
    if (nv > target_vertices) {
      options_now = reducing_moves(moves, d, true);
    } else if (nv < target_vertices) {
      options_now = select(moves, [&](const FlipMove& mv) { return mv.index() == d; });
    } else if (st.facet_count() > target_facets) {
      options_now = reducing_moves(moves, d, false);
    } else if (st.facet_count() < target_facets) {
      options_now = select(moves, [&](const FlipMove& mv) { return 2 * mv.index() > d && mv.index() < d; });
    }
    bool stalling = options_now.empty();
    if (stalling) {
      if (stalled >= options.heat_after) {
        if (++heat_rounds > options.max_heat_rounds) return result;
        stalled = 0;
        for (std::size_t k = 0; k < options.heat_moves && result.moves.size() < options.budget; ++k) {
          auto all = st.moves(true);
          auto hot = select(all, [&](const FlipMove& mv) { return 2 * mv.index() >= d; });
          if (hot.empty()) break;
          const FlipMove& mv = hot[rng.below(hot.size())];
          st.apply(mv);
          result.moves.push_back(mv);
        }
        tabu.reset();
        continue;
      }
      options_now = select(moves, [&](const FlipMove& mv) { return mv.index() > 0 && mv.index() < d; });
      if (nv == target_vertices && st.facet_count() == target_facets) {
        auto neutral = stall_moves(moves, d);
        if (!neutral.empty() && d % 2 == 0) options_now = neutral;
      }
      if (options_now.empty()) {
        stalled = options.heat_after;
        continue;
      }
      ++stalled;
    }
    const FlipMove mv = pick(options_now, tabu, rng);
    st.apply(mv);
    result.moves.push_back(mv);
    tabu = mv.inverse();
    auto now = distance();
    if (now < best) {
      best = now;
      stalled = 0;
      heat_rounds = 0;
    }
  }
}

}  // namespace vtman
