#include "vtman/orbits.hpp"

#include <algorithm>
#include <unordered_map>

#include "vtman/error.hpp"

namespace vtman {

namespace {

struct BinomialTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomialTable() {
    for (int i = 0; i <= 64; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

// Colex rank of a k-subset among all k-subsets of {1..n}.
std::uint64_t colex_rank(Face f) {
  const auto& c = binomials().c;
  std::uint64_t rank = 0;
  int j = 1;
  while (f) {
    int pos = std::countr_zero(f);
    rank += c[pos][j];
    ++j;
    f &= f - 1;
  }
  return rank;
}

Face next_same_popcount(Face v) {
  Face t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

}  // namespace

MaskMapper::MaskMapper(const PermutationGroup& g) {
  tables_.resize(g.generators().size());
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const auto& images = g.generators()[gi].images();
    for (int byte = 0; byte < 8; ++byte) {
      for (int value = 0; value < 256; ++value) {
        Face out = 0;
        for (int bit = 0; bit < 8; ++bit) {
          int point = byte * 8 + bit;
          if ((value >> bit & 1) && point < static_cast<int>(images.size())) out |= Face{1} << images[point];
        }
        tables_[gi][byte][value] = out;
      }
    }
  }
}

std::vector<SubsetOrbit> orbits_of_k_subsets(const PermutationGroup& g, int k) {
  const int n = g.degree();
  if (k < 1 || k > n) throw PreconditionError("subset size out of range");
  const std::uint64_t total = binomials().c[n][k];
  if (total > (std::uint64_t{1} << 33)) throw PreconditionError("too many subsets to enumerate");

  MaskMapper mapper(g);
  std::vector<bool> visited(total, false);
  std::vector<SubsetOrbit> orbits;
  std::vector<Face> queue;

  Face last = full_face(n) & ~full_face(n - k);
  for (Face s = full_face(k);; s = next_same_popcount(s)) {
    if (!visited[colex_rank(s)]) {
      visited[colex_rank(s)] = true;
      queue.assign(1, s);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t gi = 0; gi < mapper.generator_count(); ++gi) {
          Face image = mapper.apply(gi, queue[head]);
          auto r = colex_rank(image);
          if (!visited[r]) {
            visited[r] = true;
            queue.push_back(image);
          }
        }
      }
      SubsetOrbit orbit;
      orbit.k = k;
      orbit.size = queue.size();
      orbit.members = queue;
      std::sort(orbit.members.begin(), orbit.members.end(), LexLess{});
      orbit.representative = orbit.members.front();
      orbits.push_back(std::move(orbit));
    }
    if (s == last) break;
  }
  std::sort(orbits.begin(), orbits.end(),
            [](const SubsetOrbit& a, const SubsetOrbit& b) { return lex_less(a.representative, b.representative); });
  return orbits;
}

int inclusion_multiplicity(const SubsetOrbit& facet_orbit, const SubsetOrbit& ridge_orbit) {
  if (facet_orbit.k != ridge_orbit.k + 1) throw PreconditionError("orbit sizes must differ by one");
  int t = 0;
  for (Face f : facet_orbit.members)
    if (contains(f, ridge_orbit.representative)) ++t;
  return t;
}

std::string format_orbit(const SubsetOrbit& orbit) {
  return format_face(orbit.representative) + "_" + std::to_string(orbit.size);
}

int OrbitIncidence::entry(std::size_t row, std::size_t column) const {
  for (const auto& e : rows[row])
    if (e.column == static_cast<int>(column)) return e.t;
  return 0;
}

std::string OrbitIncidence::format() const {
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < column_count(); ++c) {
      if (c) out += ' ';
      int t = entry(r, c);
      out += t == 0 ? "." : std::to_string(t);
    }
    out += '\n';
  }
  return out;
}

OrbitIncidence assemble_incidence(int n, int d, std::vector<SubsetOrbit> facet_orbits,
                                  std::vector<SubsetOrbit> ridge_orbits) {
  std::unordered_map<Face, int> column_of;
  for (std::size_t j = 0; j < ridge_orbits.size(); ++j) column_of.emplace(ridge_orbits[j].representative, j);

  // Full multiplicities against every ridge representative.
  std::vector<std::vector<IncidenceEntry>> full(facet_orbits.size());
  for (std::size_t i = 0; i < facet_orbits.size(); ++i) {
    std::unordered_map<int, int> counts;
    for (Face f : facet_orbits[i].members) {
      for (Face rest = f; rest; rest &= rest - 1) {
        Face ridge = f & ~(rest & (~rest + 1));
        auto it = column_of.find(ridge);
        if (it != column_of.end()) ++counts[it->second];
      }
    }
    for (auto [col, t] : counts) full[i].push_back({col, t});
    std::sort(full[i].begin(), full[i].end(), [](auto a, auto b) { return a.column < b.column; });
  }

  std::vector<bool> row_alive(facet_orbits.size(), true);
  for (std::size_t i = 0; i < full.size(); ++i)
    for (const auto& e : full[i])
      if (e.t >= 3) row_alive[i] = false;

  std::vector<long long> coverage(ridge_orbits.size());
  for (bool changed = true; changed;) {
    changed = false;
    std::fill(coverage.begin(), coverage.end(), 0);
    for (std::size_t i = 0; i < full.size(); ++i)
      if (row_alive[i])
        for (const auto& e : full[i]) coverage[e.column] += e.t;
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (!row_alive[i]) continue;
      for (const auto& e : full[i]) {
        if (coverage[e.column] == 1) {
          row_alive[i] = false;
          changed = true;
          break;
        }
      }
    }
  }

  OrbitIncidence inc;
  inc.n = n;
  inc.d = d;
  std::vector<int> new_column(ridge_orbits.size(), -1);
  for (std::size_t j = 0; j < ridge_orbits.size(); ++j) {
    if (coverage[j] >= 2) {
      new_column[j] = static_cast<int>(inc.ridge_orbits.size());
      inc.ridge_orbits.push_back(std::move(ridge_orbits[j]));
    }
  }

  struct Row {
    SubsetOrbit orbit;
    std::vector<IncidenceEntry> entries;
  };
  std::vector<Row> kept;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (!row_alive[i] || full[i].empty()) continue;
    Row row{std::move(facet_orbits[i]), {}};
    for (const auto& e : full[i]) row.entries.push_back({new_column[e.column], e.t});
    kept.push_back(std::move(row));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Row& a, const Row& b) {
    if (a.entries.front().column != b.entries.front().column)
      return a.entries.front().column < b.entries.front().column;
    return lex_less(a.orbit.representative, b.orbit.representative);
  });
  for (auto& row : kept) {
    inc.facet_orbits.push_back(std::move(row.orbit));
    inc.rows.push_back(std::move(row.entries));
  }
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    int first = inc.first_column(r);
    if (inc.blocks.empty() || inc.blocks.back().first_column != first)
      inc.blocks.push_back({first, static_cast<int>(r), static_cast<int>(r) + 1});
    else
      inc.blocks.back().row_end = static_cast<int>(r) + 1;
  }
  return inc;
}

OrbitIncidence build_incidence(const PermutationGroup& g, int d) {
  const int n = g.degree();
  if (d < 1 || d > n - 2) throw PreconditionError("dimension must satisfy 1 <= d <= n-2");
  return assemble_incidence(n, d, orbits_of_k_subsets(g, d + 1), orbits_of_k_subsets(g, d));
}

}  // namespace vtman
