#include "vtman/homology.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "vtman/error.hpp"

namespace vtman {

namespace mp = boost::multiprecision;
// Overflow throws, which triggers the arbitrary-precision retry.
using CheckedInt64 = mp::number<mp::cpp_int_backend<64, 64, mp::signed_magnitude, mp::checked, void>>;

std::vector<std::vector<long long>> SparseMatrix::to_dense() const {
  std::vector<std::vector<long long>> out(rows, std::vector<long long>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c)
    for (auto [r, v] : columns[c]) out[r][c] = v;
  return out;
}

namespace {

// Faces of each dimension, lex-sorted, with their positions.
struct FaceIndex {
  std::vector<std::vector<Face>> faces;
  std::vector<std::unordered_map<Face, int>> position;

  explicit FaceIndex(const SimplicialComplex& m, int max_dim) {
    std::unordered_set<Face> all;
    for (Face f : m.facets())
      for_each_subface(f, [&](Face s) {
        if (face_size(s) <= max_dim + 1) all.insert(s);
      });
    int top = std::min(max_dim, m.dim());
    faces.assign(top + 1, {});
    for (Face f : all) faces[face_size(f) - 1].push_back(f);
    position.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
      std::sort(faces[k].begin(), faces[k].end(), LexLess{});
      position[k].reserve(faces[k].size());
      for (std::size_t i = 0; i < faces[k].size(); ++i) position[k].emplace(faces[k][i], static_cast<int>(i));
    }
  }
};

SparseMatrix boundary_from(const FaceIndex& index, int k) {
  SparseMatrix d;
  d.rows = index.faces[k - 1].size();
  d.cols = index.faces[k].size();
  d.columns.resize(d.cols);
  for (std::size_t c = 0; c < d.cols; ++c) {
    Face f = index.faces[k][c];
    int j = 0;
    for (Face rest = f; rest; rest &= rest - 1, ++j) {
      Face sub = f & ~(rest & (~rest + 1));
      d.columns[c].emplace_back(index.position[k - 1].at(sub), j % 2 == 0 ? 1 : -1);
    }
    std::sort(d.columns[c].begin(), d.columns[c].end());
  }
  return d;
}

BigInt to_big(const BigInt& v) { return v; }
BigInt to_big(const CheckedInt64& v) { return BigInt(v.convert_to<long long>()); }

// Diagonal entries into invariant factors (each divides the next), dropping units.
std::vector<BigInt> invariant_factors(std::vector<BigInt> diag) {
  for (auto& v : diag) v = abs(v);
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = gcd(diag[i], diag[j]);
      if (g == 0) continue;
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  std::vector<BigInt> out;
  for (auto& v : diag)
    if (v > 1) out.push_back(v);
  return out;
}

SmithForm dense_smith(std::vector<std::vector<BigInt>> a) {
  SmithForm result;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < m && t < n) {
    // Smallest nonzero entry of the remaining block becomes the pivot.
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      // A remainder is smaller than the pivot: move it to the corner.
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < m; ++i)
        if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) bi = i, bj = t;
      for (std::size_t j = t; j < n; ++j)
        if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) bi = t, bj = j;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
    }
    diag.push_back(a[t][t]);
    ++t;
  }
  result.rank = diag.size();
  result.torsion = invariant_factors(std::move(diag));
  return result;
}

template <typename T>
SmithForm sparse_smith(const SparseMatrix& a) {
  using Entry = std::pair<int, T>;
  std::vector<std::vector<Entry>> rows(a.rows);
  std::vector<std::vector<int>> col_rows(a.cols);
  std::vector<int> col_count(a.cols, 0);
  for (std::size_t c = 0; c < a.cols; ++c) {
    for (auto [r, v] : a.columns[c]) {
      rows[r].emplace_back(static_cast<int>(c), T(v));
      col_rows[c].push_back(r);
      ++col_count[c];
    }
  }
  std::vector<char> row_alive(a.rows, 1);
  std::size_t rank = 0;
  std::vector<Entry> merged;

  auto value_in = [&](int r, int c) -> const T* {
    auto& row = rows[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    return it != row.end() && it->first == c ? &it->second : nullptr;
  };

  while (true) {
    // Unit pivot in the sparsest row, ties broken by the sparsest column.
    int pr = -1, pc = -1;
    std::size_t best_row = 0;
    int best_col = 0;
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (!row_alive[r] || rows[r].empty()) continue;
      if (pr != -1 && rows[r].size() > best_row) continue;
      for (const auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        if (pr == -1 || rows[r].size() < best_row || col_count[c] < best_col) {
          pr = static_cast<int>(r);
          pc = c;
          best_row = rows[r].size();
          best_col = col_count[c];
        }
      }
    }
    if (pr == -1) break;

    const T unit = *value_in(pr, pc);
    std::vector<int> targets;
    for (int r : col_rows[pc])
      if (r != pr && row_alive[r] && value_in(r, pc) != nullptr) targets.push_back(r);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    const auto& pivot_row = rows[pr];
    for (int r : targets) {
      T factor = *value_in(r, pc) * unit;
      merged.clear();
      auto& row = rows[r];
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot_row.size()) {
        if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || pivot_row[j].first < row[i].first) {
          int c = pivot_row[j].first;
          merged.emplace_back(c, -factor * pivot_row[j].second);
          col_rows[c].push_back(r);
          ++col_count[c];
          ++j;
        } else {
          T v = row[i].second - factor * pivot_row[j].second;
          if (v != 0)
            merged.emplace_back(row[i].first, v);
          else
            --col_count[row[i].first];
          ++i;
          ++j;
        }
      }
      row.swap(merged);
    }
    for (const auto& [c, v] : pivot_row) --col_count[c];
    row_alive[pr] = 0;
    ++rank;
  }

  // What is left has no unit entries; finish densely with big integers.
  std::vector<int> rest_rows;
  std::map<int, int> rest_cols;
  for (std::size_t r = 0; r < a.rows; ++r) {
    if (!row_alive[r] || rows[r].empty()) continue;
    rest_rows.push_back(static_cast<int>(r));
    for (const auto& e : rows[r]) rest_cols.emplace(e.first, 0);
  }
  SmithForm result;
  result.rank = rank;
  if (!rest_rows.empty()) {
    int next = 0;
    for (auto& [c, idx] : rest_cols) idx = next++;
    std::vector<std::vector<BigInt>> dense(rest_rows.size(), std::vector<BigInt>(rest_cols.size(), 0));
    for (std::size_t i = 0; i < rest_rows.size(); ++i)
      for (const auto& [c, v] : rows[rest_rows[i]]) dense[i][rest_cols[c]] = to_big(v);
    auto tail = dense_smith(std::move(dense));
    result.rank += tail.rank;
    result.torsion = std::move(tail.torsion);
  }
  return result;
}

}  // namespace

SmithForm smith_form(const SparseMatrix& a) {
  try {
    return sparse_smith<CheckedInt64>(a);
  } catch (const std::overflow_error&) {
    return sparse_smith<BigInt>(a);
  } catch (const std::range_error&) {
    return sparse_smith<BigInt>(a);
  }
}

SmithForm smith_form_dense(const std::vector<std::vector<long long>>& a) {
  std::vector<std::vector<BigInt>> big;
  for (const auto& row : a) {
    big.emplace_back();
    for (long long v : row) big.back().emplace_back(v);
  }
  return dense_smith(std::move(big));
}

std::size_t rank_mod2(const SparseMatrix& a) {
  const std::size_t words = (a.cols + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(a.rows, std::vector<std::uint64_t>(words, 0));
  for (std::size_t c = 0; c < a.cols; ++c)
    for (auto [r, v] : a.columns[c])
      if (v % 2 != 0) rows[r][c / 64] |= std::uint64_t{1} << (c % 64);
  std::unordered_map<std::size_t, std::size_t> pivot_of;  // leading column -> row
  std::vector<std::vector<std::uint64_t>> pivots;
  for (auto& row : rows) {
    while (true) {
      std::size_t w = 0;
      while (w < words && row[w] == 0) ++w;
      if (w == words) break;
      std::size_t lead = w * 64 + std::countr_zero(row[w]);
      auto it = pivot_of.find(lead);
      if (it == pivot_of.end()) {
        pivot_of.emplace(lead, pivots.size());
        pivots.push_back(row);
        break;
      }
      const auto& p = pivots[it->second];
      for (std::size_t k = w; k < words; ++k) row[k] ^= p[k];
    }
  }
  return pivots.size();
}

std::vector<SparseMatrix> boundary_matrices(const SimplicialComplex& m) {
  FaceIndex index(m, m.dim());
  std::vector<SparseMatrix> out;
  for (int k = 1; k <= m.dim(); ++k) out.push_back(boundary_from(index, k));
  return out;
}

std::string AbelianGroup::format() const {
  std::vector<std::string> parts;
  if (rank == 1) parts.push_back("Z");
  if (rank > 1) parts.push_back("Z^" + std::to_string(rank));
  std::map<BigInt, int> counts;
  for (const auto& t : torsion) ++counts[t];
  for (const auto& [t, c] : counts) {
    std::string z = "Z_" + t.str();
    parts.push_back(c == 1 ? z : "(" + z + ")^" + std::to_string(c));
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

AbelianGroup homology_group(const HomologyProfile& h, int k) {
  if (!h.integral) throw PreconditionError("profile has no integral data");
  AbelianGroup g;
  g.rank = h.betti.at(k);
  g.torsion = h.torsion.at(k);
  return g;
}

std::string HomologyProfile::format() const {
  std::string out = "(";
  if (integral) {
    for (std::size_t k = 0; k < betti.size(); ++k) {
      if (k) out += ", ";
      out += homology_group(*this, static_cast<int>(k)).format();
    }
  } else {
    out = "Z2 Betti (";
    for (std::size_t k = 0; k < z2_betti.size(); ++k) {
      if (k) out += ", ";
      out += std::to_string(z2_betti[k]);
    }
  }
  return out + ")";
}

HomologyProfile integer_homology(const SimplicialComplex& m, const HomologyOptions& options) {
  HomologyProfile h;
  const int d = m.dim();
  if (d < 0) throw PreconditionError("homology of the empty complex");
  FaceIndex index(m, d);
  std::size_t total = 0;
  for (const auto& f : index.faces) total += f.size();
  h.integral = total <= options.max_integral_faces;

  std::vector<std::size_t> rank(d + 2, 0), rank2(d + 2, 0);
  std::vector<std::vector<BigInt>> torsion_of(d + 2);
  for (int k = 1; k <= d; ++k) {
    SparseMatrix b = boundary_from(index, k);
    rank2[k] = rank_mod2(b);
    if (h.integral) {
      auto s = smith_form(b);
      rank[k] = s.rank;
      torsion_of[k] = std::move(s.torsion);
    }
  }
  for (int k = 0; k <= d; ++k) {
    long long fk = static_cast<long long>(index.faces[k].size());
    h.z2_betti.push_back(fk - static_cast<long long>(rank2[k] + rank2[k + 1]));
    if (h.integral) {
      h.betti.push_back(fk - static_cast<long long>(rank[k] + rank[k + 1]));
      h.torsion.push_back(torsion_of[k + 1]);
    }
  }
  return h;
}

HomologyProfile sphere_homology(int d) {
  HomologyProfile h;
  h.betti.assign(d + 1, 0);
  h.betti[0] += 1;
  h.betti[d] += 1;
  h.torsion.assign(d + 1, {});
  h.z2_betti = h.betti;
  return h;
}

bool poincare_z2_check(const HomologyProfile& h) {
  const auto& z = h.z2_betti;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (z[k] != z[z.size() - 1 - k]) return false;
  return true;
}

bool poincare_z2_check(const SimplicialComplex& m) {
  HomologyOptions z2_only;
  z2_only.max_integral_faces = 0;
  return poincare_z2_check(integer_homology(m, z2_only));
}

bool link_sphere_homology_check(const SimplicialComplex& m) {
  if (m.dim() < 1) throw PreconditionError("vertex links need dimension >= 1");
  Face v = m.vertex_set() & (~m.vertex_set() + 1);
  auto lk = link(m, v);
  auto h = integer_homology(lk);
  auto s = sphere_homology(m.dim() - 1);
  if (!h.integral) return h.z2_betti == s.z2_betti;
  return h.betti == s.betti && h.torsion == s.torsion;
}

std::string Presentation::format() const {
  std::string out = "<";
  for (std::size_t g = 0; g < generator_edges.size(); ++g) {
    out += g ? ", x" : " x";
    out += std::to_string(g + 1);
  }
  out += " |";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    out += r ? ", " : " ";
    for (std::size_t i = 0; i < relators[r].size(); ++i) {
      int letter = relators[r][i];
      if (i) out += ' ';
      out += "x" + std::to_string(std::abs(letter));
      if (letter < 0) out += "^-1";
    }
  }
  return out + " >";
}

namespace {

std::vector<int> freely_reduce(const std::vector<int>& word) {
  std::vector<int> out;
  for (int letter : word) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  // Cyclic reduction.
  std::size_t lo = 0, hi = out.size();
  while (hi - lo >= 2 && out[lo] == -out[hi - 1]) {
    ++lo;
    --hi;
  }
  return std::vector<int>(out.begin() + lo, out.begin() + hi);
}

}  // namespace

Presentation pi1_presentation(const SimplicialComplex& m) {
  if (!is_connected(m)) throw PreconditionError("fundamental group needs a connected complex");
  FaceIndex index(m, 2);
  const auto& edges = index.faces.size() > 1 ? index.faces[1] : std::vector<Face>{};

  // Breadth-first spanning tree from the smallest vertex.
  Face reached = index.faces[0].empty() ? 0 : index.faces[0].front();
  std::unordered_set<Face> tree;
  for (std::vector<Face> frontier{reached}; !frontier.empty();) {
    std::vector<Face> next;
    for (Face v : frontier)
      for (Face e : edges) {
        if (!(e & v)) continue;
        Face w = e & ~v;
        if (reached & w) continue;
        reached |= w;
        tree.insert(e);
        next.push_back(w);
      }
    std::sort(next.begin(), next.end(), LexLess{});
    frontier = std::move(next);
  }

  std::unordered_map<Face, int> generator;
  std::vector<Face> all_generators;
  for (Face e : edges)
    if (!tree.contains(e)) {
      generator.emplace(e, static_cast<int>(all_generators.size()) + 1);
      all_generators.push_back(e);
    }

  auto letter = [&](int a, int b) {  // edge traversed from a to b
    Face e = vertex_bit(a) | vertex_bit(b);
    auto it = generator.find(e);
    if (it == generator.end()) return 0;
    return a < b ? it->second : -it->second;
  };
  std::vector<std::vector<int>> relators;
  if (index.faces.size() > 2) {
    for (Face t : index.faces[2]) {
      auto v = vertices_of(t);
      std::vector<int> word;
      for (int l : {letter(v[0], v[1]), letter(v[1], v[2]), letter(v[2], v[0])})
        if (l != 0) word.push_back(l);
      relators.push_back(std::move(word));
    }
  }

  std::vector<bool> killed(all_generators.size() + 1, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& r : relators) {
      std::vector<int> kept;
      for (int l : r)
        if (!killed[std::abs(l)]) kept.push_back(l);
      r = freely_reduce(kept);
      if (r.size() == 1) {
        killed[std::abs(r[0])] = true;
        r.clear();
        changed = true;
      }
    }
  }

  Presentation p;
  std::vector<int> renumber(all_generators.size() + 1, 0);
  for (std::size_t g = 1; g <= all_generators.size(); ++g) {
    if (killed[g]) continue;
    p.generator_edges.push_back(all_generators[g - 1]);
    renumber[g] = static_cast<int>(p.generator_edges.size());
  }
  for (auto& r : relators) {
    if (r.empty()) continue;
    std::vector<int> word;
    for (int l : r) word.push_back(l > 0 ? renumber[l] : -renumber[-l]);
    p.relators.push_back(std::move(word));
  }
  return p;
}

AbelianGroup abelianization(const Presentation& p) {
  SparseMatrix rel;
  rel.rows = p.relators.size();
  rel.cols = p.generator_edges.size();
  rel.columns.resize(rel.cols);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    std::map<int, int> exponent;
    for (int l : p.relators[r]) exponent[std::abs(l) - 1] += l > 0 ? 1 : -1;
    for (auto [g, e] : exponent)
      if (e != 0) rel.columns[g].emplace_back(static_cast<int>(r), e);
  }
  auto s = smith_form(rel);
  AbelianGroup g;
  g.rank = static_cast<long long>(rel.cols) - static_cast<long long>(s.rank);
  g.torsion = std::move(s.torsion);
  return g;
}

}  // namespace vtman
