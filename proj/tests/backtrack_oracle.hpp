#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "vtman/orbits.hpp"

// Exhaustive reference for the closed-combination search on small matrices.
namespace oracle {

using vtman::IncidenceEntry;
using vtman::OrbitIncidence;
using vtman::SubsetOrbit;

// Hand-made incidence with dummy orbits; rows must already be sorted by first column.
inline OrbitIncidence synthetic(const std::vector<std::vector<int>>& dense) {
  OrbitIncidence inc;
  inc.n = 4;
  inc.d = 2;
  std::size_t cols = dense.empty() ? 0 : dense[0].size();
  inc.ridge_orbits.resize(cols);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    std::vector<IncidenceEntry> entries;
    for (std::size_t c = 0; c < cols; ++c)
      if (dense[r][c]) entries.push_back({static_cast<int>(c), dense[r][c]});
    inc.rows.push_back(entries);
    inc.facet_orbits.push_back(SubsetOrbit{});
  }
  for (std::size_t r = 0; r < inc.rows.size(); ++r) {
    int c = inc.rows[r].front().column;
    if (inc.blocks.empty() || inc.blocks.back().first_column != c)
      inc.blocks.push_back({c, static_cast<int>(r), static_cast<int>(r) + 1});
    else
      inc.blocks.back().row_end = static_cast<int>(r) + 1;
  }
  return inc;
}

inline bool closed(const std::vector<std::vector<int>>& dense, unsigned mask) {
  for (std::size_t c = 0; c < dense[0].size(); ++c) {
    int s = 0;
    for (std::size_t r = 0; r < dense.size(); ++r)
      if (mask >> r & 1) s += dense[r][c];
    if (s != 0 && s != 2) return false;
  }
  return true;
}

// Closed row sets whose proper prefixes (in row order) are never closed:
// the search stops at the first closure along each branch.
inline std::vector<std::vector<int>> closed_sets(const std::vector<std::vector<int>>& dense) {
  std::vector<std::vector<int>> out;
  unsigned total = 1u << dense.size();
  std::vector<char> is_closed(total, 0);
  for (unsigned mask = 1; mask < total; ++mask) is_closed[mask] = closed(dense, mask);
  for (unsigned mask = 1; mask < total; ++mask) {
    if (!is_closed[mask]) continue;
    bool prefix_closed = false;
    unsigned prefix = 0;
    for (std::size_t r = 0; r < dense.size() && !prefix_closed; ++r) {
      if (!(mask >> r & 1)) continue;
      prefix |= 1u << r;
      if (prefix != mask && is_closed[prefix]) prefix_closed = true;
    }
    if (prefix_closed) continue;
    std::vector<int> rows;
    for (std::size_t r = 0; r < dense.size(); ++r)
      if (mask >> r & 1) rows.push_back(static_cast<int>(r));
    out.push_back(rows);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<int>> random_dense(std::mt19937_64& rng, int rows, int cols) {
  std::vector<std::vector<int>> dense;
  std::uniform_int_distribution<int> entry(0, 5);
  while (static_cast<int>(dense.size()) < rows) {
    std::vector<int> row(cols);
    for (auto& x : row) {
      int e = entry(rng);
      x = e <= 2 ? 0 : (e <= 4 ? 1 : 2);
    }
    if (std::count(row.begin(), row.end(), 0) < cols) dense.push_back(row);
  }
  std::stable_sort(dense.begin(), dense.end(), [](const auto& a, const auto& b) {
    auto first = [](const auto& r) { return std::find_if(r.begin(), r.end(), [](int x) { return x; }) - r.begin(); };
    return first(a) < first(b);
  });
  return dense;
}

}  // namespace oracle
