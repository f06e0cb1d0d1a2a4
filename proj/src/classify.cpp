#include "vtman/classify.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "vtman/error.hpp"

namespace vtman {

BigInt as_determinant(const SimplicialComplex& m) {
  auto verts = vertices_of(m.vertex_set());
  const std::size_t n = verts.size();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n, 0));
  for (Face f : m.facets()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(f & vertex_bit(verts[i]))) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (f & vertex_bit(verts[j])) a[i][j] += 1;
    }
  }
  // Fraction-free (Bareiss) elimination: every division below is exact.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::optional<int> multiplication_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b) {
  const int n = a.n();
  if (b.n() != n || a.dim() != b.dim() || a.facet_count() != b.facet_count() || n < 2) return std::nullopt;
  for (int m = 1; m < n; ++m) {
    if (std::gcd(m, n) != 1) continue;
    Permutation map = multiplication_map(n, m);
    std::vector<Face> image;
    image.reserve(a.facet_count());
    for (Face f : a.facets()) image.push_back(map.apply(f));
    std::sort(image.begin(), image.end(), LexLess{});
    if (image == b.facets()) return m;
  }
  return std::nullopt;
}

namespace {

bool output_less(const std::vector<Face>& x, const std::vector<Face>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), LexLess{});
}

// Facet adjacency across ridges of a pseudomanifold, plus edge degrees.
class PropagationContext {
 public:
  explicit PropagationContext(const SimplicialComplex& m) : m_(m), d_(m.dim()) {
    const auto& facets = m.facets();
    std::unordered_map<Face, std::vector<int>> owners;
    owners.reserve(facets.size() * (d_ + 1));
    for (std::size_t i = 0; i < facets.size(); ++i)
      for (Face rest = facets[i]; rest; rest &= rest - 1) owners[facets[i] & ~(rest & (~rest + 1))].push_back(i);
    neighbour_.assign(facets.size(), {});
    for (std::size_t i = 0; i < facets.size(); ++i) {
      neighbour_[i].resize(d_ + 1);
      int slot = 0;
      for (Face rest = facets[i]; rest; rest &= rest - 1, ++slot) {
        const auto& o = owners.at(facets[i] & ~(rest & (~rest + 1)));
        if (o.size() != 2) throw PreconditionError("complex is not a pseudomanifold");
        neighbour_[i][slot] = o[0] == static_cast<int>(i) ? o[1] : o[0];
      }
    }
    edge_degree_.assign(kMaxVertices + 1, std::vector<int>(kMaxVertices + 1, 0));
    for (Face f : facets) {
      auto vs = vertices_of(f);
      for (std::size_t x = 0; x < vs.size(); ++x)
        for (std::size_t y = x + 1; y < vs.size(); ++y) {
          ++edge_degree_[vs[x]][vs[y]];
          ++edge_degree_[vs[y]][vs[x]];
        }
    }
  }

  const SimplicialComplex& complex() const { return m_; }
  int edge_degree(int u, int v) const { return edge_degree_[u][v]; }

  /// Labels (vertex -> 1-based label, 0 if unused) and the relabeled facets.
  struct Labeling {
    std::array<int, kMaxVertices + 1> label{};
    std::vector<Face> output;
  };

  Labeling label_from(const std::vector<int>& start) const {
    const auto& facets = m_.facets();
    Face start_face = 0;
    for (int v : start) start_face |= vertex_bit(v);
    auto it = std::lower_bound(facets.begin(), facets.end(), start_face, LexLess{});
    if (it == facets.end() || *it != start_face) throw PreconditionError("start is not a facet");

    Labeling result;
    int next = 1;
    for (int v : start) result.label[v] = next++;
    std::vector<char> visited(facets.size(), 0);
    std::vector<int> queue{static_cast<int>(it - facets.begin())};
    visited[queue[0]] = 1;
    std::vector<std::pair<int, int>> by_label;  // (label, slot)
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int fi = queue[head];
      Face f = facets[fi];
      by_label.clear();
      int slot = 0;
      for (Face rest = f; rest; rest &= rest - 1, ++slot)
        by_label.emplace_back(result.label[std::countr_zero(rest) + 1], slot);
      std::sort(by_label.begin(), by_label.end());
      for (auto [lab, s] : by_label) {
        int gi = neighbour_[fi][s];
        Face w = facets[gi] & ~f;
        int wv = std::countr_zero(w) + 1;
        if (result.label[wv] == 0) result.label[wv] = next++;
        if (!visited[gi]) {
          visited[gi] = 1;
          queue.push_back(gi);
        }
      }
    }
    if (queue.size() != facets.size()) throw PreconditionError("complex is not strongly connected");
    result.output.reserve(facets.size());
    for (Face f : facets) {
      Face g = 0;
      for (Face rest = f; rest; rest &= rest - 1) g |= vertex_bit(result.label[std::countr_zero(rest) + 1]);
      result.output.push_back(g);
    }
    std::sort(result.output.begin(), result.output.end(), LexLess{});
    return result;
  }

  /// Invariant of appending vertex w to the prefix: number of facets that
  /// contain the extended prefix, then the degrees of the edges {v_i, w}.
  std::vector<int> child_invariant(const std::vector<int>& prefix, int count, int w) const {
    std::vector<int> inv{count};
    for (int v : prefix) inv.push_back(edge_degree_[v][w]);
    return inv;
  }

 private:
  const SimplicialComplex& m_;
  int d_;
  std::vector<std::vector<int>> neighbour_;
  std::vector<std::vector<int>> edge_degree_;
};

using Invariants = std::vector<std::vector<int>>;  // one entry per level

struct Child {
  int vertex;
  std::vector<int> invariant;
  std::vector<int> containing;  // facet indices containing the extended prefix
};

std::vector<Child> children_of(const PropagationContext& ctx, const std::vector<int>& prefix, Face prefix_mask,
                               const std::vector<int>& containing) {
  const auto& facets = ctx.complex().facets();
  Face candidates = 0;
  for (int fi : containing) candidates |= facets[fi];
  candidates &= ~prefix_mask;
  std::vector<Child> out;
  for (int w : vertices_of(candidates)) {
    Child c;
    c.vertex = w;
    for (int fi : containing)
      if (facets[fi] & vertex_bit(w)) c.containing.push_back(fi);
    c.invariant = ctx.child_invariant(prefix, static_cast<int>(c.containing.size()), w);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const Child& a, const Child& b) { return a.invariant < b.invariant; });
  return out;
}

struct VertexMap {
  std::array<std::uint8_t, kMaxVertices + 1> image{};
  bool fixes(const std::vector<int>& points) const {
    return std::all_of(points.begin(), points.end(), [&](int p) { return image[p] == p; });
  }
};

// Depth-first search for the minimal (invariants, output) leaf with pruning by
// invariants and by automorphisms (given or discovered at equal leaves).
class CanonicalSearch {
 public:
  CanonicalSearch(const PropagationContext& ctx, std::vector<VertexMap> known)
      : ctx_(ctx), depth_(ctx.complex().dim() + 1), known_(std::move(known)) {}

  void run() {
    std::vector<int> all(ctx_.complex().facet_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> prefix;
    Invariants path;
    std::vector<const VertexMap*> fixing;
    for (const auto& g : known_) fixing.push_back(&g);
    dfs(prefix, 0, all, path, fixing);
  }

  const std::vector<Face>& best_output() const { return best_.output; }

 private:
  struct Leaf {
    bool set = false;
    Invariants inv;
    std::vector<int> path;
    std::vector<Face> output;
    std::array<int, kMaxVertices + 1> label{};
  };

  static int compare_prefix(const Invariants& a, const Invariants& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] < b[i]) return -1;
      if (b[i] < a[i]) return 1;
    }
    return 0;
  }

  static std::size_t common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return k;
  }

  VertexMap automorphism_between(const Leaf& from, const std::array<int, kMaxVertices + 1>& to_label) const {
    std::array<int, kMaxVertices + 1> inverse{};
    for (int v = 1; v <= kMaxVertices; ++v)
      if (to_label[v]) inverse[to_label[v]] = v;
    VertexMap g;
    for (int v = 0; v <= kMaxVertices; ++v) g.image[v] = static_cast<std::uint8_t>(v);
    for (int v = 1; v <= kMaxVertices; ++v)
      if (from.label[v]) g.image[v] = static_cast<std::uint8_t>(inverse[from.label[v]]);
    return g;
  }

  // Returns the prefix length to resume at after an automorphism jump.
  std::optional<std::size_t> dfs(std::vector<int>& prefix, Face mask, const std::vector<int>& containing,
                                 Invariants& path, const std::vector<const VertexMap*>& given) {
    if (best_.set && compare_prefix(path, best_.inv) > 0) return std::nullopt;
    const std::size_t level = prefix.size();
    if (static_cast<int>(level) == depth_) return leaf(prefix, path);

    std::vector<const VertexMap*> fixing;
    for (const auto* g : given)
      if (g->fixes(prefix)) fixing.push_back(g);

    auto children = children_of(ctx_, prefix, mask, containing);
    std::vector<int> explored;
    for (auto& child : children) {
      if (!explored.empty() && equivalent_to_explored(child.vertex, explored, prefix, fixing)) continue;
      explored.push_back(child.vertex);
      prefix.push_back(child.vertex);
      path.push_back(child.invariant);
      auto jump = dfs(prefix, mask | vertex_bit(child.vertex), child.containing, path, fixing);
      prefix.pop_back();
      path.pop_back();
      if (jump && *jump < level) return jump;
    }
    return std::nullopt;
  }

  bool equivalent_to_explored(int w, const std::vector<int>& explored, const std::vector<int>& prefix,
                              const std::vector<const VertexMap*>& fixing) {
    std::vector<const VertexMap*> maps = fixing;
    for (const auto& g : discovered_)
      if (g.fixes(prefix)) maps.push_back(&g);
    if (maps.empty()) return false;
    std::array<int, kMaxVertices + 1> parent;
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    Face verts = ctx_.complex().vertex_set();
    for (const auto* g : maps)
      for (int v : vertices_of(verts)) parent[find(v)] = find(g->image[v]);
    int root = find(w);
    return std::any_of(explored.begin(), explored.end(), [&](int e) { return find(e) == root; });
  }

  std::optional<std::size_t> leaf(const std::vector<int>& prefix, const Invariants& path) {
    auto lab = ctx_.label_from(prefix);
    if (!best_.set) {
      best_ = Leaf{true, path, prefix, lab.output, lab.label};
      first_ = best_;
      return std::nullopt;
    }
    int cmp = compare_prefix(path, best_.inv);
    if (cmp < 0 || (cmp == 0 && output_less(lab.output, best_.output))) {
      best_ = Leaf{true, path, prefix, std::move(lab.output), lab.label};
      return std::nullopt;
    }
    for (const Leaf* ref : {&first_, &best_}) {
      if (path == ref->inv && lab.output == ref->output) {
        discovered_.push_back(automorphism_between(*ref, lab.label));
        return common_prefix(prefix, ref->path);
      }
    }
    return std::nullopt;
  }

  const PropagationContext& ctx_;
  int depth_;
  std::vector<VertexMap> known_;
  std::deque<VertexMap> discovered_;
  Leaf best_;
  Leaf first_;
};

std::vector<VertexMap> automorphisms_from_group(const SimplicialComplex& m, const PermutationGroup* g) {
  std::vector<VertexMap> out;
  if (g == nullptr || g->degree() != m.n()) return out;
  for (const auto& gen : g->generators()) {
    for (Face f : m.facets())
      if (!m.has_facet(gen.apply(f))) return out;  // not automorphisms of m: ignore the hint
  }
  std::vector<Permutation> elements;
  try {
    elements = group_elements(*g, 20000);
  } catch (const CapExceeded&) {
    return out;
  }
  for (const auto& p : elements) {
    if (p.is_identity()) continue;
    VertexMap map;
    for (int v = 0; v <= kMaxVertices; ++v) map.image[v] = static_cast<std::uint8_t>(v);
    for (int v = 1; v <= g->degree(); ++v) map.image[v] = static_cast<std::uint8_t>(p(v));
    out.push_back(map);
  }
  return out;
}

void require_searchable(const SimplicialComplex& m) {
  if (m.dim() < 1 || m.facet_count() == 0) throw PreconditionError("complex must be a nonempty pseudomanifold");
}

std::string hex_face(Face f) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  do {
    out.insert(out.begin(), digits[f & 0xf]);
    f >>= 4;
  } while (f);
  return out;
}

// Greedy path: smallest invariant at each level, smallest vertex on ties.
std::vector<int> greedy_start(const PropagationContext& ctx, Invariants& inv) {
  const auto& m = ctx.complex();
  std::vector<int> all(m.facet_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> prefix;
  Face mask = 0;
  while (static_cast<int>(prefix.size()) <= m.dim()) {
    auto children = children_of(ctx, prefix, mask, all);
    const Child& c = children.front();
    prefix.push_back(c.vertex);
    inv.push_back(c.invariant);
    mask |= vertex_bit(c.vertex);
    all = c.containing;
  }
  return prefix;
}

}  // namespace

std::vector<Face> propagation_labeling(const SimplicialComplex& m, const std::vector<int>& start) {
  require_searchable(m);
  PropagationContext ctx(m);
  return ctx.label_from(start).output;
}

std::string canonical_key(const SimplicialComplex& m, const PermutationGroup* automorphisms) {
  require_searchable(m);
  PropagationContext ctx(m);
  CanonicalSearch search(ctx, automorphisms_from_group(m, automorphisms));
  search.run();
  std::string key = "d" + std::to_string(m.dim()) + ";f" + f_vector(m).format_full() + ";det" +
                    as_determinant(m).str() + ";";
  bool first = true;
  for (Face f : search.best_output()) {
    if (!first) key += ',';
    key += hex_face(f);
    first = false;
  }
  return key;
}

std::optional<Permutation> are_isomorphic(const SimplicialComplex& a, const SimplicialComplex& b,
                                          const std::vector<Face>* b_facet_reps) {
  if (a.n() != b.n() || a.dim() != b.dim() || a.facet_count() != b.facet_count()) return std::nullopt;
  if (a.vertex_count() != b.vertex_count()) return std::nullopt;
  if (f_vector(a) != f_vector(b)) return std::nullopt;
  if (as_determinant(a) != as_determinant(b)) return std::nullopt;
  require_searchable(a);
  require_searchable(b);
  PropagationContext ca(a);
  PropagationContext cb(b);

  Invariants target;
  auto start = greedy_start(ca, target);
  auto reference = ca.label_from(start);

  std::unordered_set<Face> allowed;
  if (b_facet_reps != nullptr) {
    for (Face r : *b_facet_reps) {
      if (!b.has_facet(r)) throw PreconditionError("orbit representative is not a facet of the second complex");
      allowed.insert(r);
    }
  }
  auto prefix_allowed = [&](Face mask) {
    if (b_facet_reps == nullptr) return true;
    return std::any_of(allowed.begin(), allowed.end(), [&](Face r) { return contains(r, mask); });
  };

  std::optional<Permutation> found;
  std::vector<int> prefix;
  // Depth-first over orderings of b whose invariants match those of the start in a.
  auto search = [&](auto& self, Face mask, const std::vector<int>& containing) -> void {
    if (found) return;
    const std::size_t level = prefix.size();
    if (static_cast<int>(level) == b.dim() + 1) {
      auto lab = cb.label_from(prefix);
      if (lab.output != reference.output) return;
      std::array<int, kMaxVertices + 1> inverse{};
      for (int v = 1; v <= kMaxVertices; ++v)
        if (lab.label[v]) inverse[lab.label[v]] = v;
      std::vector<int> images(a.n());
      std::iota(images.begin(), images.end(), 1);
      std::vector<bool> used(a.n() + 1, false);
      for (int v = 1; v <= a.n(); ++v) {
        if (reference.label[v]) {
          images[v - 1] = inverse[reference.label[v]];
          used[images[v - 1]] = true;
        }
      }
      // Unused labels (non-spanning complexes) are matched in increasing order.
      int spare = 1;
      for (int v = 1; v <= a.n(); ++v) {
        if (reference.label[v]) continue;
        while (used[spare]) ++spare;
        images[v - 1] = spare;
        used[spare] = true;
      }
      found = Permutation::from_images(images);
      return;
    }
    for (auto& child : children_of(cb, prefix, mask, containing)) {
      if (child.invariant != target[level]) continue;
      Face next = mask | vertex_bit(child.vertex);
      if (!prefix_allowed(next)) continue;
      prefix.push_back(child.vertex);
      self(self, next, child.containing);
      prefix.pop_back();
      if (found) return;
    }
  };
  std::vector<int> all(b.facet_count());
  std::iota(all.begin(), all.end(), 0);
  search(search, 0, all);
  return found;
}

bool kuehnel_bound_check(int n, long long chi) {
  long long m = n - 4;
  long long binom = m >= 3 ? m * (m - 1) * (m - 2) / 6 : 0;
  return binom >= 10 * (chi - 2);
}

BrehmKuehnel brehm_kuehnel_bound(int n, int d) {
  int threshold = 3 * ((d + 1) / 2) + 3;
  if (n < threshold) return BrehmKuehnel::must_be_sphere;
  if (n == threshold && (d == 2 || d == 4 || d == 8 || d == 16)) return BrehmKuehnel::sphere_or_projective_like;
  return BrehmKuehnel::unconstrained;
}

std::string to_string(BrehmKuehnel b) {
  switch (b) {
    case BrehmKuehnel::must_be_sphere: return "must_be_sphere";
    case BrehmKuehnel::sphere_or_projective_like: return "sphere_or_projective_like";
    case BrehmKuehnel::unconstrained: return "unconstrained";
  }
  return "unconstrained";
}

}  // namespace vtman
