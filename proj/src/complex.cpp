#include "vtman/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vtman/error.hpp"
#include "vtman/orbits.hpp"

namespace vtman {

long long FVector::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    chi += (i % 2 == 0 ? 1 : -1) * static_cast<long long>(counts[i]);
  return chi;
}

namespace {

std::string join_counts(const std::vector<std::uint64_t>& counts, std::size_t from) {
  std::string out = "(";
  for (std::size_t i = from; i < counts.size(); ++i) {
    if (i > from) out += ',';
    out += std::to_string(counts[i]);
  }
  return out + ")";
}

// Union-find over small integer ids.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Ridge -> indices of the facets containing it.
std::unordered_map<Face, std::vector<int>> ridge_table(const SimplicialComplex& m) {
  std::unordered_map<Face, std::vector<int>> table;
  table.reserve(m.facet_count() * (m.dim() + 1));
  const auto& facets = m.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    for (Face rest = facets[i]; rest; rest &= rest - 1) {
      Face ridge = facets[i] & ~(rest & (~rest + 1));
      table[ridge].push_back(static_cast<int>(i));
    }
  }
  return table;
}

}  // namespace

std::string FVector::format_full() const { return join_counts(counts, 0); }
std::string FVector::format_table() const { return join_counts(counts, 1); }

SimplicialComplex::SimplicialComplex(int n, int d, std::vector<Face> facets, bool require_spanning)
    : n_(n), d_(d), facets_(std::move(facets)) {
  if (n < 0 || n > kMaxVertices) throw InputError("vertex count out of range");
  if (d < -1) throw InputError("dimension out of range");
  const Face allowed = full_face(n);
  for (Face f : facets_) {
    if (face_size(f) != d + 1)
      throw InputError("facet " + format_face_spaced(f) + " does not have " + std::to_string(d + 1) + " vertices");
    if ((f & ~allowed) != 0) throw InputError("facet " + format_face_spaced(f) + " uses a label above n");
  }
  std::sort(facets_.begin(), facets_.end(), LexLess{});
  auto dup = std::adjacent_find(facets_.begin(), facets_.end());
  if (dup != facets_.end()) throw InputError("duplicate facet " + format_face_spaced(*dup));
  if (require_spanning && vertex_set() != allowed) throw InputError("some vertex label in 1..n is unused");
}

Face SimplicialComplex::vertex_set() const {
  Face all = 0;
  for (Face f : facets_) all |= f;
  return all;
}

bool SimplicialComplex::has_face(Face f) const {
  return std::any_of(facets_.begin(), facets_.end(), [f](Face g) { return contains(g, f); });
}

bool SimplicialComplex::has_facet(Face f) const {
  return std::binary_search(facets_.begin(), facets_.end(), f, LexLess{});
}

SimplicialComplex SimplicialComplex::compacted() const {
  std::vector<int> relabel(kMaxVertices + 1, 0);
  int next = 0;
  for (int v : vertices_of(vertex_set())) relabel[v] = ++next;
  std::vector<Face> out;
  out.reserve(facets_.size());
  for (Face f : facets_) {
    Face g = 0;
    for (int v : vertices_of(f)) g |= vertex_bit(relabel[v]);
    out.push_back(g);
  }
  return SimplicialComplex(next, d_, std::move(out));
}

SimplicialComplex SimplicialComplex::relabeled(const Permutation& p) const {
  if (p.degree() != n_) throw PreconditionError("relabeling degree differs from vertex count");
  std::vector<Face> out;
  out.reserve(facets_.size());
  for (Face f : facets_) out.push_back(p.apply(f));
  return SimplicialComplex(n_, d_, std::move(out), false);
}

SimplicialComplex from_orbits(const PermutationGroup& g, const std::vector<Face>& reps) {
  if (reps.empty()) throw PreconditionError("at least one orbit representative is required");
  const int k = face_size(reps.front());
  MaskMapper mapper(g);
  std::unordered_set<Face> facets;
  for (Face rep : reps) {
    if (face_size(rep) != k) throw PreconditionError("orbit representatives differ in size");
    if ((rep & ~full_face(g.degree())) != 0) throw PreconditionError("representative uses a label above n");
    if (!facets.insert(rep).second) continue;
    std::vector<Face> queue{rep};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t gi = 0; gi < mapper.generator_count(); ++gi) {
        Face image = mapper.apply(gi, queue[head]);
        if (facets.insert(image).second) queue.push_back(image);
      }
    }
  }
  return SimplicialComplex(g.degree(), k - 1, std::vector<Face>(facets.begin(), facets.end()), false);
}

FVector f_vector(const SimplicialComplex& m) {
  FVector fv;
  if (m.dim() < 0) return fv;
  std::unordered_set<Face> faces;
  faces.reserve(m.facet_count() * 8);
  for (Face f : m.facets()) {
    // Faces already present have all their subfaces present as well, but the
    // subset walk is cheap enough at these sizes.
    for_each_subface(f, [&](Face sub) { faces.insert(sub); });
  }
  fv.counts.assign(m.dim() + 1, 0);
  for (Face f : faces) ++fv.counts[face_size(f) - 1];
  return fv;
}

SimplicialComplex link(const SimplicialComplex& m, Face face) {
  std::vector<Face> out;
  for (Face f : m.facets())
    if (contains(f, face)) out.push_back(f & ~face);
  if (out.empty()) throw PreconditionError("face " + format_face_spaced(face) + " is not in the complex");
  return SimplicialComplex(m.n(), m.dim() - face_size(face), std::move(out), false);
}

SimplicialComplex star(const SimplicialComplex& m, Face face) {
  std::vector<Face> out;
  for (Face f : m.facets())
    if (contains(f, face)) out.push_back(f);
  if (out.empty()) throw PreconditionError("face " + format_face_spaced(face) + " is not in the complex");
  return SimplicialComplex(m.n(), m.dim(), std::move(out), false);
}

std::optional<Face> find_bad_ridge(const SimplicialComplex& m) {
  if (m.dim() < 1) return std::nullopt;
  std::optional<Face> bad;
  for (const auto& [ridge, owners] : ridge_table(m))
    if (owners.size() != 2 && (!bad || lex_less(ridge, *bad))) bad = ridge;
  return bad;
}

bool is_pseudomanifold(const SimplicialComplex& m) {
  return m.dim() >= 1 && m.facet_count() > 0 && !find_bad_ridge(m);
}

bool is_connected(const SimplicialComplex& m) {
  if (m.vertex_set() == 0) return true;
  DisjointSets sets(kMaxVertices);
  for (Face f : m.facets()) {
    int root = std::countr_zero(f);
    for (int v : vertices_of(f)) sets.unite(v - 1, root);
  }
  int root = sets.find(std::countr_zero(m.vertex_set()));
  for (int v : vertices_of(m.vertex_set()))
    if (sets.find(v - 1) != root) return false;
  return true;
}

bool is_strongly_connected(const SimplicialComplex& m) {
  if (m.facet_count() <= 1) return true;
  DisjointSets sets(m.facet_count());
  for (const auto& [ridge, owners] : ridge_table(m))
    for (std::size_t i = 1; i < owners.size(); ++i) sets.unite(owners[0], owners[i]);
  int root = sets.find(0);
  for (std::size_t i = 1; i < m.facet_count(); ++i)
    if (sets.find(static_cast<int>(i)) != root) return false;
  return true;
}

long long euler_characteristic(const SimplicialComplex& m) { return f_vector(m).euler_characteristic(); }

bool is_orientable(const SimplicialComplex& m) {
  if (!is_pseudomanifold(m)) throw PreconditionError("orientability needs a pseudomanifold");
  const auto& facets = m.facets();
  auto table = ridge_table(m);
  // Sign of the ridge f \ {v} in the boundary of f: (-1)^(position of v in f).
  auto induced = [](Face f, Face removed) { return std::popcount(f & (removed - 1)) % 2 == 0 ? 1 : -1; };
  std::vector<int> sign(facets.size(), 0);
  std::vector<int> queue;
  for (std::size_t start = 0; start < facets.size(); ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    queue.assign(1, static_cast<int>(start));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int i = queue[head];
      Face f = facets[i];
      for (Face rest = f; rest; rest &= rest - 1) {
        Face v = rest & (~rest + 1);
        Face ridge = f & ~v;
        const auto& owners = table.at(ridge);
        int j = owners[0] == i ? owners[1] : owners[0];
        Face w = facets[j] & ~ridge;
        int wanted = -sign[i] * induced(f, v) * induced(facets[j], w);
        if (sign[j] == 0) {
          sign[j] = wanted;
          queue.push_back(j);
        } else if (sign[j] != wanted) {
          return false;
        }
      }
    }
  }
  return true;
}

Step3Result step3_tests(const SimplicialComplex& m) {
  const int d = m.dim();
  if (!is_connected(m)) return {false, "complex is disconnected"};
  const Face v0 = vertex_bit(1);
  if (!m.has_face(v0)) return {false, "vertex 1 is not used"};
  auto sphere_chi = [](int k) { return k % 2 == 0 ? 2 : 0; };

  auto check = [&](Face face, const char* what) -> std::optional<Step3Result> {
    auto lk = link(m, face);
    int k = lk.dim();
    if (!is_connected(lk))
      return Step3Result{false, std::string(what) + " link of " + format_face_spaced(face) + " is disconnected"};
    long long chi = euler_characteristic(lk);
    if (chi != sphere_chi(k))
      return Step3Result{false, std::string(what) + " link of " + format_face_spaced(face) +
                                    " has Euler characteristic " + std::to_string(chi) + ", expected " +
                                    std::to_string(sphere_chi(k))};
    return std::nullopt;
  };

  if (auto fail = check(v0, "vertex")) return *fail;
  Face neighbours = link(m, v0).vertex_set();
  if (d >= 3) {
    for (int v : vertices_of(neighbours))
      if (auto fail = check(v0 | vertex_bit(v), "edge")) return *fail;
  }
  if (d >= 4) {
    std::unordered_set<Face> triangles;
    for (Face f : m.facets()) {
      if (!(f & v0)) continue;
      for_each_subface_of_size(f & ~v0, 2, [&](Face e) { triangles.insert(e | v0); });
    }
    std::vector<Face> sorted(triangles.begin(), triangles.end());
    std::sort(sorted.begin(), sorted.end(), LexLess{});
    for (Face t : sorted)
      if (auto fail = check(t, "triangle")) return *fail;
  }
  return {true, {}};
}

SimplicialComplex read_complex(std::istream& in) {
  std::string line;
  int n = -1, d = -2;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream header(line);
    if (!(header >> n >> d)) throw InputError("complex header must be 'n d'");
    break;
  }
  if (n < 0) throw InputError("missing complex header");
  std::vector<Face> facets;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::vector<int> labels;
    std::string token;
    while (row >> token) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw InputError("bad vertex label '" + token + "'");
      }
      if (v < 1 || v > n) throw InputError("vertex label " + token + " outside 1.." + std::to_string(n));
      labels.push_back(v);
    }
    Face f = make_face(labels);
    if (face_size(f) != static_cast<int>(labels.size())) throw InputError("repeated vertex in facet: " + line);
    facets.push_back(f);
  }
  return SimplicialComplex(n, d, std::move(facets));
}

SimplicialComplex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_complex(in);
}

void write_complex(std::ostream& out, const SimplicialComplex& m) {
  out << m.n() << ' ' << m.dim() << '\n';
  for (Face f : m.facets()) out << format_face_spaced(f) << '\n';
}

std::string format_gap(const SimplicialComplex& m) {
  constexpr std::size_t kWidth = 64;
  std::string out = "[ ";
  std::size_t line_start = 0;
  const auto& facets = m.facets();
  for (std::size_t i = 0; i < facets.size(); ++i) {
    std::string item = "[ ";
    auto vs = vertices_of(facets[i]);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (j) item += ", ";
      item += std::to_string(vs[j]);
    }
    item += " ]";
    item += i + 1 < facets.size() ? "," : " ]";
    if (i > 0) {
      if (out.size() - line_start + 1 + item.size() > kWidth) {
        out += "\n  ";
        line_start = out.size() - 2;
      } else {
        out += ' ';
      }
    }
    out += item;
  }
  if (facets.empty()) out += "]";
  return out;
}

}  // namespace vtman
