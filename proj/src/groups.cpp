#include "vtman/groups.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "vtman/error.hpp"

namespace vtman {

namespace {

std::string images_key(const Permutation& p) {
  const auto& im = p.images();
  return std::string(im.begin(), im.end());
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

int power_mod(int base, int exp, int mod) {
  long long r = 1, b = base % mod;
  while (exp > 0) {
    if (exp & 1) r = r * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<int>(r);
}

int primitive_root(int p) {
  std::vector<int> factors;
  int m = p - 1;
  for (int q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (int g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](int q) { return power_mod(g, (p - 1) / q, p) != 1; });
    if (ok) return g;
  }
  return 1;  // p == 2
}

// Library positions of the dihedral action on the n-gon.
int dihedral_index(int n) {
  switch (n) {
    case 3: return 2;
    case 4: return 3;
    case 5: return 2;
    case 6: return 3;
    case 7: return 2;
    case 8: return 6;
    case 9: return 3;
    case 10: return 3;
    case 11: return 2;
    case 12: return 12;
    case 13: return 2;
    case 14: return 3;
    case 15: return 2;
    default: return 0;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(int degree) {
  if (degree < 1 || degree > kMaxVertices) throw PreconditionError("permutation degree out of range");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), std::uint8_t{0});
}

Permutation Permutation::from_images(const std::vector<int>& images) {
  Permutation p(static_cast<int>(images.size()));
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    int v = images[i];
    if (v < 1 || v > static_cast<int>(images.size()) || seen[v - 1])
      throw InputError("images do not form a bijection");
    seen[v - 1] = true;
    p.images_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

Face Permutation::apply(Face f) const {
  Face out = 0;
  while (f) {
    int i = std::countr_zero(f);
    out |= Face{1} << images_[i];
    f &= f - 1;
  }
  return out;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (degree() != rhs.degree()) throw PreconditionError("degree mismatch in composition");
  Permutation out(degree());
  for (int i = 0; i < degree(); ++i) out.images_[i] = images_[rhs.images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out(degree());
  for (int i = 0; i < degree(); ++i) out.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return out;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (int start = 0; start < degree(); ++start) {
    if (done[start] || images_[start] == start) continue;
    out += '(';
    int x = start;
    bool first = true;
    while (!done[x]) {
      done[x] = true;
      if (!first) out += ',';
      out += std::to_string(x + 1);
      first = false;
      x = images_[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(std::string_view text, int degree) {
  if (degree < 1 || degree > kMaxVertices) throw InputError("degree out of range");
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw InputError("empty cycle string");
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("expected '(' in cycle string: " + std::string(text));
    ++i;
    std::vector<int> cycle;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;
      skip_ws();
      continue;
    }
    while (true) {
      skip_ws();
      int value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
      if (ec != std::errc()) throw InputError("expected a point in cycle string: " + std::string(text));
      i = static_cast<std::size_t>(ptr - text.data());
      if (value < 1 || value > degree)
        throw InputError("point " + std::to_string(value) + " out of range 1.." + std::to_string(degree));
      if (used[value - 1]) throw InputError("point " + std::to_string(value) + " repeated in cycles");
      used[value - 1] = true;
      cycle.push_back(value);
      skip_ws();
      if (i >= text.size()) throw InputError("unterminated cycle: " + std::string(text));
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw InputError("unexpected character in cycle string: " + std::string(text));
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) images[cycle[j] - 1] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation::from_images(images);
}

// ---------------------------------------------------------------------------
// PermutationGroup

PermutationGroup::PermutationGroup(int degree, std::vector<Permutation> generators, std::string name,
                                   std::optional<std::uint64_t> order, int catalog_index)
    : degree_(degree),
      generators_(std::move(generators)),
      name_(std::move(name)),
      order_(order),
      catalog_index_(catalog_index) {
  if (generators_.empty()) throw PreconditionError("a group needs at least one generator");
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw PreconditionError("generator degree mismatch");
  if (order_ && *order_ == 0) throw PreconditionError("group order must be positive");
}

std::string PermutationGroup::ref() const {
  if (catalog_index_ > 0) return "t" + std::to_string(degree_) + "n" + std::to_string(catalog_index_);
  return name_;
}

bool PermutationGroup::is_symmetric_or_alternating() const {
  if (!order_ || degree_ > 20) return false;
  std::uint64_t full = factorial(degree_);
  return *order_ == full || (degree_ >= 2 && *order_ * 2 == full && degree_ > 2);
}

std::vector<Permutation> group_elements(const PermutationGroup& g, std::size_t cap) {
  std::unordered_set<std::string> seen;
  std::vector<Permutation> elements;
  Permutation id(g.degree());
  seen.insert(images_key(id));
  elements.push_back(id);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& gen : g.generators()) {
      Permutation next = gen * elements[head];
      if (seen.insert(images_key(next)).second) {
        if (elements.size() >= cap) throw CapExceeded(cap);
        elements.push_back(std::move(next));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

bool is_transitive(const PermutationGroup& g) {
  Face orbit = vertex_bit(1);
  Face frontier = orbit;
  while (frontier) {
    Face next = 0;
    for (const auto& gen : g.generators()) next |= gen.apply(frontier);
    frontier = next & ~orbit;
    orbit |= next;
  }
  return orbit == full_face(g.degree());
}

Permutation multiplication_map(int n, int m) {
  if (n < 2) throw PreconditionError("modulus must be at least 2");
  if (m < 1 || m > n - 1 || std::gcd(m, n) != 1)
    throw PreconditionError("multiplier " + std::to_string(m) + " is not a unit mod " + std::to_string(n));
  std::vector<int> images(n);
  for (int k = 1; k <= n; ++k) {
    int r = static_cast<int>((static_cast<long long>(m) * k) % n);
    images[k - 1] = r == 0 ? n : r;
  }
  return Permutation::from_images(images);
}

std::optional<GroupFamily> parse_family(std::string_view name) {
  if (name == "cyclic") return GroupFamily::cyclic;
  if (name == "dihedral") return GroupFamily::dihedral;
  if (name == "symmetric") return GroupFamily::symmetric;
  if (name == "alternating") return GroupFamily::alternating;
  if (name == "affine_frobenius" || name == "affine") return GroupFamily::affine_frobenius;
  return std::nullopt;
}

Permutation standard_cycle(int n) {
  std::vector<int> images(n);
  for (int i = 1; i <= n; ++i) images[i - 1] = i % n + 1;
  return Permutation::from_images(images);
}

int transitive_group_count(int n) {
  static constexpr std::array<int, 32> counts = {0,   1,   1,    2,  5,   5,    16,    7,   50, 34, 45,
                                                 8,   301, 9,    63, 104, 1954, 10,    983, 8,  1117, 164,
                                                 59,  7,   25000, 211, 96, 2392, 1854, 8, 5712, 12};
  return n >= 1 && n <= 31 ? counts[n] : 0;
}

PermutationGroup builtin_group(GroupFamily family, int n, int param) {
  if (n < 1 || n > kMaxVertices) throw PreconditionError("degree out of range");
  switch (family) {
    case GroupFamily::cyclic:
      return PermutationGroup(n, {standard_cycle(n)}, "C" + std::to_string(n), n, n <= 15 ? 1 : 0);
    case GroupFamily::dihedral: {
      if (n < 3) throw PreconditionError("dihedral action needs n >= 3");
      int half = n / 2;
      std::vector<int> images(n);
      std::iota(images.begin(), images.end(), 1);
      for (int i = 1; i <= 2 * half; ++i) images[i - 1] = 2 * half + 1 - i;
      return PermutationGroup(n, {standard_cycle(n), Permutation::from_images(images)}, "D" + std::to_string(n),
                              2ULL * n, dihedral_index(n));
    }
    case GroupFamily::symmetric: {
      if (n < 2) throw PreconditionError("symmetric group needs n >= 2");
      std::vector<Permutation> gens{parse_cycles("(1,2)", n)};
      if (n > 2) gens.push_back(standard_cycle(n));
      std::optional<std::uint64_t> order;
      if (n <= 20) order = factorial(n);
      return PermutationGroup(n, std::move(gens), "S" + std::to_string(n), order, transitive_group_count(n));
    }
    case GroupFamily::alternating: {
      if (n < 3) throw PreconditionError("alternating group needs n >= 3");
      std::vector<Permutation> gens;
      for (int i = 1; i <= n - 2; ++i) {
        gens.push_back(parse_cycles("(" + std::to_string(i) + "," + std::to_string(n - 1) + "," +
                                        std::to_string(n) + ")",
                                    n));
      }
      std::optional<std::uint64_t> order;
      if (n <= 20) order = factorial(n) / 2;
      int count = transitive_group_count(n);
      return PermutationGroup(n, std::move(gens), "A" + std::to_string(n), order, count > 1 ? count - 1 : 0);
    }
    case GroupFamily::affine_frobenius: {
      if (!is_prime(n)) throw PreconditionError("affine_frobenius needs a prime degree");
      int k = param;
      if (k < 1 || (n - 1) % k != 0) throw PreconditionError("k must divide n-1 for affine_frobenius");
      std::vector<Permutation> gens{standard_cycle(n)};
      if (k > 1) gens.push_back(multiplication_map(n, power_mod(primitive_root(n), (n - 1) / k, n)));
      return PermutationGroup(n, std::move(gens), "F" + std::to_string(k * n) + "(" + std::to_string(n) + ")",
                              static_cast<std::uint64_t>(k) * n, 0);
    }
  }
  throw PreconditionError("unknown group family");
}

std::optional<bool> contains_standard_cycle(const PermutationGroup& g, std::size_t cap) {
  Permutation cycle = standard_cycle(g.degree());
  for (const auto& gen : g.generators())
    if (gen == cycle) return true;
  if (g.is_symmetric_or_alternating()) {
    std::uint64_t full = factorial(g.degree());
    return *g.order() == full || g.degree() % 2 == 1;
  }
  try {
    auto elements = group_elements(g, cap);
    return std::binary_search(elements.begin(), elements.end(), cycle);
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Catalog

std::vector<PermutationGroup> parse_catalog(std::string_view json_text, const CatalogOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("catalog must be a JSON array");

  std::vector<PermutationGroup> groups;
  for (const auto& rec : doc) {
    if (!rec.is_object()) throw InputError("catalog records must be objects");
    int degree = 0, index = 0;
    std::uint64_t order = 0;
    std::string name;
    std::vector<std::string> generator_text;
    try {
      degree = rec.at("degree").get<int>();
      index = rec.at("index").get<int>();
      name = rec.at("name").get<std::string>();
      order = rec.at("order").get<std::uint64_t>();
      generator_text = rec.at("generators").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed catalog record: ") + e.what());
    }
    if (!options.degrees.empty() && !options.degrees.contains(degree)) continue;
    std::string where = "catalog record t" + std::to_string(degree) + "n" + std::to_string(index);
    if (degree < 1 || degree > kMaxVertices) throw InputError(where + ": degree out of range");
    if (generator_text.empty()) throw InputError(where + ": no generators");
    std::vector<Permutation> gens;
    for (const auto& text : generator_text) gens.push_back(parse_cycles(text, degree));
    PermutationGroup g(degree, std::move(gens), name, order, index);
    if (!is_transitive(g)) throw InputError(where + ": group is not transitive");
    if (order <= options.closure_cap) {
      std::size_t actual = group_elements(g, options.closure_cap).size();
      if (actual != order)
        throw InputError(where + ": declared order " + std::to_string(order) + " but generators give " +
                         std::to_string(actual));
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

std::vector<PermutationGroup> load_catalog(const std::filesystem::path& path, const CatalogOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open catalog " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str(), options);
}

namespace {

// Refs written by built-in groups, e.g. "t13n2" or "C16".
std::optional<PermutationGroup> builtin_by_ref(const std::string& ref, int n) {
  for (auto family : {GroupFamily::cyclic, GroupFamily::dihedral, GroupFamily::symmetric, GroupFamily::alternating}) {
    try {
      auto g = builtin_group(family, n);
      if (g.ref() == ref || g.name() == ref) return g;
    } catch (const PreconditionError&) {
    }
  }
  return std::nullopt;
}

}  // namespace

PermutationGroup resolve_group(std::string_view spec, int n, const std::vector<PermutationGroup>& catalog) {
  std::string s(spec);
  if (s.size() > 1 && s[0] == 't') {
    auto pos = s.find('n', 1);
    if (pos != std::string::npos) {
      int deg = std::atoi(s.substr(1, pos - 1).c_str());
      int idx = std::atoi(s.substr(pos + 1).c_str());
      if (deg != n) throw InputError("group " + s + " has degree " + std::to_string(deg) + ", expected " +
                                     std::to_string(n));
      for (const auto& g : catalog)
        if (g.degree() == deg && g.catalog_index() == idx) return g;
      if (auto g = builtin_by_ref(s, n)) return *g;
      throw InputError("group " + s + " not found in catalog");
    }
  }
  auto colon = s.find(':');
  std::string family_name = s.substr(0, colon);
  if (auto family = parse_family(family_name)) {
    int param = colon == std::string::npos ? 0 : std::atoi(s.substr(colon + 1).c_str());
    return builtin_group(*family, n, param);
  }
  for (const auto& g : catalog)
    if (g.degree() == n && g.name() == s) return g;
  if (auto g = builtin_by_ref(s, n)) return *g;
  throw InputError("unknown group '" + s + "'");
}

}  // namespace vtman
