#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtman/face.hpp"

namespace vtman {

/// A bijection of {1..n}. Stored 0-based internally.
class Permutation {
 public:
  explicit Permutation(int degree);

  /// images[i] is the image of point i+1 (1-based values). Throws InputError
  /// unless images is a bijection on {1..n}.
  static Permutation from_images(const std::vector<int>& images);

  int degree() const { return static_cast<int>(images_.size()); }

  /// Image of a 1-based point.
  int operator()(int point) const { return images_[point - 1] + 1; }

  /// Image of a vertex set.
  Face apply(Face f) const;

  /// Composition: (a * b)(x) = a(b(x)).
  Permutation operator*(const Permutation& rhs) const;

  Permutation inverse() const;
  bool is_identity() const;

  /// Disjoint cycle notation, fixed points omitted, "()" for the identity.
  std::string to_cycles() const;

  const std::vector<std::uint8_t>& images() const { return images_; }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// Parses a product of disjoint cycles over 1..degree, e.g. "(1,2)(3,4)".
Permutation parse_cycles(std::string_view text, int degree);

class PermutationGroup {
 public:
  PermutationGroup(int degree, std::vector<Permutation> generators, std::string name = {},
                   std::optional<std::uint64_t> order = std::nullopt, int catalog_index = 0);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  std::optional<std::uint64_t> order() const { return order_; }

  /// Position in the transitive groups library (n^i), 0 when unknown.
  int catalog_index() const { return catalog_index_; }

  /// "t7n4" when the library index is known, otherwise the name.
  std::string ref() const;

  /// True when the declared order is n! or n!/2.
  bool is_symmetric_or_alternating() const;

 private:
  int degree_;
  std::vector<Permutation> generators_;
  std::string name_;
  std::optional<std::uint64_t> order_;
  int catalog_index_;
};

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// All group elements by breadth-first closure. Throws CapExceeded when the
/// group has more than cap elements. Sorted.
std::vector<Permutation> group_elements(const PermutationGroup& g, std::size_t cap = kDefaultClosureCap);

bool is_transitive(const PermutationGroup& g);

/// k -> (m*k) mod n on {1..n}, with residue 0 written as n.
Permutation multiplication_map(int n, int m);

enum class GroupFamily { cyclic, dihedral, symmetric, alternating, affine_frobenius };

std::optional<GroupFamily> parse_family(std::string_view name);

/// Built-in transitive families. `param` is the order of the multiplier
/// subgroup k for affine_frobenius (requires n prime, k | n-1) and ignored
/// otherwise.
PermutationGroup builtin_group(GroupFamily family, int n, int param = 0);

/// Number of transitive groups of degree n (n <= 31), 0 if unknown.
int transitive_group_count(int n);

/// The standard n-cycle (1,2,...,n).
Permutation standard_cycle(int n);

/// Membership of the standard n-cycle; nullopt when the group is too large
/// to decide by closure.
std::optional<bool> contains_standard_cycle(const PermutationGroup& g, std::size_t cap = 200'000);

struct CatalogOptions {
  /// Only records of these degrees are parsed and validated (all when empty).
  std::set<int> degrees;
  std::size_t closure_cap = kDefaultClosureCap;
};

/// Loads a JSON group catalog; every record is checked for degree, generator
/// validity, transitivity and (when order <= closure_cap) its order.
std::vector<PermutationGroup> load_catalog(const std::filesystem::path& path, const CatalogOptions& options = {});

/// Same as load_catalog but from a JSON text.
std::vector<PermutationGroup> parse_catalog(std::string_view json_text, const CatalogOptions& options = {});

/// Resolves "t7n4", a family spec ("cyclic", "dihedral", "affine:6", ...)
/// or a catalog name for degree n.
PermutationGroup resolve_group(std::string_view spec, int n, const std::vector<PermutationGroup>& catalog);

}  // namespace vtman
