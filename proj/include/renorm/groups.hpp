// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "renorm/errors.hpp"

namespace renorm {

/// Concrete group families with solvable word problem and cheap canonical
/// forms. Everything downstream (kernels, operators, certificates) works on
/// metric balls of these groups under the word metric of a fixed symmetric
/// generating set.
enum class GroupFamily { IntegerLattice, FreeGroup, Torus, Cyclic, Symmetric };

/// One group element in canonical form. The payload depends on the family:
///   IntegerLattice  n signed coordinates
///   FreeGroup       reduced word; letter +i is generator i, -i its inverse
///   Torus/Cyclic    coordinates reduced into [0, m)
///   Symmetric       one-line permutation of 0..n-1
struct Element {
  std::vector<std::int32_t> data;
  bool operator==(const Element&) const = default;
};

/// Enumeration cap: balls larger than this are refused with an explicit error
/// naming the predicted size.
inline constexpr std::size_t kDefaultBallCap = 50000;

class GroupModel {
 public:
  static GroupModel integer_lattice(int dim);
  static GroupModel free_group(int rank);
  static GroupModel torus(int modulus, int dim);
  static GroupModel cyclic(int modulus);
  static GroupModel symmetric(int degree);

  /// Parses "z:n" | "free:k" | "torus:m,n" | "cyclic:m" | "sym:n".
  static GroupModel parse(std::string_view spec);
  std::string spec_string() const;

  GroupFamily family() const { return family_; }
  int modulus() const { return modulus_; }      ///< torus/cyclic, else 0
  int degree() const { return dimension_; }     ///< dim, rank, or degree
  bool finite() const;
  std::uint64_t order() const;  ///< finite families only
  int diameter() const;         ///< finite families only

  /// Symmetric generating set in canonical order, identity excluded.
  const std::vector<Element>& generators() const { return generators_; }

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;

  /// Word length |g| with respect to the generating set.
  int word_length(const Element& g) const;

  /// Left-invariant word metric d(g,h) = |g^{-1} h|.
  int distance(const Element& g, const Element& h) const;

  /// Key whose lexicographic order is the canonical order used everywhere:
  /// shorter words first, then lexicographic on the canonical form.
  std::vector<std::int32_t> canonical_key(const Element& g) const;
  bool less(const Element& a, const Element& b) const;

  std::string to_string(const Element& g) const;

  /// Exact sphere sizes s_0..s_radius, computed combinatorially (no
  /// enumeration). Throws BallSizeError if a count overflows 64 bits.
  std::vector<std::uint64_t> sphere_sizes(int radius) const;

  /// Sum of sphere sizes up to radius (what ball_enumerate would produce).
  std::uint64_t predicted_ball_size(int radius) const;

 private:
  GroupModel(GroupFamily family, int m, int n);

  GroupFamily family_;
  int modulus_ = 0;    // torus / cyclic
  int dimension_ = 0;  // lattice/torus dim, free rank, symmetric degree
  std::vector<Element> generators_;
};

/// A metric ball B(e, radius) in canonical order: breadth-first layers, each
/// layer sorted by canonical key. Element 0 is the identity and the recorded
/// distances are non-decreasing.
struct Ball {
  GroupModel group;
  int radius = 0;
  std::vector<Element> elements;
  std::vector<int> distances;
  std::map<std::vector<std::int32_t>, int> index;

  int size() const { return static_cast<int>(elements.size()); }
  const Element& element(int i) const { return elements[i]; }
  int distance_of(int i) const { return distances[i]; }
  std::optional<int> index_of(const Element& g) const;

  /// True when the ball is the whole (finite) group.
  bool covers_group() const;
};

/// Breadth-first enumeration of B(e, radius). Refuses to start if the
/// predicted size exceeds cap. Layer sizes are cross-checked against the
/// combinatorial sphere counts, so enumeration and counting police each
/// other.
Ball ball_enumerate(const GroupModel& group, int radius,
                    std::size_t cap = kDefaultBallCap);

}  // namespace renorm
