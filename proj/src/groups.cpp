// SPDX-License-Identifier: Apache-2.0
#include "renorm/groups.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace renorm {
namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw BallSizeError("sphere count overflows 64 bits");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw BallSizeError("sphere count overflows 64 bits");
  return r;
}

// Letter order for free-group words: a < A < b < B < ... where capitals are
// inverses. Ranks make that order plain integer comparison.
std::int32_t letter_rank(std::int32_t letter) {
  const std::int32_t gen = std::abs(letter) - 1;
  return 2 * gen + (letter < 0 ? 1 : 0);
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto* begin = s.data();
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParameterError("malformed integer in group spec: '" +
                         std::string(s) + "'");
  return value;
}

// Per-axis distance multiplicities in Z/m: distance 0 once, each intermediate
// distance twice, and m/2 once when m is even.
std::vector<std::uint64_t> cyclic_axis_counts(int m) {
  std::vector<std::uint64_t> counts(m / 2 + 1, 0);
  counts[0] = 1;
  for (int d = 1; d <= (m - 1) / 2; ++d) counts[d] = 2;
  if (m % 2 == 0) counts[m / 2] = 1;
  return counts;
}

std::vector<std::uint64_t> convolve_axes(
    const std::vector<std::uint64_t>& axis, int n_axes, int radius) {
  std::vector<std::uint64_t> acc(radius + 1, 0);
  acc[0] = 1;
  for (int axis_i = 0; axis_i < n_axes; ++axis_i) {
    std::vector<std::uint64_t> next(radius + 1, 0);
    for (int r = 0; r <= radius; ++r) {
      if (acc[r] == 0) continue;
      for (int d = 0; d < static_cast<int>(axis.size()) && r + d <= radius;
           ++d) {
        if (axis[d] == 0) continue;
        next[r + d] = checked_add(next[r + d], checked_mul(acc[r], axis[d]));
      }
    }
    acc = std::move(next);
  }
  return acc;
}

int inversion_count(const std::vector<std::int32_t>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv;
}

}  // namespace

GroupModel::GroupModel(GroupFamily family, int m, int n)
    : family_(family), modulus_(m), dimension_(n) {
  switch (family_) {
    case GroupFamily::IntegerLattice:
      for (int i = 0; i < dimension_; ++i) {
        Element plus{std::vector<std::int32_t>(dimension_, 0)};
        plus.data[i] = 1;
        Element minus{std::vector<std::int32_t>(dimension_, 0)};
        minus.data[i] = -1;
        generators_.push_back(plus);
        generators_.push_back(minus);
      }
      break;
    case GroupFamily::FreeGroup:
      for (int i = 1; i <= dimension_; ++i) {
        generators_.push_back(Element{{i}});
        generators_.push_back(Element{{-i}});
      }
      break;
    case GroupFamily::Torus:
    case GroupFamily::Cyclic:
      for (int i = 0; i < dimension_; ++i) {
        Element plus{std::vector<std::int32_t>(dimension_, 0)};
        plus.data[i] = 1;
        Element minus{std::vector<std::int32_t>(dimension_, 0)};
        minus.data[i] = modulus_ - 1;
        generators_.push_back(plus);
        if (!(minus == plus)) generators_.push_back(minus);  // m = 2
      }
      break;
    case GroupFamily::Symmetric:
      for (int i = 0; i + 1 < dimension_; ++i) {
        std::vector<std::int32_t> p(dimension_);
        std::iota(p.begin(), p.end(), 0);
        std::swap(p[i], p[i + 1]);
        generators_.push_back(Element{std::move(p)});
      }
      break;
  }
}

GroupModel GroupModel::integer_lattice(int dim) {
  if (dim < 1) throw ParameterError("lattice dimension must be positive");
  return GroupModel(GroupFamily::IntegerLattice, 0, dim);
}

GroupModel GroupModel::free_group(int rank) {
  if (rank < 1 || rank > 26)
    throw ParameterError("free rank must be between 1 and 26");
  return GroupModel(GroupFamily::FreeGroup, 0, rank);
}

GroupModel GroupModel::torus(int modulus, int dim) {
  if (modulus < 2) throw ParameterError("torus modulus must be at least 2");
  if (dim < 1) throw ParameterError("torus dimension must be positive");
  return GroupModel(GroupFamily::Torus, modulus, dim);
}

GroupModel GroupModel::cyclic(int modulus) {
  if (modulus < 2) throw ParameterError("cyclic modulus must be at least 2");
  return GroupModel(GroupFamily::Cyclic, modulus, 1);
}

GroupModel GroupModel::symmetric(int degree) {
  if (degree < 2 || degree > 6)
    throw ParameterError("symmetric degree must be between 2 and 6");
  return GroupModel(GroupFamily::Symmetric, 0, degree);
}

GroupModel GroupModel::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ParameterError("malformed group spec: '" + std::string(spec) + "'");
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  const auto comma = args.find(',');

  if (name == "z" && comma == std::string_view::npos)
    return integer_lattice(parse_int(args));
  if (name == "free" && comma == std::string_view::npos)
    return free_group(parse_int(args));
  if (name == "cyclic" && comma == std::string_view::npos)
    return cyclic(parse_int(args));
  if (name == "sym" && comma == std::string_view::npos)
    return symmetric(parse_int(args));
  if (name == "torus" && comma != std::string_view::npos &&
      args.find(',', comma + 1) == std::string_view::npos)
    return torus(parse_int(args.substr(0, comma)),
                 parse_int(args.substr(comma + 1)));
  throw ParameterError("unknown group spec: '" + std::string(spec) + "'");
}

std::string GroupModel::spec_string() const {
  switch (family_) {
    case GroupFamily::IntegerLattice:
      return "z:" + std::to_string(dimension_);
    case GroupFamily::FreeGroup:
      return "free:" + std::to_string(dimension_);
    case GroupFamily::Torus:
      return "torus:" + std::to_string(modulus_) + "," +
             std::to_string(dimension_);
    case GroupFamily::Cyclic:
      return "cyclic:" + std::to_string(modulus_);
    case GroupFamily::Symmetric:
      return "sym:" + std::to_string(dimension_);
  }
  return {};
}

bool GroupModel::finite() const {
  return family_ == GroupFamily::Torus || family_ == GroupFamily::Cyclic ||
         family_ == GroupFamily::Symmetric;
}

std::uint64_t GroupModel::order() const {
  switch (family_) {
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      std::uint64_t n = 1;
      for (int i = 0; i < dimension_; ++i)
        n = checked_mul(n, static_cast<std::uint64_t>(modulus_));
      return n;
    }
    case GroupFamily::Symmetric: {
      std::uint64_t n = 1;
      for (int i = 2; i <= dimension_; ++i)
        n = checked_mul(n, static_cast<std::uint64_t>(i));
      return n;
    }
    default:
      throw ModeError("order() requires a finite group model");
  }
}

int GroupModel::diameter() const {
  switch (family_) {
    case GroupFamily::Torus:
    case GroupFamily::Cyclic:
      return dimension_ * (modulus_ / 2);
    case GroupFamily::Symmetric:
      return dimension_ * (dimension_ - 1) / 2;
    default:
      throw ModeError("diameter() requires a finite group model");
  }
}

Element GroupModel::identity() const {
  switch (family_) {
    case GroupFamily::FreeGroup:
      return Element{};
    case GroupFamily::Symmetric: {
      std::vector<std::int32_t> p(dimension_);
      std::iota(p.begin(), p.end(), 0);
      return Element{std::move(p)};
    }
    default:
      return Element{std::vector<std::int32_t>(dimension_, 0)};
  }
}

Element GroupModel::multiply(const Element& a, const Element& b) const {
  switch (family_) {
    case GroupFamily::IntegerLattice: {
      Element r = a;
      for (int i = 0; i < dimension_; ++i) r.data[i] += b.data[i];
      return r;
    }
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      Element r = a;
      for (int i = 0; i < dimension_; ++i)
        r.data[i] = (r.data[i] + b.data[i]) % modulus_;
      return r;
    }
    case GroupFamily::FreeGroup: {
      Element r = a;
      for (std::int32_t letter : b.data) {
        if (!r.data.empty() && r.data.back() == -letter)
          r.data.pop_back();
        else
          r.data.push_back(letter);
      }
      return r;
    }
    case GroupFamily::Symmetric: {
      Element r;
      r.data.resize(dimension_);
      for (int i = 0; i < dimension_; ++i) r.data[i] = a.data[b.data[i]];
      return r;
    }
  }
  return {};
}

Element GroupModel::inverse(const Element& a) const {
  switch (family_) {
    case GroupFamily::IntegerLattice: {
      Element r = a;
      for (auto& x : r.data) x = -x;
      return r;
    }
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      Element r = a;
      for (auto& x : r.data) x = (modulus_ - x) % modulus_;
      return r;
    }
    case GroupFamily::FreeGroup: {
      Element r;
      r.data.reserve(a.data.size());
      for (auto it = a.data.rbegin(); it != a.data.rend(); ++it)
        r.data.push_back(-*it);
      return r;
    }
    case GroupFamily::Symmetric: {
      Element r;
      r.data.resize(dimension_);
      for (int i = 0; i < dimension_; ++i) r.data[a.data[i]] = i;
      return r;
    }
  }
  return {};
}

int GroupModel::word_length(const Element& g) const {
  switch (family_) {
    case GroupFamily::IntegerLattice: {
      long len = 0;
      for (auto x : g.data) len += std::abs(static_cast<long>(x));
      return static_cast<int>(len);
    }
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      int len = 0;
      for (auto x : g.data) len += std::min<int>(x, modulus_ - x);
      return len;
    }
    case GroupFamily::FreeGroup:
      return static_cast<int>(g.data.size());
    case GroupFamily::Symmetric:
      // Word length over adjacent transpositions equals the inversion number.
      return inversion_count(g.data);
  }
  return 0;
}

int GroupModel::distance(const Element& g, const Element& h) const {
  if (family_ == GroupFamily::FreeGroup) {
    // |g^{-1} h| = |g| + |h| - 2 * (length of the common prefix).
    std::size_t p = 0;
    while (p < g.data.size() && p < h.data.size() && g.data[p] == h.data[p])
      ++p;
    return static_cast<int>(g.data.size() + h.data.size() - 2 * p);
  }
  return word_length(multiply(inverse(g), h));
}

std::vector<std::int32_t> GroupModel::canonical_key(const Element& g) const {
  std::vector<std::int32_t> key;
  key.reserve(g.data.size() + 1);
  key.push_back(static_cast<std::int32_t>(g.data.size()));
  if (family_ == GroupFamily::FreeGroup) {
    for (auto letter : g.data) key.push_back(letter_rank(letter));
  } else {
    key.insert(key.end(), g.data.begin(), g.data.end());
  }
  return key;
}

bool GroupModel::less(const Element& a, const Element& b) const {
  return canonical_key(a) < canonical_key(b);
}

std::string GroupModel::to_string(const Element& g) const {
  switch (family_) {
    case GroupFamily::IntegerLattice:
    case GroupFamily::Torus:
    case GroupFamily::Cyclic: {
      std::ostringstream os;
      os << '(';
      for (int i = 0; i < dimension_; ++i) {
        if (i) os << ',';
        os << g.data[i];
      }
      os << ')';
      return os.str();
    }
    case GroupFamily::FreeGroup: {
      if (g.data.empty()) return "e";
      std::string s;
      for (auto letter : g.data) {
        const char base = letter > 0 ? 'a' : 'A';
        s += static_cast<char>(base + std::abs(letter) - 1);
      }
      return s;
    }
    case GroupFamily::Symmetric: {
      std::ostringstream os;
      os << '[';
      for (int i = 0; i < dimension_; ++i) {
        if (i) os << ',';
        os << g.data[i];
      }
      os << ']';
      return os.str();
    }
  }
  return {};
}

std::vector<std::uint64_t> GroupModel::sphere_sizes(int radius) const {
  if (radius < 0) throw ParameterError("radius must be non-negative");
  switch (family_) {
    case GroupFamily::IntegerLattice: {
      std::vector<std::uint64_t> axis(radius + 1, 2);
      axis[0] = 1;
      return convolve_axes(axis, dimension_, radius);
    }
    case GroupFamily::FreeGroup: {
      std::vector<std::uint64_t> s(radius + 1, 0);
      s[0] = 1;
      if (radius >= 1) s[1] = 2ull * dimension_;
      for (int r = 2; r <= radius; ++r)
        s[r] = checked_mul(s[r - 1], 2ull * dimension_ - 1);
      return s;
    }
    case GroupFamily::Torus:
    case GroupFamily::Cyclic:
      return convolve_axes(cyclic_axis_counts(modulus_), dimension_, radius);
    case GroupFamily::Symmetric: {
      // Inversion-number table: prod_{i=1..n} (1 + q + ... + q^{i-1}).
      std::vector<std::uint64_t> acc{1};
      for (int i = 2; i <= dimension_; ++i) {
        std::vector<std::uint64_t> next(acc.size() + i - 1, 0);
        for (std::size_t r = 0; r < acc.size(); ++r)
          for (int t = 0; t < i; ++t)
            next[r + t] = checked_add(next[r + t], acc[r]);
        acc = std::move(next);
      }
      acc.resize(radius + 1, 0);
      return acc;
    }
  }
  return {};
}

std::uint64_t GroupModel::predicted_ball_size(int radius) const {
  const auto spheres = sphere_sizes(radius);
  std::uint64_t total = 0;
  for (auto s : spheres) total = checked_add(total, s);
  return total;
}

std::optional<int> Ball::index_of(const Element& g) const {
  const auto it = index.find(group.canonical_key(g));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool Ball::covers_group() const {
  return group.finite() &&
         static_cast<std::uint64_t>(elements.size()) == group.order();
}

Ball ball_enumerate(const GroupModel& group, int radius, std::size_t cap) {
  if (radius < 0) throw ParameterError("ball radius must be non-negative");
  const std::uint64_t predicted = group.predicted_ball_size(radius);
  if (predicted > cap)
    throw BallSizeError("predicted ball size " + std::to_string(predicted) +
                        " exceeds cap " + std::to_string(cap) + " for " +
                        group.spec_string() + " at radius " +
                        std::to_string(radius));
  const auto spheres = group.sphere_sizes(radius);

  Ball ball{group, radius, {}, {}, {}};
  ball.elements.reserve(predicted);
  ball.distances.reserve(predicted);

  std::map<std::vector<std::int32_t>, Element> layer;
  layer.emplace(group.canonical_key(group.identity()), group.identity());

  for (int r = 0; r <= radius && !layer.empty(); ++r) {
    if (layer.size() != spheres[r])
      throw NumericError("enumeration layer " + std::to_string(r) +
                         " disagrees with combinatorial sphere count");
    std::map<std::vector<std::int32_t>, Element> next;
    for (auto& [key, g] : layer) {
      ball.index.emplace(key, ball.size());
      ball.elements.push_back(g);
      ball.distances.push_back(r);
    }
    if (r == radius) break;
    for (auto& [key, g] : layer) {
      for (const auto& gen : group.generators()) {
        Element h = group.multiply(g, gen);
        auto hkey = group.canonical_key(h);
        if (ball.index.count(hkey) || next.count(hkey)) continue;
        next.emplace(std::move(hkey), std::move(h));
      }
    }
    layer = std::move(next);
  }
  return ball;
}

}  // namespace renorm
