#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mvopt {

/// Fixed-length binary view configuration: bit i set means the candidate
/// view with id i is materialized. Immutable value semantics; the bit/view
/// correspondence is 0-based positional.
class Chromosome {
 public:
  Chromosome() = default;

  /// All-zero chromosome of the given length.
  explicit Chromosome(std::size_t length) : bits_(length, 0) {}

  /// From an explicit bit vector; any nonzero byte counts as a set bit.
  explicit Chromosome(std::vector<std::uint8_t> bits);

  /// Parses a bitstring such as "1000110110".
  /// Throws std::invalid_argument on characters other than '0'/'1'.
  static Chromosome from_string(std::string_view s);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool test(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }

  /// Number of set bits.
  std::size_t count() const;

  /// Ids of the materialized views, ascending.
  std::vector<std::size_t> decode() const;

  /// Renders as "0101..."; inverse of from_string.
  std::string to_string() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
  /// Lexicographic order on the bit sequence; used for deterministic tie-breaks.
  friend std::strong_ordering operator<=>(const Chromosome&, const Chromosome&) = default;

 private:
  std::vector<std::uint8_t> bits_;  // each element is 0 or 1
};

/// Fraction of positions at which a and b agree, in [0, 1].
/// Throws std::invalid_argument when the lengths differ.
double hamming_similarity(const Chromosome& a, const Chromosome& b);

/// Chromosome with exactly num_set bits set, positions drawn uniformly
/// without replacement. Throws std::invalid_argument when num_set > length.
Chromosome random_chromosome(std::size_t length, std::size_t num_set, std::mt19937_64& rng);

}  // namespace mvopt
