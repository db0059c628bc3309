#include "mvopt/chromosome.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mvopt {

Chromosome::Chromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Chromosome Chromosome::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring may contain only '0' and '1', got '" +
                                  std::string(1, c) + "'");
    }
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Chromosome(std::move(bits));
}

std::size_t Chromosome::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> Chromosome::decode() const {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) ids.push_back(i);
  }
  return ids;
}

std::string Chromosome::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

double hamming_similarity(const Chromosome& a, const Chromosome& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("hamming_similarity: length mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) return 1.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.bits()[i] == b.bits()[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(a.size());
}

Chromosome random_chromosome(std::size_t length, std::size_t num_set, std::mt19937_64& rng) {
  if (num_set > length) {
    throw std::invalid_argument("random_chromosome: num_set " + std::to_string(num_set) +
                                " exceeds length " + std::to_string(length));
  }
  // Partial Fisher-Yates: the first num_set entries are a uniform sample
  // of positions without replacement.
  std::vector<std::size_t> positions(length);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  Chromosome c(length);
  for (std::size_t i = 0; i < num_set; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, length - 1);
    std::swap(positions[i], positions[pick(rng)]);
    c.set(positions[i], true);
  }
  return c;
}

}  // namespace mvopt
