#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coevo/errors.hpp"
#include "coevo/micro/genome.hpp"
#include "coevo/rng.hpp"

namespace coevo::ga {

inline constexpr std::size_t kBitsPerParam = 8;
inline constexpr std::size_t kBitsPerGenome = kBitsPerParam * micro::kParamCount;

/// Fixed-length bit string; one 8-bit field per parameter, most significant
/// bit first, genomes laid out in roster order.
class BitChromosome {
 public:
  BitChromosome() = default;
  explicit BitChromosome(std::size_t length, bool value = false) : bits_(length, value ? 1 : 0) {}
  explicit BitChromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  static BitChromosome for_genomes(std::size_t genome_count) { return BitChromosome(genome_count * kBitsPerGenome); }

  static BitChromosome random(std::size_t length, Rng& rng) {
    BitChromosome c(length);
    for (std::size_t i = 0; i < length; i += 64) {
      std::uint64_t word = rng.bits();
      for (std::size_t j = i; j < std::min(length, i + 64); ++j, word >>= 1) c.bits_[j] = word & 1u;
    }
    return c;
  }

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1u; }
  std::span<const std::uint8_t> bits() const { return bits_; }

  // Unsigned value of the `width`-bit field starting at `offset`.
  unsigned field(std::size_t offset, std::size_t width = kBitsPerParam) const {
    unsigned v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits_[offset + i];
    return v;
  }

  void set_field(std::size_t offset, unsigned value, std::size_t width = kBitsPerParam) {
    for (std::size_t i = 0; i < width; ++i) bits_[offset + i] = (value >> (width - 1 - i)) & 1u;
  }

  std::size_t count_ones() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
  }

  // Hex digits of the bit string, 4 bits per digit, zero-padded at the end.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
      unsigned nibble = 0;
      for (std::size_t j = 0; j < 4; ++j) nibble = (nibble << 1) | (i + j < bits_.size() ? bits_[i + j] : 0u);
      out += kDigits[nibble];
    }
    return out;
  }

  static BitChromosome from_hex(std::string_view hex, std::size_t length) {
    if (hex.size() * 4 < length || hex.size() > (length + 3) / 4) {
      throw EncodingError("hex string of " + std::to_string(hex.size()) + " digits cannot hold " +
                          std::to_string(length) + " bits");
    }
    BitChromosome c(length);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char ch = hex[i];
      unsigned v;
      if (ch >= '0' && ch <= '9') v = static_cast<unsigned>(ch - '0');
      else if (ch >= 'a' && ch <= 'f') v = static_cast<unsigned>(ch - 'a' + 10);
      else if (ch >= 'A' && ch <= 'F') v = static_cast<unsigned>(ch - 'A' + 10);
      else throw EncodingError(std::string("invalid hex digit '") + ch + "'");
      for (std::size_t j = 0; j < 4; ++j) {
        if (i * 4 + j < length) c.bits_[i * 4 + j] = (v >> (3 - j)) & 1u;
      }
    }
    return c;
  }

  bool operator==(const BitChromosome&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

inline double decode_field(unsigned v, const micro::ParamRange& r) {
  return r.lo + (static_cast<double>(v) / 255.0) * (r.hi - r.lo);
}

// Nearest 8-bit field for a physical value, clamped to the range.
inline unsigned encode_field(double value, const micro::ParamRange& r) {
  if (!(r.hi > r.lo)) return 0;
  const double t = (value - r.lo) / (r.hi - r.lo) * 255.0;
  if (!(t > 0.0)) return 0;
  if (t >= 255.0) return 255;
  return static_cast<unsigned>(t + 0.5);
}

/// One genome per 96-bit block, in roster order.
inline std::vector<micro::MicroGenome> decode(const BitChromosome& c, const micro::RangeTable& ranges,
                                              std::size_t genome_count) {
  if (c.size() != genome_count * kBitsPerGenome) {
    throw EncodingError("chromosome has " + std::to_string(c.size()) + " bits, expected " +
                        std::to_string(genome_count * kBitsPerGenome));
  }
  std::vector<micro::MicroGenome> out(genome_count);
  for (std::size_t g = 0; g < genome_count; ++g) {
    for (std::size_t p = 0; p < micro::kParamCount; ++p) {
      out[g][p] = decode_field(c.field((g * micro::kParamCount + p) * kBitsPerParam), ranges[p]);
    }
  }
  return out;
}

inline std::vector<micro::MicroGenome> decode(const BitChromosome& c, const micro::RangeTable& ranges) {
  if (c.size() == 0 || c.size() % kBitsPerGenome != 0) {
    throw EncodingError("chromosome length " + std::to_string(c.size()) + " is not a multiple of " +
                        std::to_string(kBitsPerGenome));
  }
  return decode(c, ranges, c.size() / kBitsPerGenome);
}

inline BitChromosome encode(std::span<const micro::MicroGenome> genomes, const micro::RangeTable& ranges) {
  BitChromosome c = BitChromosome::for_genomes(genomes.size());
  for (std::size_t g = 0; g < genomes.size(); ++g) {
    for (std::size_t p = 0; p < micro::kParamCount; ++p) {
      c.set_field((g * micro::kParamCount + p) * kBitsPerParam, encode_field(genomes[g][p], ranges[p]));
    }
  }
  return c;
}

}  // namespace coevo::ga
