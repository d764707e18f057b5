#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace futurity {

enum class Arm : std::uint8_t { A = 0, B = 1 };

inline char to_char(Arm arm) { return arm == Arm::A ? 'A' : 'B'; }

/// Longest accepted strategy period.
inline constexpr std::size_t kMaxStrategyLength = 1'000'000;

/// A periodic ("nonrandom mixed") playing pattern over arms A and B.
///
/// The pattern is repeated indefinitely. It always contains at least one A
/// and at least one B; single-arm play is expressed through the chain oracle
/// instead, which accepts arbitrary label sequences.
class Strategy {
 public:
  /// Parses text such as "AABB" or "a a b b". Whitespace is dropped and
  /// lowercase letters are accepted.
  static Strategy parse(std::string_view text);

  /// Builds a strategy from symbols, enforcing the same invariants as parse().
  static Strategy from_symbols(std::vector<Arm> symbols);

  const std::vector<Arm>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  Arm operator[](std::size_t i) const { return symbols_[i]; }

  /// Number of A plays per period.
  std::size_t r() const noexcept { return count_a_; }
  /// Number of B plays per period.
  std::size_t s() const noexcept { return symbols_.size() - count_a_; }

  std::string to_string() const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  explicit Strategy(std::vector<Arm> symbols);

  std::vector<Arm> symbols_;
  std::size_t count_a_ = 0;
};

/// Run-length form (r1, s1, ..., rh, sh) of a strategy that starts with an
/// A-run and ends with a B-run.
struct BlockVector {
  std::vector<std::size_t> a;
  std::size_t h = 0;
  std::size_t r = 0;
  std::size_t s = 0;

  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

/// Cyclic left shift by `shift` (taken mod n).
Strategy rotate(const Strategy& strategy, std::size_t shift);

/// Lexicographically smallest rotation (A < B). For a pattern holding both
/// letters this rotation starts with an A-run and ends with a B-run.
Strategy canonical_rotation(const Strategy& strategy);

/// Run-length encoding. Throws NotCanonical unless the strategy starts with
/// A and ends with B.
BlockVector block_vector(const Strategy& strategy);

/// Inverse of block_vector.
Strategy from_blocks(const BlockVector& blocks);

/// Builds a BlockVector from raw run lengths, validating positivity and even length.
BlockVector make_blocks(std::vector<std::size_t> runs);

/// Swaps every A for B and vice versa.
Strategy mirror(const Strategy& strategy);

/// The pattern repeated `times` times.
Strategy repeat(const Strategy& strategy, std::size_t times);

}  // namespace futurity
