#include "futurity/strategy.hpp"

#include <algorithm>
#include <cctype>

#include "futurity/errors.hpp"

namespace futurity {

namespace {

std::size_t count_a(const std::vector<Arm>& symbols) {
  return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), Arm::A));
}

// Start index of the least rotation (two-pointer minimal-rotation scan, O(n)).
std::size_t least_rotation_start(const std::vector<Arm>& s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const Arm x = s[(i + k) % n];
    const Arm y = s[(j + k) % n];
    if (x == y) {
      ++k;
      continue;
    }
    if (x > y) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace

Strategy::Strategy(std::vector<Arm> symbols) : symbols_(std::move(symbols)), count_a_(count_a(symbols_)) {}

Strategy Strategy::parse(std::string_view text) {
  std::vector<Arm> symbols;
  symbols.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    switch (c) {
      case 'A':
      case 'a':
        symbols.push_back(Arm::A);
        break;
      case 'B':
      case 'b':
        symbols.push_back(Arm::B);
        break;
      default:
        throw IllegalCharacter(pos, c);
    }
  }
  return from_symbols(std::move(symbols));
}

Strategy Strategy::from_symbols(std::vector<Arm> symbols) {
  if (symbols.empty()) throw EmptyPattern();
  if (symbols.size() > kMaxStrategyLength) throw PatternTooLong(symbols.size());
  const std::size_t a = count_a(symbols);
  if (a == 0 || a == symbols.size()) throw MissingArm();
  return Strategy(std::move(symbols));
}

std::string Strategy::to_string() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Arm arm : symbols_) out.push_back(to_char(arm));
  return out;
}

Strategy rotate(const Strategy& strategy, std::size_t shift) {
  std::vector<Arm> symbols = strategy.symbols();
  std::rotate(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(shift % symbols.size()),
              symbols.end());
  return Strategy::from_symbols(std::move(symbols));
}

Strategy canonical_rotation(const Strategy& strategy) {
  return rotate(strategy, least_rotation_start(strategy.symbols()));
}

BlockVector block_vector(const Strategy& strategy) {
  const auto& sym = strategy.symbols();
  if (sym.front() != Arm::A || sym.back() != Arm::B) throw NotCanonical();

  BlockVector blocks;
  std::size_t run = 0;
  Arm current = Arm::A;
  for (Arm arm : sym) {
    if (arm == current) {
      ++run;
      continue;
    }
    blocks.a.push_back(run);
    current = arm;
    run = 1;
  }
  blocks.a.push_back(run);

  blocks.h = blocks.a.size() / 2;
  for (std::size_t i = 0; i < blocks.a.size(); ++i) (i % 2 == 0 ? blocks.r : blocks.s) += blocks.a[i];
  return blocks;
}

BlockVector make_blocks(std::vector<std::size_t> runs) {
  if (runs.empty() || runs.size() % 2 != 0)
    throw ValidationError("block vector must have an even, nonzero number of runs");
  BlockVector blocks;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (runs[i] == 0) throw ValidationError("block vector runs must be positive");
    (i % 2 == 0 ? blocks.r : blocks.s) += runs[i];
  }
  if (blocks.r + blocks.s > kMaxStrategyLength) throw PatternTooLong(blocks.r + blocks.s);
  blocks.h = runs.size() / 2;
  blocks.a = std::move(runs);
  return blocks;
}

Strategy from_blocks(const BlockVector& blocks) {
  std::vector<Arm> symbols;
  symbols.reserve(blocks.r + blocks.s);
  for (std::size_t i = 0; i < blocks.a.size(); ++i)
    symbols.insert(symbols.end(), blocks.a[i], i % 2 == 0 ? Arm::A : Arm::B);
  return Strategy::from_symbols(std::move(symbols));
}

Strategy mirror(const Strategy& strategy) {
  std::vector<Arm> symbols = strategy.symbols();
  for (Arm& arm : symbols) arm = arm == Arm::A ? Arm::B : Arm::A;
  return Strategy::from_symbols(std::move(symbols));
}

Strategy repeat(const Strategy& strategy, std::size_t times) {
  std::vector<Arm> symbols;
  symbols.reserve(strategy.size() * times);
  for (std::size_t k = 0; k < times; ++k)
    symbols.insert(symbols.end(), strategy.symbols().begin(), strategy.symbols().end());
  return Strategy::from_symbols(std::move(symbols));
}

}  // namespace futurity
