#pragma once

#include <cstdint>

#include "ibb/symbol.hpp"

namespace ibb {

/// Per-word iteration state.
///
/// `position` is relative to the tree (level-1 bucket) of the context's first
/// symbol and already counts every symbol inserted earlier in the same
/// iteration. `symbol` is the symbol this word inserts in the current
/// iteration.
struct ActiveWord {
  std::uint64_t position = 0;
  std::uint64_t context = 0;
  std::uint32_t word = 0;
  Symbol symbol = Symbol::A;

  friend bool operator==(const ActiveWord&, const ActiveWord&) = default;
};

}  // namespace ibb
