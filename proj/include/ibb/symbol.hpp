#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace ibb {

/// DNA symbol plus the end-of-word marker. The enumerator values of the four
/// bases are their 2-bit codes; `Dollar` has no 2-bit code and only appears in
/// the last construction iteration.
enum class Symbol : std::uint8_t { A = 0, C = 1, G = 2, T = 3, Dollar = 4 };

inline constexpr std::array<Symbol, 4> kBases{Symbol::A, Symbol::C, Symbol::G, Symbol::T};

constexpr unsigned code(Symbol s) noexcept { return static_cast<unsigned>(s); }

constexpr bool is_base(Symbol s) noexcept { return s != Symbol::Dollar; }

constexpr Symbol from_code(unsigned c) noexcept { return static_cast<Symbol>(c & 3u); }

/// Total order $ < A < C < G < T.
constexpr unsigned sort_key(Symbol s) noexcept { return s == Symbol::Dollar ? 0u : code(s) + 1u; }

constexpr char to_char(Symbol s) noexcept { return "ACGT$"[code(s)]; }

/// Case-insensitive A/C/G/T; anything else yields nullopt.
constexpr std::optional<Symbol> base_from_char(char c) noexcept {
  switch (c) {
    case 'A': case 'a': return Symbol::A;
    case 'C': case 'c': return Symbol::C;
    case 'G': case 'g': return Symbol::G;
    case 'T': case 't': return Symbol::T;
    default: return std::nullopt;
  }
}

/// One counter per base. Used for tree nodes, prefix totals and the
/// accumulators threaded through a descent.
struct Counters {
  std::array<std::uint64_t, 4> n{};

  constexpr std::uint64_t& operator[](Symbol s) noexcept { return n[code(s)]; }
  constexpr std::uint64_t operator[](Symbol s) const noexcept { return n[code(s)]; }

  constexpr std::uint64_t total() const noexcept { return n[0] + n[1] + n[2] + n[3]; }

  constexpr Counters& operator+=(const Counters& o) noexcept {
    for (unsigned i = 0; i < 4; ++i) n[i] += o.n[i];
    return *this;
  }
  friend constexpr Counters operator+(Counters a, const Counters& b) noexcept { return a += b; }
  friend constexpr bool operator==(const Counters&, const Counters&) = default;
};

using Accumulator = Counters;

}  // namespace ibb
