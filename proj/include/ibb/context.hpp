#pragma once

#include <cstdint>
#include <string>

#include "ibb/symbol.hpp"

namespace ibb {

/// Layout of predecessor sequences for a given kappa (= 2k).
///
/// A context holds the ceil(kappa/2) most recently inserted symbols of a word,
/// most recent first, packed big-endian into an integer so that integer order
/// is lexicographic order. Its top kappa bits are the navigation path: two
/// bits pick the tree, every further bit is one left (0) / right (1) step.
/// For odd kappa only the first step of the last symbol is used.
class ContextShape {
 public:
  static constexpr unsigned kMinKappa = 3;
  static constexpr unsigned kMaxKappa = 30;

  explicit ContextShape(unsigned kappa);

  unsigned kappa() const noexcept { return kappa_; }
  unsigned symbols() const noexcept { return symbols_; }
  std::uint64_t leaf_count() const noexcept { return std::uint64_t{1} << kappa_; }

  /// Context after inserting `c`: c becomes the first symbol, the oldest drops.
  std::uint64_t push(std::uint64_t context, Symbol c) const noexcept {
    return (std::uint64_t{code(c)} << (2 * symbols_ - 2)) | (context >> 2);
  }

  Symbol first(std::uint64_t context) const noexcept {
    return from_code(static_cast<unsigned>(context >> (2 * symbols_ - 2)));
  }

  /// Leaf ordinal in [0, 2^kappa); consecutive ordinals are lexicographic.
  std::uint64_t leaf(std::uint64_t context) const noexcept { return context >> (2 * symbols_ - kappa_); }

  /// Navigation bit consumed at tree depth `depth` (root = depth 0).
  bool step_right(std::uint64_t context, unsigned depth) const noexcept {
    return (context >> (2 * symbols_ - 3 - depth)) & 1u;
  }

  /// Tree levels below a root: kappa - 2 steps.
  unsigned depth() const noexcept { return kappa_ - 2; }

  std::uint64_t from_string(const std::string& s) const;  // A-padded on the right
  std::string to_string(std::uint64_t context) const;

 private:
  unsigned kappa_;
  unsigned symbols_;
};

}  // namespace ibb
