#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ibb/active_word.hpp"
#include "ibb/context.hpp"
#include "ibb/symbol.hpp"

namespace ibb {

enum class Step : std::uint8_t { Left, Right };

struct NavPlan {
  Step first;
  Step second;
  friend bool operator==(const NavPlan&, const NavPlan&) = default;
};

/// A -> (L,L), C -> (L,R), G -> (R,L), T -> (R,R). Throws std::invalid_argument for $.
NavPlan nav_directions(Symbol s);

/// Entries [begin, end) of a tree slice that land in one leaf bucket, with the
/// accumulator R_D for that bucket: counts of each base stored in leaves to
/// the left of it within the same tree.
struct LeafBatch {
  std::uint64_t leaf = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  Accumulator r;
};

/// Four count trees over the level-k buckets in one Eytzinger array.
///
/// node(0..3) are prefix totals: node(x).c counts c over trees A..x.
/// node(i), i >= 4, counts the bases stored in the left subtree of i. The
/// roots of the A/C/G/T trees are 4..7, children of i are 2i and 2i+1, and
/// indices >= 2^kappa are leaves (buckets), which are not stored here.
class TreeArray {
 public:
  explicit TreeArray(unsigned kappa);

  unsigned kappa() const noexcept { return shape_.kappa(); }
  const ContextShape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  Counters& node(std::size_t i) { return nodes_[i]; }
  const Counters& node(std::size_t i) const { return nodes_[i]; }

  /// Adds this iteration's per-tree insertion counts to the prefix totals.
  void update_prefix_totals(const std::array<Counters, 4>& per_tree);

  /// Number of c stored in all trees before `tree_symbol`'s tree.
  std::uint64_t level1_base(Symbol tree_symbol, Symbol c) const;

  /// Routes one tree's slice of the sorted active list to its leaf buckets.
  ///
  /// `slice` must be sorted by position and every entry's context must start
  /// with `tree_symbol`. Left-bound entries increment the node counter of
  /// their symbol (end markers are not counted) before the right branch reads
  /// the node, so the accumulator reaching each leaf already includes this
  /// iteration's insertions further left. Batches come out in leaf order.
  std::vector<LeafBatch> descend(Symbol tree_symbol, std::span<const ActiveWord> slice);

 private:
  void descend_node(std::size_t node, unsigned depth, std::span<const ActiveWord> slice, std::size_t offset,
                    Accumulator r, std::vector<LeafBatch>& out);

  ContextShape shape_;
  std::vector<Counters> nodes_;
};

}  // namespace ibb
