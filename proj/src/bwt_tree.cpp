#include "ibb/bwt_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace ibb {

NavPlan nav_directions(Symbol s) {
  if (!is_base(s)) throw std::invalid_argument("nav_directions: end marker is never a context symbol");
  const unsigned c = code(s);
  return {(c & 2u) ? Step::Right : Step::Left, (c & 1u) ? Step::Right : Step::Left};
}

TreeArray::TreeArray(unsigned kappa) : shape_(kappa), nodes_(std::size_t{1} << kappa) {}

void TreeArray::update_prefix_totals(const std::array<Counters, 4>& per_tree) {
  Counters h;
  for (unsigned x = 0; x < 4; ++x) {
    h += per_tree[x];
    nodes_[x] += h;
  }
}

std::uint64_t TreeArray::level1_base(Symbol tree_symbol, Symbol c) const {
  if (!is_base(tree_symbol) || !is_base(c)) throw std::invalid_argument("level1_base: bases only");
  return tree_symbol == Symbol::A ? 0 : nodes_[code(tree_symbol) - 1][c];
}

std::vector<LeafBatch> TreeArray::descend(Symbol tree_symbol, std::span<const ActiveWord> slice) {
  std::vector<LeafBatch> out;
  if (!slice.empty()) descend_node(4 + code(tree_symbol), 0, slice, 0, Accumulator{}, out);
  return out;
}

void TreeArray::descend_node(std::size_t node, unsigned depth, std::span<const ActiveWord> slice,
                             std::size_t offset, Accumulator r, std::vector<LeafBatch>& out) {
  if (depth == shape_.depth()) {
    out.push_back({node - shape_.leaf_count(), offset, offset + slice.size(), r});
    return;
  }
  // Contexts within a slice share the path so far, so the step bit is sorted.
  const auto split = static_cast<std::size_t>(
      std::partition_point(slice.begin(), slice.end(),
                           [&](const ActiveWord& w) { return !shape_.step_right(w.context, depth); }) -
      slice.begin());

  Counters& counters = nodes_[node];
  for (std::size_t i = 0; i < split; ++i)
    if (is_base(slice[i].symbol)) ++counters[slice[i].symbol];

  if (split > 0) descend_node(2 * node, depth + 1, slice.first(split), offset, r, out);
  if (split < slice.size()) {
    r += counters;
    descend_node(2 * node + 1, depth + 1, slice.subspan(split), offset + split, r, out);
  }
}

}  // namespace ibb
