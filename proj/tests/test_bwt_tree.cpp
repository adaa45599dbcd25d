#include <algorithm>
#include <bit>
#include <random>
#include <vector>

#include "doctest.h"
#include "ibb/bwt_tree.hpp"
#include "ibb/error.hpp"

using ibb::ActiveWord;
using ibb::ContextShape;
using ibb::Counters;
using ibb::Step;
using ibb::Symbol;
using ibb::TreeArray;

TEST_CASE("navigation follows the two bits of a symbol") {
  CHECK(ibb::nav_directions(Symbol::A) == ibb::NavPlan{Step::Left, Step::Left});
  CHECK(ibb::nav_directions(Symbol::C) == ibb::NavPlan{Step::Left, Step::Right});
  CHECK(ibb::nav_directions(Symbol::G) == ibb::NavPlan{Step::Right, Step::Left});
  CHECK(ibb::nav_directions(Symbol::T) == ibb::NavPlan{Step::Right, Step::Right});
  CHECK_THROWS_AS(ibb::nav_directions(Symbol::Dollar), std::invalid_argument);
}

TEST_CASE("context shape") {
  CHECK_THROWS_AS(ContextShape(2), ibb::ConfigError);
  CHECK_THROWS_AS(ContextShape(31), ibb::ConfigError);

  const ContextShape even(4);
  CHECK(even.symbols() == 2);
  CHECK(even.depth() == 2);
  const auto cg = even.from_string("CG");
  CHECK(even.leaf(cg) == 6);
  CHECK(even.first(cg) == Symbol::C);
  CHECK(even.step_right(cg, 0));
  CHECK_FALSE(even.step_right(cg, 1));
  CHECK(even.to_string(even.push(cg, Symbol::T)) == "TC");
  CHECK(even.from_string("") == 0);

  // Half level: three symbols kept, only the first step of the third is used.
  const ContextShape odd(5);
  CHECK(odd.symbols() == 3);
  CHECK(odd.leaf_count() == 32);
  CHECK(odd.leaf(odd.from_string("CGA")) == odd.leaf(odd.from_string("CGC")));
  CHECK(odd.leaf(odd.from_string("CGC")) + 1 == odd.leaf(odd.from_string("CGG")));
  CHECK(odd.to_string(odd.push(odd.push(0, Symbol::G), Symbol::T)) == "TGA");
}

TEST_CASE("prefix totals accumulate over trees") {
  TreeArray tree(4);
  tree.node(0)[Symbol::C] = 1;
  std::array<Counters, 4> per_tree{};
  per_tree[0][Symbol::C] = 2;  // two C into the A-tree
  per_tree[1][Symbol::C] = 2;  // two C into the C-tree
  tree.update_prefix_totals(per_tree);
  CHECK(tree.node(0)[Symbol::C] == 3);
  CHECK(tree.node(1)[Symbol::C] == 4);
  CHECK(tree.node(2)[Symbol::C] == 4);
  CHECK(tree.node(3)[Symbol::C] == 4);
  CHECK(tree.level1_base(Symbol::A, Symbol::C) == 0);
  CHECK(tree.level1_base(Symbol::C, Symbol::C) == 3);
  CHECK(tree.level1_base(Symbol::T, Symbol::C) == 4);
  CHECK_THROWS_AS(tree.level1_base(Symbol::Dollar, Symbol::C), std::invalid_argument);
}

TEST_CASE("descent into the CG bucket") {
  const ContextShape shape(4);
  TreeArray tree(4);
  tree.node(5)[Symbol::T] = 1;  // one symbol already in CA/CC
  const auto cg = shape.from_string("CG");
  const std::vector<ActiveWord> slice{{1, cg, 2, Symbol::C}, {2, cg, 3, Symbol::C}};

  const auto batches = tree.descend(Symbol::C, slice);
  REQUIRE(batches.size() == 1);
  CHECK(batches[0].leaf == 22 - 16);
  CHECK(batches[0].begin == 0);
  CHECK(batches[0].end == 2);
  CHECK(batches[0].r.total() == 1);
  CHECK(batches[0].r[Symbol::C] == 0);
  CHECK(tree.node(5) == Counters{{0, 0, 0, 1}});  // right step: untouched
  CHECK(tree.node(11)[Symbol::C] == 2);           // left step: both counted
}

namespace {

// Leaf ordinals below node i.
std::pair<std::uint64_t, std::uint64_t> leaves_under(std::size_t i, unsigned kappa) {
  const unsigned h = kappa + 1 - static_cast<unsigned>(std::bit_width(i));
  return {(std::uint64_t{i} << h) - (std::uint64_t{1} << kappa), (std::uint64_t{i + 1} << h) - (std::uint64_t{1} << kappa)};
}

}  // namespace

TEST_CASE("node counters and accumulators agree with per-leaf recounts") {
  std::mt19937_64 rng(11);
  for (unsigned kappa = 3; kappa <= 9; ++kappa) {
    const ContextShape shape(kappa);
    TreeArray tree(kappa);
    std::vector<Counters> leaf_counts(shape.leaf_count());
    const std::uint64_t per_tree_leaves = shape.leaf_count() / 4;

    for (int round = 0; round < 20; ++round) {
      // A random sorted active list: contexts ascending, positions ascending.
      std::vector<ActiveWord> active(rng() % 60);
      std::uint64_t pos = 0;
      for (auto& w : active) {
        w.context = rng() & ((std::uint64_t{1} << (2 * shape.symbols())) - 1);
        w.symbol = (rng() % 7 == 0) ? Symbol::Dollar : ibb::from_code(static_cast<unsigned>(rng() % 4));
      }
      std::sort(active.begin(), active.end(), [](auto& a, auto& b) { return a.context < b.context; });
      Symbol prev_tree = Symbol::A;
      for (auto& w : active) {
        if (shape.first(w.context) != prev_tree) pos = 0;
        prev_tree = shape.first(w.context);
        w.position = pos++;
      }

      for (unsigned x = 0; x < 4; ++x) {
        std::vector<ActiveWord> slice;
        for (const auto& w : active)
          if (ibb::code(shape.first(w.context)) == x) slice.push_back(w);
        for (const auto& w : slice)
          if (ibb::is_base(w.symbol)) ++leaf_counts[shape.leaf(w.context)][w.symbol];

        std::uint64_t covered = 0;
        for (const auto& b : tree.descend(ibb::from_code(x), slice)) {
          CHECK(b.begin == covered);
          covered = b.end;
          for (std::size_t i = b.begin; i < b.end; ++i) CHECK(shape.leaf(slice[i].context) == b.leaf);
          Counters expect;
          for (std::uint64_t leaf = x * per_tree_leaves; leaf < b.leaf; ++leaf) expect += leaf_counts[leaf];
          CHECK(b.r == expect);
        }
        CHECK(covered == slice.size());
      }

      for (std::size_t i = 4; i < tree.size(); ++i) {
        const auto [lo, hi] = leaves_under(2 * i, kappa);
        Counters expect;
        for (std::uint64_t leaf = lo; leaf < hi; ++leaf) expect += leaf_counts[leaf];
        CHECK(tree.node(i) == expect);
      }
    }
  }
}
