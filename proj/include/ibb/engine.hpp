#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ibb/active_word.hpp"
#include "ibb/bucket_store.hpp"
#include "ibb/bwt_tree.hpp"
#include "ibb/collection.hpp"
#include "ibb/context.hpp"
#include "ibb/worker_pool.hpp"

namespace ibb {

struct Config {
  /// 2k; odd values give half-level contexts (k = 2.5 for the default).
  unsigned kappa = 5;
  unsigned threads = default_thread_count();
  std::filesystem::path tmp_dir = std::filesystem::temp_directory_path();
  std::size_t buffer_bytes = std::size_t{1} << 20;
  Backend backend = Backend::External;
  bool byte_files = false;
  /// Iterations with fewer active words run single-threaded.
  std::size_t parallel_min_active = 4096;
};

/// Throws ConfigError for unusable settings; returns warnings for settings
/// that work but lie outside the well-tested range.
std::vector<std::string> check_config(const Config& config, std::uint64_t total_length);

/// Bit j is set once word j has started. rank(j) counts set bits below j.
class StartBitvector {
 public:
  explicit StartBitvector(std::size_t m);

  void set(std::size_t j);
  bool test(std::size_t j) const { return (bits_[j >> 6] >> (j & 63)) & 1u; }
  std::uint64_t rank(std::size_t j) const;
  std::uint64_t count() const noexcept { return count_; }
  std::size_t size() const noexcept { return m_; }

 private:
  std::size_t m_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> fenwick_;  // popcounts of bits_ words
  std::uint64_t count_ = 0;
};

inline std::uint64_t sb_rank(const StartBitvector& sb, std::size_t j) { return sb.rank(j); }

struct IterationState {
  std::uint64_t t = 0;
  std::uint64_t alpha = 0;
  std::vector<ActiveWord> active;
  // Words grouped by start iteration M - |S_j|, ascending j within a group.
  std::vector<std::uint64_t> start_offsets;
  std::vector<std::uint32_t> start_words;

  std::span<const std::uint32_t> starting_at(std::uint64_t t) const {
    if (t + 1 >= start_offsets.size()) return {};
    return std::span(start_words).subspan(start_offsets[t], start_offsets[t + 1] - start_offsets[t]);
  }
};

IterationState make_iteration_state(const WordCollection& words);

/// Starts the words whose start iteration is `t`: sets their bits, gives each
/// the position rank_SB(j) in the A-tree and an all-A context, and prepends
/// them in ascending j to the active list.
void activate_new_words(IterationState& state, StartBitvector& sb, const WordCollection& words, std::uint64_t t);

/// Stable partition by the symbol just inserted (A, C, G, T order). Entries
/// that inserted an end marker are dropped.
void stable_radix_step(std::vector<ActiveWord>& active, std::vector<ActiveWord>& scratch);
std::vector<ActiveWord> stable_radix_step(std::span<const ActiveWord> active);

/// Position in the tree of `inserted` for the next iteration: the count of
/// `inserted` before the tree of `context_head`, plus r[inserted] and the rank
/// within the bucket, plus the alpha_next end-marker rows when `inserted` is A. Throws
/// std::invalid_argument if `inserted` is the end marker.
std::uint64_t next_insert_position(Symbol context_head, Symbol inserted, const TreeArray& tree,
                                   const Accumulator& r, std::uint64_t rank_k, std::uint64_t alpha_next);

struct IterationPlan {
  struct Group {
    std::uint64_t leaf;
    std::size_t begin;
    std::size_t end;
  };
  std::array<std::size_t, 5> tree_begin{};  // tree x spans [tree_begin[x], tree_begin[x+1])
  std::array<Counters, 4> per_tree;         // bases to insert, by tree
  std::vector<Group> groups;                // maximal runs sharing a bucket
};

/// Slices the sorted active list by tree and by bucket.
IterationPlan plan_iteration(std::span<const ActiveWord> active, const ContextShape& shape);

struct IterationView {
  std::uint64_t t;
  std::uint64_t alpha;
  const TreeArray& tree;
  const BucketStore& store;
  std::span<const ActiveWord> next_active;
};
using IterationObserver = std::function<void(const IterationView&)>;

struct BuildReport {
  double seconds = 0;
  std::uint64_t iterations = 0;
  std::uint64_t total_length = 0;
  IoStats io;
};

/// Writes BWT(W) to `out`, every end marker as '$'.
void build(const WordCollection& words, const Config& config, std::ostream& out, BuildReport* report = nullptr,
           const IterationObserver& observer = {});
std::string build(const WordCollection& words, const Config& config, BuildReport* report = nullptr,
                  const IterationObserver& observer = {});

}  // namespace ibb
