#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ibb/active_word.hpp"
#include "ibb/context.hpp"
#include "ibb/symbol.hpp"

namespace ibb {

enum class Backend { External, Memory };

struct StoreOptions {
  unsigned kappa = 5;
  Backend backend = Backend::External;
  std::filesystem::path tmp_dir = std::filesystem::temp_directory_path();
  std::size_t buffer_bytes = std::size_t{1} << 20;
  /// One ASCII letter per symbol in bucket files instead of 2-bit packing.
  bool byte_files = false;
};

struct IoStats {
  std::uint64_t bytes_read = 0;
  std::uint64_t bytes_written = 0;
  std::uint64_t merges = 0;
};

/// Sum of the accumulator: the tree-relative position at which a bucket starts.
constexpr std::uint64_t local_position_base(const Accumulator& r) noexcept { return r.total(); }

/// Leaf ordinal of the bucket a context selects.
std::uint64_t bucket_id(const ContextShape& shape, std::uint64_t context);

/// The level-k buckets, each kept as a pair of alternating files (or arrays).
///
/// A merge streams the current content from side 1-L into side L, splicing in
/// the batch, and flips L afterwards. Buckets that receive nothing are never
/// touched. End markers only arrive in the final iteration; they are kept as
/// a per-bucket list of positions and spliced in by assemble().
class BucketStore {
 public:
  explicit BucketStore(const StoreOptions& options);
  ~BucketStore();
  BucketStore(const BucketStore&) = delete;
  BucketStore& operator=(const BucketStore&) = delete;

  std::uint64_t bucket_count() const noexcept { return buckets_.size(); }
  /// Symbols currently in the bucket, end markers included.
  std::uint64_t size(std::uint64_t leaf) const;
  /// Side (0 or 1) the next merge writes to.
  unsigned active_side(std::uint64_t leaf) const;
  std::uint64_t flips(std::uint64_t leaf) const;
  std::uint64_t total_size() const;

  /// Inserts `entries` (tree-relative positions, strictly increasing) into
  /// bucket `leaf`, whose first symbol sits at tree position `base`. For each
  /// entry, rank_k receives the number of its symbol written to the bucket
  /// before it. An empty batch is a no-op. Distinct leaves may be merged
  /// concurrently.
  void merge_insert(std::uint64_t leaf, std::uint64_t base, std::span<const ActiveWord> entries,
                    std::span<std::uint64_t> rank_k);

  /// Current content of one bucket as letters, end markers included.
  std::string contents(std::uint64_t leaf) const;

  /// Writes all buckets in leaf order; throws ConsistencyError if the total
  /// differs from `expected_length`.
  void assemble(std::ostream& out, std::uint64_t expected_length) const;
  std::string assemble(std::uint64_t expected_length) const;

  IoStats stats() const;
  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  struct Bucket {
    std::uint64_t size = 0;      // bases only
    unsigned active = 0;         // L_D
    std::uint64_t flips = 0;
    std::vector<std::uint64_t> dollars;  // local positions in the final content
    std::vector<std::uint64_t> data[2];  // memory backend
    IoStats io;
  };

  std::filesystem::path path(std::uint64_t leaf, unsigned side) const;
  void insert_end_markers(Bucket& b, std::uint64_t base, std::span<const ActiveWord> entries);
  template <typename Sink>
  void stream_bucket(std::uint64_t leaf, Sink&& sink) const;

  StoreOptions options_;
  std::filesystem::path dir_;
  std::vector<std::unique_ptr<Bucket>> buckets_;  // allocated on first insert
};

}  // namespace ibb
