#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ibb/collection.hpp"

/// Brute-force references for the construction, meant for desk-scale inputs.
///
/// Flat BWT strings use '$' for every end marker. Where a marker's identity
/// matters (lf), the i-th '$' in the string is taken as marker i.
namespace ibb::oracle {

/// Last column of the sorted rotations of S_0 $_0 ... S_{m-1} $_{m-1},
/// with $_0 < ... < $_{m-1} < A < C < G < T.
std::string naive_bwt(const WordCollection& words);

/// Occurrences of c in s[0, x).
std::uint64_t rank(std::string_view s, std::uint64_t x, char c);

/// Symbols of s smaller than c under $ < A < C < G < T.
std::uint64_t count_smaller(std::string_view s, char c);

/// rank(i, bwt[i]) + count_smaller(bwt[i]). Throws std::out_of_range.
std::uint64_t lf(std::string_view bwt, std::uint64_t i);

/// Recovers the m words. Throws InvalidBwtError if the string is not a BWT of
/// m non-empty words over ACGT.
WordCollection invert(std::string_view bwt, std::size_t m);

/// For each bucket (leaf ordinal of a kappa-bit context), the number of BWT
/// rows whose A-padded context is smaller; entry 2^kappa is |W|.
std::vector<std::uint64_t> bucket_offsets(const WordCollection& words, unsigned kappa);

/// Rebuilds the partial transform bwt(t) iteration by iteration, inserting
/// into a plain string at global positions computed with a literal LF-mapping.
class SpliceOracle {
 public:
  explicit SpliceOracle(const WordCollection& words);

  bool done() const noexcept { return t_ > max_length_; }
  /// Runs the next iteration; returns its number.
  std::uint64_t step();
  const std::string& current() const noexcept { return bwt_; }
  std::uint64_t active() const noexcept { return active_.size(); }

 private:
  struct Entry {
    std::size_t word;
    std::uint64_t position;
  };

  std::vector<std::string> words_;
  std::uint64_t max_length_;
  std::uint64_t t_ = 0;
  std::vector<bool> started_;
  std::vector<Entry> active_;
  std::string bwt_;
};

}  // namespace ibb::oracle
