#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ibb/symbol.hpp"

namespace ibb {

enum class AmbiguousHandling { DropChar, DropRecord, Fail };
enum class InputFormat { Auto, Fasta, Fastq, RawLines };

struct IngestPolicy {
  AmbiguousHandling ambiguous = AmbiguousHandling::DropChar;
  InputFormat format = InputFormat::Auto;
};

/// Immutable collection S_0..S_{m-1} over {A,C,G,T}, stored 2-bit packed.
///
/// Besides plain access to S_j[i] it exposes the right-aligned, reversed view
/// used by the construction: in iteration t word j contributes
/// S_j[M-1-t] and, in the final iteration t = M, the end marker.
class WordCollection {
 public:
  WordCollection() = default;

  /// Throws std::invalid_argument on an empty list, an empty word or a
  /// character outside ACGT (case-insensitive).
  static WordCollection from_strings(std::span<const std::string> words);
  static WordCollection from_strings(std::initializer_list<std::string_view> words);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t max_length() const noexcept { return max_length_; }
  /// |W| = sum of word lengths plus one end marker per word.
  std::uint64_t total_length() const noexcept { return symbols_ + size(); }
  std::uint64_t symbol_count() const noexcept { return symbols_; }

  std::uint64_t length(std::size_t j) const { return offsets_[j + 1] - offsets_[j]; }

  /// S_j[i].
  Symbol base(std::size_t j, std::uint64_t i) const {
    const std::uint64_t p = offsets_[j] + i;
    return from_code(static_cast<unsigned>(packed_[p >> 5] >> ((p & 31) * 2)));
  }

  /// W_j[t]; requires M - |S_j| <= t <= M.
  Symbol symbol_at(std::size_t j, std::uint64_t t) const;

  std::uint64_t start_iteration(std::size_t j) const { return max_length_ - length(j); }

  std::string word(std::size_t j) const;
  std::vector<std::string> words() const;

  friend bool operator==(const WordCollection& a, const WordCollection& b) {
    return a.offsets_ == b.offsets_ && a.packed_ == b.packed_;
  }

 private:
  friend class CollectionBuilder;

  std::vector<std::uint64_t> packed_;
  std::vector<std::uint64_t> offsets_;
  std::uint64_t symbols_ = 0;
  std::uint64_t max_length_ = 0;
};

/// Appends validated words one at a time.
class CollectionBuilder {
 public:
  CollectionBuilder();
  void add(std::span<const Symbol> word);
  std::size_t size() const noexcept { return c_.size(); }
  WordCollection finish() &&;

 private:
  WordCollection c_;
};

/// Reads FASTA, FASTQ (quality ignored) or one sequence per line. Lowercase
/// bases are uppercased; N and the other IUPAC ambiguity codes are handled per
/// `policy.ambiguous`. Words that end up empty under drop-char are dropped.
WordCollection parse_sequences(std::istream& in, const IngestPolicy& policy = {});

/// One word per line; parse_sequences with RawLines reads it back unchanged.
void write_raw_lines(const WordCollection& c, std::ostream& out);

}  // namespace ibb
