#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <span>
#include <vector>

#include "ibb/symbol.hpp"

namespace ibb {

// Symbols are packed 32 to a 64-bit word, first symbol in the lowest two bits.
inline constexpr unsigned kSymbolsPerWord = 32;

constexpr std::uint64_t symbol_mask(unsigned n) noexcept {
  return n >= kSymbolsPerWord ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * n)) - 1;
}

constexpr std::uint64_t shift_left(std::uint64_t x, unsigned bits) noexcept { return bits >= 64 ? 0 : x << bits; }
constexpr std::uint64_t shift_right(std::uint64_t x, unsigned bits) noexcept { return bits >= 64 ? 0 : x >> bits; }

/// Adds the per-base counts of the first n symbols of `chunk` (upper bits zero).
inline void add_counts(Counters& acc, std::uint64_t chunk, unsigned n) noexcept {
  constexpr std::uint64_t kLow = 0x5555555555555555ULL;
  const std::uint64_t lo = chunk & kLow;
  const std::uint64_t hi = (chunk >> 1) & kLow;
  const auto t = static_cast<unsigned>(std::popcount(hi & lo));
  const auto g = static_cast<unsigned>(std::popcount(hi & ~lo));
  const auto c = static_cast<unsigned>(std::popcount(~hi & lo));
  acc.n[0] += n - t - g - c;
  acc.n[1] += c;
  acc.n[2] += g;
  acc.n[3] += t;
}

/// Sequential reader over packed symbols held in memory or in a file. A file
/// holds either packed words or, in byte mode, one ASCII letter per symbol.
class SymbolReader {
 public:
  SymbolReader(std::span<const std::uint64_t> words, std::uint64_t symbols) noexcept
      : mem_(words), remaining_(symbols) {}

  SymbolReader(std::FILE* file, std::uint64_t symbols, std::vector<std::uint64_t>& buffer, bool bytes) noexcept
      : file_(file), buffer_(&buffer), bytes_(bytes), remaining_(symbols), file_symbols_(symbols) {}

  std::uint64_t remaining() const noexcept { return remaining_; }
  std::uint64_t bytes_read() const noexcept { return bytes_read_; }

  /// Next n symbols (1 <= n <= 32, n <= remaining()).
  std::uint64_t take(unsigned n) {
    std::uint64_t r;
    if (n <= avail_) {
      r = cur_ & symbol_mask(n);
      cur_ = shift_right(cur_, 2 * n);
      avail_ -= n;
    } else {
      const std::uint64_t w = next_word();
      const unsigned k = avail_;
      r = (cur_ | shift_left(w, 2 * k)) & symbol_mask(n);
      cur_ = shift_right(w, 2 * (n - k));
      avail_ = kSymbolsPerWord - (n - k);
    }
    remaining_ -= n;
    return r;
  }

 private:
  std::uint64_t next_word() {
    if (!file_) return mem_[mem_pos_++];
    if (buf_pos_ == buf_len_) refill();
    return (*buffer_)[buf_pos_++];
  }

  void refill();

  std::span<const std::uint64_t> mem_;
  std::size_t mem_pos_ = 0;

  std::FILE* file_ = nullptr;
  std::vector<std::uint64_t>* buffer_ = nullptr;
  bool bytes_ = false;
  std::size_t buf_pos_ = 0;
  std::size_t buf_len_ = 0;

  std::uint64_t cur_ = 0;
  unsigned avail_ = 0;
  std::uint64_t remaining_ = 0;
  std::uint64_t file_symbols_ = 0;
  std::uint64_t bytes_read_ = 0;
};

/// Sequential writer, the counterpart of SymbolReader.
class SymbolWriter {
 public:
  explicit SymbolWriter(std::vector<std::uint64_t>& out) noexcept : mem_(&out) {}

  SymbolWriter(std::FILE* file, std::vector<std::uint64_t>& buffer, bool bytes) noexcept
      : file_(file), buffer_(&buffer), bytes_(bytes) {}

  /// Appends the first n symbols of `chunk` (upper bits must be zero).
  void put(std::uint64_t chunk, unsigned n) {
    acc_ |= shift_left(chunk, 2 * fill_);
    fill_ += n;
    written_ += n;
    if (fill_ >= kSymbolsPerWord) {
      emit(acc_, kSymbolsPerWord);
      fill_ -= kSymbolsPerWord;
      acc_ = shift_right(chunk, 2 * (n - fill_));
    }
  }

  void put(Symbol s) { put(code(s), 1); }

  /// Flushes the trailing partial word and any buffered output.
  void finish();

  std::uint64_t written() const noexcept { return written_; }
  std::uint64_t bytes_written() const noexcept { return bytes_written_; }

 private:
  void emit(std::uint64_t word, unsigned n) {
    if (mem_) {
      mem_->push_back(word);
      return;
    }
    if (bytes_) {
      emit_bytes(word, n);
      return;
    }
    (*buffer_)[buf_len_++] = word;
    if (buf_len_ == buffer_->size()) flush();
  }

  void emit_bytes(std::uint64_t word, unsigned n);
  void flush();

  std::vector<std::uint64_t>* mem_ = nullptr;
  std::FILE* file_ = nullptr;
  std::vector<std::uint64_t>* buffer_ = nullptr;
  bool bytes_ = false;
  std::size_t buf_len_ = 0;
  std::size_t byte_len_ = 0;

  std::uint64_t acc_ = 0;
  unsigned fill_ = 0;
  std::uint64_t written_ = 0;
  std::uint64_t bytes_written_ = 0;
};

/// Copies n symbols from `in` to `out`.
inline void copy_symbols(SymbolReader& in, SymbolWriter& out, std::uint64_t n) {
  for (; n >= kSymbolsPerWord; n -= kSymbolsPerWord) out.put(in.take(kSymbolsPerWord), kSymbolsPerWord);
  if (n) out.put(in.take(static_cast<unsigned>(n)), static_cast<unsigned>(n));
}

/// Copies n symbols and adds what was copied to `counts`.
inline void copy_symbols_counting(SymbolReader& in, SymbolWriter& out, std::uint64_t n, Counters& counts) {
  for (; n >= kSymbolsPerWord; n -= kSymbolsPerWord) {
    const std::uint64_t chunk = in.take(kSymbolsPerWord);
    add_counts(counts, chunk, kSymbolsPerWord);
    out.put(chunk, kSymbolsPerWord);
  }
  if (n) {
    const auto k = static_cast<unsigned>(n);
    const std::uint64_t chunk = in.take(k);
    add_counts(counts, chunk, k);
    out.put(chunk, k);
  }
}

}  // namespace ibb
