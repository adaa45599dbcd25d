#include "ibb/packed_stream.hpp"

#include <algorithm>

#include "ibb/error.hpp"

namespace ibb {

void SymbolReader::refill() {
  std::vector<std::uint64_t>& buf = *buffer_;
  if (!bytes_) {
    const std::uint64_t words_left = (file_symbols_ + kSymbolsPerWord - 1) / kSymbolsPerWord;
    const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(buf.size(), words_left));
    buf_len_ = std::fread(buf.data(), sizeof(std::uint64_t), want, file_);
    if (buf_len_ != want || want == 0) throw IoError("short read from bucket file");
    file_symbols_ -= std::min<std::uint64_t>(file_symbols_, std::uint64_t{want} * kSymbolsPerWord);
    bytes_read_ += want * sizeof(std::uint64_t);
  } else {
    // One letter per symbol; packed in place (word k never overlaps bytes not
    // yet consumed). Every word but the last must hold a full 32 symbols.
    if (buf.size() * sizeof(std::uint64_t) < kSymbolsPerWord) buf.resize(kSymbolsPerWord / sizeof(std::uint64_t));
    const std::size_t whole = buf.size() * sizeof(std::uint64_t) / kSymbolsPerWord * kSymbolsPerWord;
    const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(whole, file_symbols_));
    auto* bytes = reinterpret_cast<unsigned char*>(buf.data());
    if (want == 0 || std::fread(bytes, 1, want, file_) != want) throw IoError("short read from bucket file");
    file_symbols_ -= want;
    bytes_read_ += want;
    const std::size_t words = (want + kSymbolsPerWord - 1) / kSymbolsPerWord;
    for (std::size_t k = 0; k < words; ++k) {
      std::uint64_t w = 0;
      const std::size_t end = std::min(want, (k + 1) * kSymbolsPerWord);
      for (std::size_t i = k * kSymbolsPerWord; i < end; ++i) {
        auto s = base_from_char(static_cast<char>(bytes[i]));
        if (!s) throw IoError("bucket file holds a non-base byte");
        w |= std::uint64_t{code(*s)} << (2 * (i - k * kSymbolsPerWord));
      }
      buf[k] = w;
    }
    buf_len_ = words;
  }
  buf_pos_ = 0;
}

void SymbolWriter::emit_bytes(std::uint64_t word, unsigned n) {
  auto* bytes = reinterpret_cast<char*>(buffer_->data());
  const std::size_t cap = buffer_->size() * sizeof(std::uint64_t);
  for (unsigned i = 0; i < n; ++i) {
    bytes[byte_len_++] = to_char(from_code(static_cast<unsigned>(word >> (2 * i))));
    if (byte_len_ == cap) flush();
  }
}

void SymbolWriter::flush() {
  if (!file_) return;
  const std::size_t n = bytes_ ? byte_len_ : buf_len_ * sizeof(std::uint64_t);
  if (n && std::fwrite(buffer_->data(), 1, n, file_) != n) throw IoError("write to bucket file failed");
  bytes_written_ += n;
  buf_len_ = 0;
  byte_len_ = 0;
}

void SymbolWriter::finish() {
  if (fill_ > 0) {
    emit(acc_, fill_);
    acc_ = 0;
    fill_ = 0;
  }
  flush();
}

}  // namespace ibb
