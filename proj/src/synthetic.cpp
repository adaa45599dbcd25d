#include "ibb/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ibb::synthetic {

namespace {

void add_random_word(CollectionBuilder& b, std::mt19937_64& rng, std::size_t length, std::vector<Symbol>& buf) {
  buf.resize(length);
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < length; ++i) {
    if (i % 32 == 0) bits = rng();
    buf[i] = from_code(static_cast<unsigned>(bits));
    bits >>= 2;
  }
  b.add(buf);
}

}  // namespace

WordCollection random_collection(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words,
                                 std::size_t min_length, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> words(min_words, max_words);
  std::uniform_int_distribution<std::size_t> length(min_length, max_length);
  CollectionBuilder b;
  std::vector<Symbol> buf;
  for (std::size_t m = words(rng); m > 0; --m) add_random_word(b, rng, length(rng), buf);
  return std::move(b).finish();
}

WordCollection read_set(std::mt19937_64& rng, std::uint64_t total_symbols, std::size_t read_length) {
  CollectionBuilder b;
  std::vector<Symbol> buf;
  const std::uint64_t reads = std::max<std::uint64_t>(1, total_symbols / read_length);
  for (std::uint64_t i = 0; i < reads; ++i) add_random_word(b, rng, read_length, buf);
  return std::move(b).finish();
}

WordCollection length_diverse(std::mt19937_64& rng, std::uint64_t total_symbols, std::size_t max_length) {
  // Log-uniform lengths between 20 and max_length: many short words, a few long ones.
  std::uniform_real_distribution<double> u(std::log(20.0), std::log(static_cast<double>(std::max<std::size_t>(max_length, 21))));
  CollectionBuilder b;
  std::vector<Symbol> buf;
  std::uint64_t total = 0;
  bool has_max = false;
  while (total < total_symbols) {
    std::size_t len = has_max ? static_cast<std::size_t>(std::exp(u(rng))) : max_length;
    len = std::clamp<std::size_t>(len, 1, max_length);
    has_max = true;
    add_random_word(b, rng, len, buf);
    total += len;
  }
  return std::move(b).finish();
}

}  // namespace ibb::synthetic
