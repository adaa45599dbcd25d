#pragma once

#include <cstdint>
#include <random>

#include "ibb/collection.hpp"

namespace ibb::synthetic {

/// m words in [min_words, max_words], lengths in [min_length, max_length],
/// bases uniform.
WordCollection random_collection(std::mt19937_64& rng, std::size_t min_words, std::size_t max_words,
                                 std::size_t min_length, std::size_t max_length);

/// Fixed-length reads with about `total_symbols` bases in all.
WordCollection read_set(std::mt19937_64& rng, std::uint64_t total_symbols, std::size_t read_length);

/// Mostly short words with a heavy tail of long ones, about `total_symbols`
/// bases in all and no word longer than `max_length`.
WordCollection length_diverse(std::mt19937_64& rng, std::uint64_t total_symbols, std::size_t max_length);

}  // namespace ibb::synthetic
