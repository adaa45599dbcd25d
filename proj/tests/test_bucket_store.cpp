#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ibb/bucket_store.hpp"
#include "ibb/error.hpp"
#include "ibb/packed_stream.hpp"

using ibb::ActiveWord;
using ibb::Backend;
using ibb::BucketStore;
using ibb::StoreOptions;
using ibb::Symbol;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "ibb-test-buckets";
  std::filesystem::create_directories(dir);
  return dir;
}

StoreOptions options(Backend backend, bool byte_files = false, std::size_t buffer = 1 << 20) {
  StoreOptions o;
  o.kappa = 3;
  o.backend = backend;
  o.tmp_dir = scratch_dir();
  o.buffer_bytes = buffer;
  o.byte_files = byte_files;
  return o;
}

std::vector<ActiveWord> batch(std::initializer_list<std::pair<std::uint64_t, char>> items) {
  std::vector<ActiveWord> out;
  for (auto [pos, c] : items) out.push_back({pos, 0, 0, c == '$' ? Symbol::Dollar : *ibb::base_from_char(c)});
  return out;
}

}  // namespace

TEST_CASE("packed streams copy and count across word boundaries") {
  std::mt19937_64 rng(3);
  std::vector<std::uint64_t> src;
  std::string letters;
  ibb::SymbolWriter w(src);
  for (int i = 0; i < 1000; ++i) {
    const auto s = ibb::from_code(static_cast<unsigned>(rng() % 4));
    w.put(s);
    letters.push_back(ibb::to_char(s));
  }
  w.finish();
  CHECK(src.size() == (1000 + 31) / 32);

  std::vector<std::uint64_t> dst;
  ibb::SymbolReader r(src, 1000);
  ibb::SymbolWriter out(dst);
  ibb::Counters counts;
  ibb::copy_symbols_counting(r, out, 77, counts);
  ibb::copy_symbols(r, out, 923);
  out.finish();
  CHECK(dst == src);
  for (unsigned c = 0; c < 4; ++c)
    CHECK(counts.n[c] == static_cast<std::uint64_t>(std::count(letters.begin(), letters.begin() + 77, "ACGT"[c])));
}

TEST_CASE("merges splice symbols at tree positions and report the rank within the bucket") {
  for (Backend backend : {Backend::Memory, Backend::External}) {
    BucketStore store(options(backend));
    std::vector<std::uint64_t> ranks(3);

    auto first = batch({{5, 'C'}, {6, 'A'}, {7, 'C'}});
    store.merge_insert(2, 5, first, ranks);
    CHECK(store.contents(2) == "CAC");
    CHECK(ranks == std::vector<std::uint64_t>{0, 0, 1});
    CHECK(store.active_side(2) == 1);

    // Bucket starts at tree position 5; insert before, between and after.
    auto second = batch({{5, 'G'}, {7, 'C'}, {10, 'C'}});
    store.merge_insert(2, 5, second, ranks);
    CHECK(store.contents(2) == "GCCACC");
    CHECK(ranks == std::vector<std::uint64_t>{0, 1, 3});
    CHECK(store.active_side(2) == 0);
    CHECK(store.flips(2) == 2);
    CHECK(store.size(2) == 6);
    CHECK(store.total_size() == 6);
    CHECK(store.flips(3) == 0);
  }
}

TEST_CASE("positions outside the stream are rejected") {
  BucketStore store(options(Backend::Memory));
  std::vector<std::uint64_t> ranks(2);
  auto gap = batch({{1, 'A'}});
  CHECK_THROWS_AS(store.merge_insert(0, 0, gap, ranks), ibb::ConsistencyError);
  auto before = batch({{0, 'A'}});
  CHECK_THROWS_AS(store.merge_insert(0, 1, before, ranks), ibb::ConsistencyError);
  auto twice = batch({{0, 'A'}, {0, 'C'}});
  CHECK_THROWS_AS(store.merge_insert(0, 0, twice, ranks), ibb::ConsistencyError);
}

TEST_CASE("end markers are kept aside and spliced in on output") {
  BucketStore store(options(Backend::Memory));
  std::vector<std::uint64_t> ranks(4);
  store.merge_insert(1, 3, batch({{3, 'A'}, {4, 'T'}}), ranks);
  store.merge_insert(4, 0, batch({{0, 'G'}}), ranks);
  store.merge_insert(1, 3, batch({{3, '$'}, {5, '$'}}), ranks);
  CHECK(store.contents(1) == "$A$T");
  CHECK(store.size(1) == 4);
  CHECK(store.assemble(5) == "$A$TG");
  CHECK_THROWS_AS(store.assemble(6), ibb::ConsistencyError);
  CHECK_THROWS_AS(store.merge_insert(1, 3, batch({{3, 'A'}}), ranks), ibb::ConsistencyError);
  CHECK_THROWS_AS(store.merge_insert(4, 0, batch({{2, '$'}}), ranks), ibb::ConsistencyError);
}

TEST_CASE("file layouts and buffer sizes do not change contents") {
  std::mt19937_64 rng(5);
  std::vector<BucketStore*> stores;
  BucketStore memory(options(Backend::Memory));
  BucketStore packed(options(Backend::External, false, 8));
  BucketStore bytes(options(Backend::External, true, 8));
  BucketStore large(options(Backend::External, false, 1 << 16));
  stores = {&memory, &packed, &bytes, &large};

  std::uint64_t size = 0;
  for (int round = 0; round < 40; ++round) {
    std::vector<ActiveWord> entries;
    std::uint64_t pos = 100;
    const std::uint64_t end = 100 + size + 1;
    for (std::uint64_t p = 100; p < end; ++p) {
      if (rng() % 3 == 0) entries.push_back({pos + entries.size(), 0, 0, ibb::from_code(static_cast<unsigned>(rng() % 4))});
      ++pos;
    }
    if (entries.empty()) continue;
    std::vector<std::vector<std::uint64_t>> ranks(stores.size(), std::vector<std::uint64_t>(entries.size()));
    for (std::size_t s = 0; s < stores.size(); ++s) stores[s]->merge_insert(7, 100, entries, ranks[s]);
    for (std::size_t s = 1; s < stores.size(); ++s) CHECK(ranks[s] == ranks[0]);
    size += entries.size();
    for (std::size_t s = 1; s < stores.size(); ++s) REQUIRE(stores[s]->contents(7) == stores[0]->contents(7));
  }
  CHECK(memory.size(7) == size);
  CHECK(packed.stats().bytes_written > 0);
  CHECK(bytes.stats().bytes_written > packed.stats().bytes_written);
  CHECK(memory.stats().merges == packed.stats().merges);
}

TEST_CASE("bucket files live in a private directory removed with the store") {
  std::filesystem::path dir;
  {
    BucketStore store(options(Backend::External));
    dir = store.directory();
    CHECK(std::filesystem::is_directory(dir));
    std::vector<std::uint64_t> ranks(1);
    store.merge_insert(3, 0, batch({{0, 'T'}}), ranks);
    CHECK(std::filesystem::exists(dir / "bucket_3_0.bin"));
    BucketStore other(options(Backend::External));
    CHECK(other.directory() != dir);
  }
  CHECK_FALSE(std::filesystem::exists(dir));
  CHECK(ibb::bucket_id(ibb::ContextShape(3), 0b1010) == 0b101);
  CHECK(ibb::local_position_base(ibb::Counters{{1, 2, 3, 4}}) == 10);
}
