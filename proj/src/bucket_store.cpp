#include "ibb/bucket_store.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "ibb/error.hpp"
#include "ibb/packed_stream.hpp"

namespace ibb {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_file(const std::filesystem::path& p, const char* mode, std::uint64_t leaf) {
  File f(std::fopen(p.c_str(), mode));
  if (!f) throw IoError("bucket " + std::to_string(leaf) + ": cannot open " + p.string());
  return f;
}

std::uint64_t stored_bytes(std::uint64_t symbols, bool byte_files) {
  return byte_files ? symbols : (symbols + kSymbolsPerWord - 1) / kSymbolsPerWord * sizeof(std::uint64_t);
}

std::filesystem::path make_run_directory(const std::filesystem::path& root) {
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::ostringstream name;
    name << "ibb-" << ::getpid() << '-' << counter++ << '-' << std::hex << rd();
    auto dir = root / name.str();
    if (std::filesystem::create_directory(dir, ec)) return dir;
  }
  throw IoError("cannot create a bucket directory under " + root.string());
}

void merge_stream(SymbolReader& in, SymbolWriter& out, std::uint64_t base, std::span<const ActiveWord> entries,
                  std::span<std::uint64_t> rank_k, std::uint64_t leaf) {
  std::uint64_t pos = base;
  Counters local;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ActiveWord& e = entries[i];
    if (e.position < pos || e.position - pos > in.remaining())
      throw ConsistencyError("bucket " + std::to_string(leaf) + ": insert position " + std::to_string(e.position) +
                             " out of order or beyond the stream");
    copy_symbols_counting(in, out, e.position - pos, local);
    rank_k[i] = local[e.symbol];
    out.put(e.symbol);
    ++local[e.symbol];
    pos = e.position + 1;
  }
  copy_symbols(in, out, in.remaining());
  out.finish();
}

}  // namespace

std::uint64_t bucket_id(const ContextShape& shape, std::uint64_t context) { return shape.leaf(context); }

BucketStore::BucketStore(const StoreOptions& options)
    : options_(options), buckets_(std::size_t{1} << ContextShape(options.kappa).kappa()) {
  if (options_.backend == Backend::External) dir_ = make_run_directory(options_.tmp_dir);
}

BucketStore::~BucketStore() {
  if (!dir_.empty()) {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
}

std::filesystem::path BucketStore::path(std::uint64_t leaf, unsigned side) const {
  return dir_ / ("bucket_" + std::to_string(leaf) + "_" + std::to_string(side) + ".bin");
}

std::uint64_t BucketStore::size(std::uint64_t leaf) const {
  const auto& b = buckets_[leaf];
  return b ? b->size + b->dollars.size() : 0;
}

unsigned BucketStore::active_side(std::uint64_t leaf) const { return buckets_[leaf] ? buckets_[leaf]->active : 0; }

std::uint64_t BucketStore::flips(std::uint64_t leaf) const { return buckets_[leaf] ? buckets_[leaf]->flips : 0; }

std::uint64_t BucketStore::total_size() const {
  std::uint64_t n = 0;
  for (std::uint64_t leaf = 0; leaf < buckets_.size(); ++leaf) n += size(leaf);
  return n;
}

IoStats BucketStore::stats() const {
  IoStats s;
  for (const auto& b : buckets_) {
    if (!b) continue;
    s.bytes_read += b->io.bytes_read;
    s.bytes_written += b->io.bytes_written;
    s.merges += b->io.merges;
  }
  return s;
}

void BucketStore::merge_insert(std::uint64_t leaf, std::uint64_t base, std::span<const ActiveWord> entries,
                               std::span<std::uint64_t> rank_k) {
  if (entries.empty()) return;
  auto& slot = buckets_[leaf];
  if (!slot) slot = std::make_unique<Bucket>();
  Bucket& b = *slot;
  if (entries.front().symbol == Symbol::Dollar) {
    insert_end_markers(b, base, entries);
    return;
  }
  if (!b.dollars.empty()) throw ConsistencyError("bucket " + std::to_string(leaf) + ": insert after end markers");

  const std::uint64_t old_size = b.size;
  const std::uint64_t new_size = old_size + entries.size();
  const unsigned target = b.active;

  if (options_.backend == Backend::Memory) {
    auto& dst = b.data[target];
    dst.clear();
    dst.reserve((new_size + kSymbolsPerWord - 1) / kSymbolsPerWord);
    SymbolReader in(b.data[1 - target], old_size);
    SymbolWriter out(dst);
    merge_stream(in, out, base, entries, rank_k, leaf);
  } else {
    const std::size_t cap = std::max<std::size_t>(1, options_.buffer_bytes / sizeof(std::uint64_t));
    const auto words_for = [&](std::uint64_t symbols) {
      const std::uint64_t bytes = stored_bytes(symbols, options_.byte_files);
      return static_cast<std::size_t>(std::clamp<std::uint64_t>((bytes + 7) / 8, 1, cap));
    };
    thread_local std::vector<std::uint64_t> in_buf, out_buf;
    in_buf.resize(words_for(old_size));
    out_buf.resize(words_for(new_size));

    File in_file = old_size ? open_file(path(leaf, 1 - target), "rb", leaf) : File{};
    File out_file = open_file(path(leaf, target), "wb", leaf);
    SymbolReader in(in_file.get(), old_size, in_buf, options_.byte_files);
    SymbolWriter out(out_file.get(), out_buf, options_.byte_files);
    merge_stream(in, out, base, entries, rank_k, leaf);
    if (std::fflush(out_file.get()) != 0) throw IoError("bucket " + std::to_string(leaf) + ": flush failed");
  }

  b.io.bytes_read += stored_bytes(old_size, options_.byte_files);
  b.io.bytes_written += stored_bytes(new_size, options_.byte_files);
  ++b.io.merges;
  b.size = new_size;
  b.active = 1 - target;
  ++b.flips;
}

void BucketStore::insert_end_markers(Bucket& b, std::uint64_t base, std::span<const ActiveWord> entries) {
  const std::uint64_t final_size = b.size + b.dollars.size() + entries.size();
  for (const ActiveWord& e : entries) {
    if (e.symbol != Symbol::Dollar) throw ConsistencyError("end markers mixed with bases in one batch");
    if (e.position < base) throw ConsistencyError("end marker before its bucket");
    const std::uint64_t local = e.position - base;
    if (local >= final_size || (!b.dollars.empty() && local <= b.dollars.back()))
      throw ConsistencyError("end marker position out of order or beyond the bucket");
    b.dollars.push_back(local);
  }
  ++b.io.merges;
}

template <typename Sink>
void BucketStore::stream_bucket(std::uint64_t leaf, Sink&& sink) const {
  const auto& slot = buckets_[leaf];
  if (!slot) return;
  const Bucket& b = *slot;

  std::vector<std::uint64_t> buffer;
  File file;
  std::optional<SymbolReader> reader;
  const unsigned current = 1 - b.active;
  if (options_.backend == Backend::Memory) {
    reader.emplace(b.data[current], b.size);
  } else if (b.size) {
    buffer.resize(std::max<std::size_t>(1, options_.buffer_bytes / sizeof(std::uint64_t)));
    file = open_file(path(leaf, current), "rb", leaf);
    reader.emplace(file.get(), b.size, buffer, options_.byte_files);
  }

  char out[4096];
  std::size_t len = 0;
  auto emit = [&](char c) {
    out[len++] = c;
    if (len == sizeof out) {
      sink(out, len);
      len = 0;
    }
  };
  std::uint64_t pos = 0;
  auto copy_bases = [&](std::uint64_t n) {
    while (n) {
      const auto k = static_cast<unsigned>(std::min<std::uint64_t>(n, kSymbolsPerWord));
      const std::uint64_t chunk = reader->take(k);
      for (unsigned i = 0; i < k; ++i) emit(to_char(from_code(static_cast<unsigned>(chunk >> (2 * i)))));
      n -= k;
      pos += k;
    }
  };
  for (std::uint64_t d : b.dollars) {
    copy_bases(d - pos);
    emit('$');
    ++pos;
  }
  if (reader) copy_bases(reader->remaining());
  if (len) sink(out, len);
}

std::string BucketStore::contents(std::uint64_t leaf) const {
  std::string s;
  stream_bucket(leaf, [&](const char* p, std::size_t n) { s.append(p, n); });
  return s;
}

void BucketStore::assemble(std::ostream& out, std::uint64_t expected_length) const {
  std::uint64_t written = 0;
  for (std::uint64_t leaf = 0; leaf < buckets_.size(); ++leaf) {
    stream_bucket(leaf, [&](const char* p, std::size_t n) {
      out.write(p, static_cast<std::streamsize>(n));
      written += n;
    });
  }
  if (!out) throw IoError("writing the assembled output failed");
  if (written != expected_length)
    throw ConsistencyError("assembled " + std::to_string(written) + " symbols, expected " +
                           std::to_string(expected_length));
}

std::string BucketStore::assemble(std::uint64_t expected_length) const {
  std::ostringstream out;
  assemble(out, expected_length);
  return std::move(out).str();
}

}  // namespace ibb
