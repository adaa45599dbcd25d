#include "ibb/oracle.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "ibb/error.hpp"

namespace ibb::oracle {

namespace {

int order(char c) {
  switch (c) {
    case '$': return 0;
    case 'A': return 1;
    case 'C': return 2;
    case 'G': return 3;
    case 'T': return 4;
    default: throw std::invalid_argument(std::string("not a BWT symbol: '") + c + "'");
  }
}

struct Suffix {
  std::size_t word;
  std::size_t start;
};

}  // namespace

std::string naive_bwt(const WordCollection& collection) {
  const std::vector<std::string> words = collection.words();
  std::vector<Suffix> rows;
  for (std::size_t j = 0; j < words.size(); ++j)
    for (std::size_t p = 0; p <= words[j].size(); ++p) rows.push_back({j, p});

  // Distinct markers end every comparison at the first marker reached.
  auto less = [&](const Suffix& a, const Suffix& b) {
    const std::string& x = words[a.word];
    const std::string& y = words[b.word];
    for (std::size_t i = 0;; ++i) {
      const bool x_end = a.start + i == x.size();
      const bool y_end = b.start + i == y.size();
      if (x_end && y_end) return a.word < b.word;
      if (x_end) return true;
      if (y_end) return false;
      const char cx = x[a.start + i], cy = y[b.start + i];
      if (cx != cy) return order(cx) < order(cy);
    }
  };
  std::sort(rows.begin(), rows.end(), less);

  std::string bwt;
  bwt.reserve(rows.size());
  for (const Suffix& r : rows) bwt.push_back(r.start ? words[r.word][r.start - 1] : '$');
  return bwt;
}

std::uint64_t rank(std::string_view s, std::uint64_t x, char c) {
  if (x > s.size()) throw std::out_of_range("rank: position beyond string");
  return static_cast<std::uint64_t>(std::count(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(x), c));
}

std::uint64_t count_smaller(std::string_view s, char c) {
  const int k = order(c);
  return static_cast<std::uint64_t>(std::count_if(s.begin(), s.end(), [&](char x) { return order(x) < k; }));
}

std::uint64_t lf(std::string_view bwt, std::uint64_t i) {
  if (i >= bwt.size()) throw std::out_of_range("lf: position beyond string");
  return rank(bwt, i, bwt[i]) + count_smaller(bwt, bwt[i]);
}

WordCollection invert(std::string_view bwt, std::size_t m) {
  std::array<std::uint64_t, 5> totals{};
  for (char c : bwt) {
    if (c != '$' && c != 'A' && c != 'C' && c != 'G' && c != 'T')
      throw InvalidBwtError(std::string("unexpected byte '") + c + "'");
    ++totals[static_cast<std::size_t>(order(c))];
  }
  if (totals[0] != m || m == 0)
    throw InvalidBwtError("expected " + std::to_string(m) + " end markers, found " + std::to_string(totals[0]));

  std::array<std::uint64_t, 5> first{};
  for (std::size_t c = 1; c < 5; ++c) first[c] = first[c - 1] + totals[c - 1];
  std::vector<std::uint64_t> next(bwt.size());
  std::array<std::uint64_t, 5> seen{};
  for (std::size_t i = 0; i < bwt.size(); ++i) {
    const auto c = static_cast<std::size_t>(order(bwt[i]));
    next[i] = first[c] + seen[c]++;
  }

  std::vector<std::string> words(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::string& w = words[j];
    std::uint64_t pos = j;
    while (bwt[pos] != '$') {
      if (w.size() >= bwt.size()) throw InvalidBwtError("word " + std::to_string(j) + " does not terminate");
      w.push_back(bwt[pos]);
      pos = next[pos];
    }
    if (w.empty()) throw InvalidBwtError("word " + std::to_string(j) + " is empty");
    std::reverse(w.begin(), w.end());
  }
  return WordCollection::from_strings(words);
}

std::vector<std::uint64_t> bucket_offsets(const WordCollection& collection, unsigned kappa) {
  const unsigned symbols = (kappa + 1) / 2;
  const std::vector<std::string> words = collection.words();
  std::vector<std::uint64_t> offsets((std::size_t{1} << kappa) + 1, 0);
  for (const std::string& w : words) {
    // One row per suffix w[p..]$ (p = 0..|w|); the marker and what follows read as A.
    for (std::size_t p = 0; p <= w.size(); ++p) {
      std::uint64_t bits = 0;
      for (unsigned i = 0; i < symbols; ++i) {
        const char c = p + i < w.size() ? w[p + i] : 'A';
        bits = (bits << 2) | static_cast<std::uint64_t>(order(c) - 1);
      }
      ++offsets[(bits >> (2 * symbols - kappa)) + 1];
    }
  }
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  return offsets;
}

SpliceOracle::SpliceOracle(const WordCollection& words)
    : words_(words.words()), max_length_(words.max_length()), started_(words_.size(), false) {}

std::uint64_t SpliceOracle::step() {
  if (done()) throw std::logic_error("SpliceOracle: already finished");
  const std::uint64_t t = t_;

  // Words starting now take the rows of their markers, ordered by index.
  std::vector<std::size_t> fresh;
  for (std::size_t j = 0; j < words_.size(); ++j)
    if (!started_[j] && max_length_ - words_[j].size() == t) fresh.push_back(j);
  for (std::size_t j : fresh) started_[j] = true;
  for (std::size_t j : fresh) {
    const auto before = static_cast<std::uint64_t>(std::count(started_.begin(), started_.begin() + static_cast<std::ptrdiff_t>(j), true));
    active_.push_back({j, before});
  }

  auto symbol = [&](const Entry& e) {
    return t == max_length_ ? '$' : words_[e.word][max_length_ - 1 - t];
  };

  std::sort(active_.begin(), active_.end(), [](const Entry& a, const Entry& b) { return a.position < b.position; });
  for (const Entry& e : active_) bwt_.insert(bwt_.begin() + static_cast<std::ptrdiff_t>(e.position), symbol(e));

  if (t < max_length_) {
    std::uint64_t alpha_next = 0;
    for (const std::string& w : words_)
      if (max_length_ - w.size() <= t + 1) ++alpha_next;
    for (Entry& e : active_) {
      const char c = symbol(e);
      e.position = rank(bwt_, e.position, c) + count_smaller(bwt_, c) + alpha_next;
    }
  } else {
    active_.clear();
  }
  ++t_;
  return t;
}

}  // namespace ibb::oracle
