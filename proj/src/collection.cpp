#include "ibb/collection.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ibb/error.hpp"

namespace ibb {

CollectionBuilder::CollectionBuilder() { c_.offsets_.push_back(0); }

void CollectionBuilder::add(std::span<const Symbol> word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  for (Symbol s : word) {
    if (!is_base(s)) throw std::invalid_argument("end marker inside a word");
    const std::uint64_t p = c_.symbols_++;
    if ((p & 31) == 0) c_.packed_.push_back(0);
    c_.packed_.back() |= std::uint64_t{code(s)} << ((p & 31) * 2);
  }
  c_.offsets_.push_back(c_.symbols_);
  c_.max_length_ = std::max<std::uint64_t>(c_.max_length_, word.size());
}

WordCollection CollectionBuilder::finish() && {
  if (c_.size() == 0) throw std::invalid_argument("empty collection");
  return std::move(c_);
}

namespace {

std::vector<Symbol> to_symbols(std::string_view w) {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (char ch : w) {
    auto s = base_from_char(ch);
    if (!s) throw std::invalid_argument(std::string("invalid base '") + ch + "'");
    out.push_back(*s);
  }
  return out;
}

}  // namespace

WordCollection WordCollection::from_strings(std::span<const std::string> words) {
  CollectionBuilder b;
  for (const auto& w : words) b.add(to_symbols(w));
  return std::move(b).finish();
}

WordCollection WordCollection::from_strings(std::initializer_list<std::string_view> words) {
  CollectionBuilder b;
  for (auto w : words) b.add(to_symbols(w));
  return std::move(b).finish();
}

Symbol WordCollection::symbol_at(std::size_t j, std::uint64_t t) const {
  const std::uint64_t len = length(j);
  if (t > max_length_ || t + len < max_length_)
    throw std::out_of_range("symbol_at: word " + std::to_string(j) + " is not active in iteration " +
                            std::to_string(t));
  if (t == max_length_) return Symbol::Dollar;
  return base(j, max_length_ - 1 - t);
}

std::string WordCollection::word(std::size_t j) const {
  std::string s(length(j), '\0');
  for (std::uint64_t i = 0; i < s.size(); ++i) s[i] = to_char(base(j, i));
  return s;
}

std::vector<std::string> WordCollection::words() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t j = 0; j < size(); ++j) out.push_back(word(j));
  return out;
}

namespace {

constexpr bool is_ambiguous(char c) noexcept {
  switch (c) {
    case 'N': case 'R': case 'Y': case 'K': case 'M': case 'S':
    case 'W': case 'B': case 'D': case 'H': case 'V':
    case 'n': case 'r': case 'y': case 'k': case 'm': case 's':
    case 'w': case 'b': case 'd': case 'h': case 'v':
      return true;
    default:
      return false;
  }
}

class RecordSink {
 public:
  explicit RecordSink(AmbiguousHandling h) : handling_(h) {}

  void append(std::string_view line, std::uint64_t line_no) {
    for (char ch : line) {
      if (auto s = base_from_char(ch)) {
        current_.push_back(*s);
      } else if (is_ambiguous(ch)) {
        if (handling_ == AmbiguousHandling::Fail)
          throw ParseError(line_no, std::string("ambiguous base '") + ch + "'");
        ambiguous_ = true;
      } else {
        throw ParseError(line_no, std::string("invalid character '") + ch + "'");
      }
    }
    raw_length_ += line.size();
  }

  // Closes the current record; `line_no` is reported if it was empty.
  void finish_record(std::uint64_t line_no) {
    if (raw_length_ == 0) throw ParseError(line_no, "empty sequence");
    const bool drop = current_.empty() || (ambiguous_ && handling_ == AmbiguousHandling::DropRecord);
    if (!drop) builder_.add(current_);
    current_.clear();
    ambiguous_ = false;
    raw_length_ = 0;
  }

  std::uint64_t raw_length() const noexcept { return raw_length_; }

  WordCollection finish(std::uint64_t line_no) && {
    if (builder_.size() == 0) throw ParseError(line_no, "no sequences in input");
    return std::move(builder_).finish();
  }

 private:
  AmbiguousHandling handling_;
  CollectionBuilder builder_;
  std::vector<Symbol> current_;
  bool ambiguous_ = false;
  std::uint64_t raw_length_ = 0;
};

bool next_line(std::istream& in, std::string& line, std::uint64_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

WordCollection parse_fasta(std::istream& in, std::string first, std::uint64_t line_no, RecordSink sink) {
  std::string line = std::move(first);
  std::uint64_t header_line = line_no;
  while (next_line(in, line, line_no)) {
    if (!line.empty() && line[0] == '>') {
      sink.finish_record(header_line);
      header_line = line_no;
    } else if (!is_blank(line)) {
      sink.append(line, line_no);
    }
  }
  sink.finish_record(header_line);
  return std::move(sink).finish(line_no);
}

WordCollection parse_fastq(std::istream& in, std::string first, std::uint64_t line_no, RecordSink sink) {
  std::string line = std::move(first);
  for (;;) {
    if (line.empty() || line[0] != '@') throw ParseError(line_no, "expected '@' record header");
    const std::uint64_t header_line = line_no;
    if (!next_line(in, line, line_no)) throw ParseError(line_no, "truncated record");
    sink.append(line, line_no);
    const std::uint64_t seq_length = sink.raw_length();
    if (!next_line(in, line, line_no) || line.empty() || line[0] != '+')
      throw ParseError(line_no, "expected '+' separator");
    if (!next_line(in, line, line_no)) throw ParseError(line_no, "missing quality line");
    if (line.size() != seq_length) throw ParseError(line_no, "quality length differs from sequence length");
    sink.finish_record(header_line);
    do {
      if (!next_line(in, line, line_no)) return std::move(sink).finish(line_no);
    } while (is_blank(line));
  }
}

WordCollection parse_raw(std::istream& in, std::string first, std::uint64_t line_no, RecordSink sink) {
  std::string line = std::move(first);
  do {
    if (is_blank(line)) continue;
    sink.append(line, line_no);
    sink.finish_record(line_no);
  } while (next_line(in, line, line_no));
  return std::move(sink).finish(line_no);
}

}  // namespace

WordCollection parse_sequences(std::istream& in, const IngestPolicy& policy) {
  std::string line;
  std::uint64_t line_no = 0;
  do {
    if (!next_line(in, line, line_no)) throw ParseError(line_no, "no sequences in input");
  } while (is_blank(line));

  InputFormat format = policy.format;
  if (format == InputFormat::Auto) {
    format = line[0] == '>' ? InputFormat::Fasta : line[0] == '@' ? InputFormat::Fastq : InputFormat::RawLines;
  }
  RecordSink sink(policy.ambiguous);
  switch (format) {
    case InputFormat::Fasta:
      if (line[0] != '>') throw ParseError(line_no, "expected '>' record header");
      return parse_fasta(in, std::move(line), line_no, std::move(sink));
    case InputFormat::Fastq:
      return parse_fastq(in, std::move(line), line_no, std::move(sink));
    default:
      return parse_raw(in, std::move(line), line_no, std::move(sink));
  }
}

void write_raw_lines(const WordCollection& c, std::ostream& out) {
  for (std::size_t j = 0; j < c.size(); ++j) out << c.word(j) << '\n';
}

}  // namespace ibb
