#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ibb/collection.hpp"
#include "ibb/error.hpp"

using ibb::AmbiguousHandling;
using ibb::InputFormat;
using ibb::Symbol;
using ibb::WordCollection;

namespace {

WordCollection parse(const std::string& text, ibb::IngestPolicy policy = {}) {
  std::istringstream in(text);
  return ibb::parse_sequences(in, policy);
}

std::uint64_t error_line(const std::string& text, ibb::IngestPolicy policy = {}) {
  try {
    parse(text, policy);
  } catch (const ibb::ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("words are stored packed and read back") {
  const auto c = WordCollection::from_strings({"ACGT", "g", "TTAGCATTAGCATTAGCATTAGCATTAGCATTAGCA"});
  CHECK(c.size() == 3);
  CHECK(c.word(0) == "ACGT");
  CHECK(c.word(1) == "G");
  CHECK(c.word(2) == "TTAGCATTAGCATTAGCATTAGCATTAGCATTAGCA");
  CHECK(c.max_length() == 36);
  CHECK(c.symbol_count() == 41);
  CHECK(c.total_length() == 44);
  CHECK(c.base(0, 1) == Symbol::C);
  CHECK_THROWS_AS(WordCollection::from_strings({"AC", ""}), std::invalid_argument);
  CHECK_THROWS_AS(WordCollection::from_strings({"ANC"}), std::invalid_argument);
}

TEST_CASE("right alignment reads each word backwards and ends together") {
  // M = 5: "GATTC" starts at 0, "CA" at 3.
  const auto c = WordCollection::from_strings({"GATTC", "CA"});
  CHECK(c.start_iteration(0) == 0);
  CHECK(c.start_iteration(1) == 3);
  const std::string expected0 = "CTTAG$";
  for (std::uint64_t t = 0; t <= 5; ++t) CHECK(ibb::to_char(c.symbol_at(0, t)) == expected0[t]);
  CHECK(c.symbol_at(1, 3) == Symbol::A);
  CHECK(c.symbol_at(1, 4) == Symbol::C);
  CHECK(c.symbol_at(1, 5) == Symbol::Dollar);
  CHECK_THROWS_AS(c.symbol_at(1, 2), std::out_of_range);
  CHECK_THROWS_AS(c.symbol_at(0, 6), std::out_of_range);
}

TEST_CASE("FASTA records span lines and are uppercased") {
  const auto c = parse(">r1 some description\nACG\ntt\n\n>r2\nC\n");
  REQUIRE(c.size() == 2);
  CHECK(c.word(0) == "ACGTT");
  CHECK(c.word(1) == "C");
}

TEST_CASE("FASTQ records ignore quality and check its length") {
  const auto c = parse("@a\nACGT\n+\n!!!!\n@b\nGG\n+b\n#I\n");
  REQUIRE(c.size() == 2);
  CHECK(c.word(1) == "GG");
  CHECK(error_line("@a\nACGT\n+\n!!!\n") == 4);
  CHECK(error_line("@a\nACGT\n-\n!!!!\n") == 3);
  CHECK(error_line("@a\nACGT\n+\n") == 3);
}

TEST_CASE("raw lines skip blanks and handle CRLF") {
  const auto c = parse("ACGT\r\n\nTTT\n");
  REQUIRE(c.size() == 2);
  CHECK(c.word(0) == "ACGT");
  CHECK(c.word(1) == "TTT");
}

TEST_CASE("format can be forced") {
  ibb::IngestPolicy p;
  p.format = InputFormat::RawLines;
  CHECK(error_line(">x\nACGT\n", p) == 1);
  p.format = InputFormat::Fasta;
  CHECK(parse(">x\nAC\n", p).word(0) == "AC");
}

TEST_CASE("ambiguity codes follow the policy") {
  const std::string text = ">a\nACNNGT\n>b\nNNN\n>c\nTT\n";
  ibb::IngestPolicy p;

  p.ambiguous = AmbiguousHandling::DropChar;
  auto c = parse(text, p);
  REQUIRE(c.size() == 2);  // "NNN" is empty once its bases are dropped
  CHECK(c.word(0) == "ACGT");
  CHECK(c.word(1) == "TT");

  p.ambiguous = AmbiguousHandling::DropRecord;
  c = parse(text, p);
  REQUIRE(c.size() == 1);
  CHECK(c.word(0) == "TT");

  p.ambiguous = AmbiguousHandling::Fail;
  CHECK(error_line(text, p) == 2);
  CHECK(error_line("ACGT\nACRT\n", p) == 2);
}

TEST_CASE("invalid input is reported with its line") {
  CHECK(error_line("ACGT\nAC-T\n") == 2);
  CHECK(error_line(">a\nAC\n>b\n>c\nG\n") == 3);
  CHECK(error_line("ACGU\n") == 1);
  CHECK_THROWS_AS(parse(""), ibb::ParseError);
  CHECK_THROWS_AS(parse("\n\n"), ibb::ParseError);
  CHECK_THROWS_AS(parse("NNNN\n"), ibb::ParseError);
}

TEST_CASE("raw output parses back to the same collection") {
  const auto c = WordCollection::from_strings({"ACGTACGTACGTACGTACGTACGTACGTACGTACGT", "T", "GCA"});
  std::ostringstream out;
  ibb::write_raw_lines(c, out);
  CHECK(parse(out.str()) == c);
}
