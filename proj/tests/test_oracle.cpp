#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "ibb/error.hpp"
#include "ibb/oracle.hpp"
#include "ibb/synthetic.hpp"

using ibb::WordCollection;
namespace oracle = ibb::oracle;

namespace {

// Rotations of one string with a single '$' (the smallest symbol in ASCII too).
std::string rotation_bwt(const std::string& s) {
  const std::string text = s + "$";
  std::vector<std::string> rotations;
  for (std::size_t i = 0; i < text.size(); ++i) rotations.push_back(text.substr(i) + text.substr(0, i));
  std::sort(rotations.begin(), rotations.end());
  std::string out;
  for (const auto& r : rotations) out.push_back(r.back());
  return out;
}

}  // namespace

TEST_CASE("single words agree with sorted rotations") {
  CHECK(oracle::naive_bwt(WordCollection::from_strings({"ACAACA"})) == rotation_bwt("ACAACA"));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto w = ibb::synthetic::random_collection(rng, 1, 1, 1, 30);
    CHECK(oracle::naive_bwt(w) == rotation_bwt(w.word(0)));
  }
}

TEST_CASE("several words: markers order ties by word index") {
  CHECK(oracle::naive_bwt(WordCollection::from_strings({"A", "A"})) == "AA$$");
  CHECK(oracle::naive_bwt(WordCollection::from_strings({"A", "C"})) == "AC$$");
  CHECK(oracle::naive_bwt(WordCollection::from_strings({"AC", "CA"})) == "CAC$A$");
}

TEST_CASE("rank, count_smaller and LF on a partial transform") {
  const std::string bwt6 = "CTCCGAACCGCCG";
  CHECK(oracle::rank(bwt6, 8, 'C') == 4);
  CHECK(oracle::count_smaller(bwt6, 'C') == 2);
  CHECK(oracle::rank(bwt6, 13, 'G') == 3);
  CHECK(oracle::count_smaller(bwt6, 'T') == 12);
  CHECK(oracle::lf(bwt6, 8) == 6);
  CHECK_THROWS_AS(oracle::rank(bwt6, 14, 'C'), std::out_of_range);
  CHECK_THROWS_AS(oracle::lf(bwt6, 13), std::out_of_range);
  CHECK_THROWS_AS(oracle::count_smaller("AXC", 'C'), std::invalid_argument);
}

TEST_CASE("inversion recovers the words") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto words = ibb::synthetic::random_collection(rng, 1, 12, 1, 25);
    CHECK(oracle::invert(oracle::naive_bwt(words), words.size()) == words);
  }
}

TEST_CASE("inversion rejects strings that are not a transform") {
  CHECK_THROWS_AS(oracle::invert("AC$", 2), ibb::InvalidBwtError);   // wrong marker count
  CHECK_THROWS_AS(oracle::invert("ANC$", 1), ibb::InvalidBwtError);  // bad byte
  CHECK_THROWS_AS(oracle::invert("$A", 1), ibb::InvalidBwtError);    // empty word
  CHECK_THROWS_AS(oracle::invert("A", 0), ibb::InvalidBwtError);
}

TEST_CASE("bucket offsets partition the rows by padded context") {
  const auto words = WordCollection::from_strings({"CG", "GA"});
  // Row contexts: CG$ -> CG, G$ -> GA, GA$ -> GA; A$ and both $ rows -> AA.
  const auto off = oracle::bucket_offsets(words, 4);
  REQUIRE(off.size() == 17);
  CHECK(off[1] == 3);   // AA
  CHECK(off[6] == 3);   // before CG
  CHECK(off[7] == 4);   // through CG
  CHECK(off[8] == 4);   // before GA
  CHECK(off[9] == 6);   // through GA
  CHECK(off[16] == 6);
}

TEST_CASE("splice oracle ends at the full transform") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto words = ibb::synthetic::random_collection(rng, 1, 10, 1, 20);
    oracle::SpliceOracle splice(words);
    std::uint64_t steps = 0;
    while (!splice.done()) {
      CHECK(splice.step() == steps);
      ++steps;
    }
    CHECK(steps == words.max_length() + 1);
    CHECK(splice.current() == oracle::naive_bwt(words));
    CHECK_THROWS_AS(splice.step(), std::logic_error);
  }
}
