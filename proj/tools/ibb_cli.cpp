// ibb: build, check and invert multi-string BWTs of DNA collections.

#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ibb/collection.hpp"
#include "ibb/engine.hpp"
#include "ibb/error.hpp"
#include "ibb/oracle.hpp"
#include "ibb/synthetic.hpp"

namespace {

struct Options {
  std::string input;
  std::string output;
  ibb::Config config;
  ibb::IngestPolicy policy;
  std::string report = "text";
  std::uint64_t max_oracle_symbols = 1'000'000;
  std::int64_t corrupt_at = -1;
  unsigned kappa_min = 3;
  unsigned kappa_max = 8;
  std::uint64_t synthetic = 0;
  std::size_t synthetic_read_length = 150;
  unsigned seeds = 200;
  std::uint64_t seed = 1;
};

long peak_rss_kib() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return -1;
  return usage.ru_maxrss;
}

ibb::WordCollection load(const Options& o) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw ibb::IoError("cannot open input " + o.input);
  return ibb::parse_sequences(in, o.policy);
}

void print_warnings(const ibb::Config& c, std::uint64_t total_length) {
  for (const auto& w : ibb::check_config(c, total_length)) std::cerr << "warning: " << w << '\n';
}

void add_build_options(CLI::App& cmd, Options& o) {
  const std::map<std::string, ibb::Backend> backends{{"external", ibb::Backend::External},
                                                     {"memory", ibb::Backend::Memory}};
  const std::map<std::string, ibb::AmbiguousHandling> ambiguous{{"drop-char", ibb::AmbiguousHandling::DropChar},
                                                                {"drop-record", ibb::AmbiguousHandling::DropRecord},
                                                                {"fail", ibb::AmbiguousHandling::Fail}};
  const std::map<std::string, ibb::InputFormat> formats{{"auto", ibb::InputFormat::Auto},
                                                        {"fasta", ibb::InputFormat::Fasta},
                                                        {"fastq", ibb::InputFormat::Fastq},
                                                        {"raw", ibb::InputFormat::RawLines}};
  cmd.add_option("--kappa", o.config.kappa, "2k: tree depth / bucket granularity (odd = half level)")
      ->capture_default_str();
  cmd.add_option("--threads", o.config.threads, "worker threads")->capture_default_str();
  cmd.add_option("--tmp-dir", o.config.tmp_dir, "directory for bucket files")->capture_default_str();
  cmd.add_option("--backend", o.config.backend, "bucket storage")
      ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case))
      ->default_str("external");
  cmd.add_option("--ambiguous", o.policy.ambiguous, "handling of N and other IUPAC codes")
      ->transform(CLI::CheckedTransformer(ambiguous, CLI::ignore_case))
      ->default_str("drop-char");
  cmd.add_option("--format", o.policy.format, "input format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("auto");
  cmd.add_option("--buffer-bytes", o.config.buffer_bytes, "stream buffer per bucket file")->capture_default_str();
  cmd.add_flag("--byte-files", o.config.byte_files, "store one letter per symbol in bucket files (debugging)");
  cmd.add_option("--report", o.report, "report format")->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();
}

int cmd_build(const Options& o) {
  const auto words = load(o);
  print_warnings(o.config, words.total_length());
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw ibb::IoError("cannot open output " + o.output);
  ibb::BuildReport report;
  ibb::build(words, o.config, out, &report);
  out.close();
  if (!out) throw ibb::IoError("writing " + o.output + " failed");

  const std::uint64_t io = report.io.bytes_read + report.io.bytes_written;
  if (o.report == "tsv") {
    std::cout << "words\ttotal_length\tkappa\tseconds\tpeak_rss_kib\tio_in\tio_out\tio_total\n"
              << words.size() << '\t' << report.total_length << '\t' << o.config.kappa << '\t' << report.seconds
              << '\t' << peak_rss_kib() << '\t' << report.io.bytes_read << '\t' << report.io.bytes_written << '\t'
              << io << '\n';
  } else {
    std::cout << "words:        " << words.size() << '\n'
              << "symbols:      " << report.total_length << '\n'
              << "kappa:        " << o.config.kappa << '\n'
              << "wall time:    " << report.seconds << " s\n";
    if (const long rss = peak_rss_kib(); rss >= 0)
      std::cout << "peak memory:  " << rss << " KiB\n";
    else
      std::cout << "peak memory:  not available on this platform\n";
    std::cout << "bucket io:    " << report.io.bytes_read << " B in, " << report.io.bytes_written << " B out\n";
  }
  return 0;
}

std::int64_t first_difference(const std::string& a, const std::string& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return static_cast<std::int64_t>(i);
  return a.size() == b.size() ? -1 : static_cast<std::int64_t>(n);
}

int cmd_verify(const Options& o) {
  const auto words = load(o);
  if (words.total_length() > o.max_oracle_symbols) {
    std::cerr << "error: " << words.total_length() << " symbols exceed --max-oracle-symbols "
              << o.max_oracle_symbols << '\n';
    return 2;
  }
  print_warnings(o.config, words.total_length());
  std::string built = ibb::build(words, o.config);
  if (o.corrupt_at >= 0 && static_cast<std::size_t>(o.corrupt_at) < built.size())
    built[static_cast<std::size_t>(o.corrupt_at)] = built[static_cast<std::size_t>(o.corrupt_at)] == 'A' ? 'C' : 'A';

  int failures = 0;
  const std::string expected = ibb::oracle::naive_bwt(words);
  if (const auto diff = first_difference(built, expected); diff < 0) {
    std::cout << "PASS oracle-equality (" << built.size() << " symbols)\n";
  } else {
    std::cout << "FAIL oracle-equality: first difference at offset " << diff << '\n';
    ++failures;
  }
  try {
    if (ibb::oracle::invert(built, words.size()) == words) {
      std::cout << "PASS inversion\n";
    } else {
      std::cout << "FAIL inversion: recovered words differ from the input\n";
      ++failures;
    }
  } catch (const ibb::InvalidBwtError& e) {
    std::cout << "FAIL inversion: " << e.what() << '\n';
    ++failures;
  }
  return failures ? 1 : 0;
}

int cmd_invert(const Options& o) {
  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw ibb::IoError("cannot open input " + o.input);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string bwt = std::move(buf).str();
  while (!bwt.empty() && (bwt.back() == '\n' || bwt.back() == '\r')) bwt.pop_back();
  const auto m = static_cast<std::size_t>(std::count(bwt.begin(), bwt.end(), '$'));
  const auto words = ibb::oracle::invert(bwt, m);
  if (o.output.empty() || o.output == "-") {
    ibb::write_raw_lines(words, std::cout);
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw ibb::IoError("cannot open output " + o.output);
    ibb::write_raw_lines(words, out);
  }
  return 0;
}

int cmd_bench(const Options& o) {
  ibb::WordCollection words;
  if (o.synthetic) {
    std::mt19937_64 rng(o.seed);
    words = ibb::synthetic::read_set(rng, o.synthetic, o.synthetic_read_length);
  } else {
    words = load(o);
  }
  if (o.kappa_min > o.kappa_max) throw ibb::ConfigError("--kappa-min exceeds --kappa-max");
  std::cout << "kappa\tk\tbuckets\tseconds\tio_in\tio_out\tio_total\n";
  for (unsigned kappa = o.kappa_min; kappa <= o.kappa_max; ++kappa) {
    ibb::Config c = o.config;
    c.kappa = kappa;
    print_warnings(c, words.total_length());
    ibb::BuildReport report;
    std::ofstream sink("/dev/null", std::ios::binary);
    ibb::build(words, c, sink, &report);
    std::cout << kappa << '\t' << kappa / 2.0 << '\t' << (std::uint64_t{1} << kappa) << '\t' << report.seconds
              << '\t' << report.io.bytes_read << '\t' << report.io.bytes_written << '\t'
              << report.io.bytes_read + report.io.bytes_written << '\n';
  }
  return 0;
}

int cmd_selftest(const Options& o) {
  std::mt19937_64 rng(o.seed);
  unsigned failures = 0;
  for (unsigned s = 0; s < o.seeds; ++s) {
    const auto words = ibb::synthetic::random_collection(rng, 1, 25, 1, 40);
    const std::string expected = ibb::oracle::naive_bwt(words);
    for (unsigned kappa = 3; kappa <= 8; ++kappa) {
      ibb::Config c = o.config;
      c.kappa = kappa;
      if (ibb::build(words, c) != expected) {
        ++failures;
        std::cout << "FAIL collection " << s << " kappa " << kappa << '\n';
      }
    }
  }
  std::cout << (failures ? "FAIL" : "PASS") << " selftest: " << o.seeds << " collections x 6 kappa values, "
            << failures << " mismatches\n";
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ibb: Burrows-Wheeler transform of DNA collections with diverse word lengths"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "construct the BWT of a sequence file");
  build->add_option("--input,-i", o.input, "FASTA, FASTQ or one sequence per line")->required();
  build->add_option("--output,-o", o.output, "BWT output (ASCII over ACGT$)")->required();
  add_build_options(*build, o);

  auto* verify = app.add_subcommand("verify", "build, compare with the brute-force transform, invert");
  verify->add_option("--input,-i", o.input)->required();
  verify->add_option("--max-oracle-symbols", o.max_oracle_symbols, "refuse larger inputs")->capture_default_str();
  verify->add_option("--inject-corruption", o.corrupt_at, "flip one output byte before checking")
      ->group("");
  add_build_options(*verify, o);

  auto* invert = app.add_subcommand("invert", "recover the words from a BWT file");
  invert->add_option("--input,-i", o.input)->required();
  invert->add_option("--output,-o", o.output, "one word per line; '-' for stdout");

  auto* bench = app.add_subcommand("bench", "sweep kappa and report time and bucket I/O as TSV");
  auto* bench_input = bench->add_option("--input,-i", o.input);
  bench->add_option("--synthetic", o.synthetic, "generate this many random read bases instead of reading input")
      ->excludes(bench_input);
  bench->add_option("--read-length", o.synthetic_read_length)->capture_default_str();
  bench->add_option("--seed", o.seed)->capture_default_str();
  bench->add_option("--kappa-min", o.kappa_min)->capture_default_str();
  bench->add_option("--kappa-max", o.kappa_max)->capture_default_str();
  add_build_options(*bench, o);

  auto* selftest = app.add_subcommand("selftest", "randomized comparison against the brute-force transform");
  selftest->add_option("--seeds", o.seeds, "random collections to check")->capture_default_str();
  selftest->add_option("--seed", o.seed)->capture_default_str();
  add_build_options(*selftest, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o);
    if (*invert) return cmd_invert(o);
    if (*bench) {
      if (o.input.empty() && !o.synthetic) throw ibb::ConfigError("bench needs --input or --synthetic");
      return cmd_bench(o);
    }
    if (*selftest) {
      o.config.backend = ibb::Backend::Memory;
      return cmd_selftest(o);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
