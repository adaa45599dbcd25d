#include "ibb/engine.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ibb/error.hpp"

namespace ibb {

std::vector<std::string> check_config(const Config& config, std::uint64_t total_length) {
  ContextShape shape(config.kappa);  // throws outside the hard range
  if (config.threads == 0) throw ConfigError("threads must be at least 1");
  if (config.buffer_bytes < sizeof(std::uint64_t)) throw ConfigError("buffer size must be at least 8 bytes");

  std::vector<std::string> warnings;
  if (shape.kappa() > 19) warnings.push_back("kappa above 19 has not been exercised at scale");
  if (total_length > 1 && shape.kappa() > std::bit_width(total_length - 1))
    warnings.push_back("kappa " + std::to_string(shape.kappa()) + " gives more buckets than symbols (" +
                       std::to_string(total_length) + ")");
  return warnings;
}

StartBitvector::StartBitvector(std::size_t m) : m_(m), bits_((m + 63) / 64), fenwick_(bits_.size() + 1) {}

void StartBitvector::set(std::size_t j) {
  if (j >= m_) throw std::out_of_range("StartBitvector::set");
  if (test(j)) return;
  bits_[j >> 6] |= std::uint64_t{1} << (j & 63);
  ++count_;
  for (std::size_t i = (j >> 6) + 1; i < fenwick_.size(); i += i & (~i + 1)) ++fenwick_[i];
}

std::uint64_t StartBitvector::rank(std::size_t j) const {
  if (j > m_) throw std::out_of_range("StartBitvector::rank");
  std::uint64_t r = 0;
  for (std::size_t i = j >> 6; i > 0; i -= i & (~i + 1)) r += fenwick_[i];
  if (j & 63) r += static_cast<std::uint64_t>(std::popcount(bits_[j >> 6] & ((std::uint64_t{1} << (j & 63)) - 1)));
  return r;
}

IterationState make_iteration_state(const WordCollection& words) {
  IterationState st;
  const std::uint64_t M = words.max_length();
  st.start_offsets.assign(M + 2, 0);
  for (std::size_t j = 0; j < words.size(); ++j) ++st.start_offsets[words.start_iteration(j) + 1];
  for (std::uint64_t t = 0; t <= M; ++t) st.start_offsets[t + 1] += st.start_offsets[t];
  st.start_words.resize(words.size());
  std::vector<std::uint64_t> fill(st.start_offsets.begin(), st.start_offsets.end() - 1);
  for (std::size_t j = 0; j < words.size(); ++j)
    st.start_words[fill[words.start_iteration(j)]++] = static_cast<std::uint32_t>(j);
  return st;
}

void activate_new_words(IterationState& state, StartBitvector& sb, const WordCollection& words, std::uint64_t t) {
  const auto starting = state.starting_at(t);
  if (!starting.empty()) {
    for (std::uint32_t j : starting) sb.set(j);
    std::vector<ActiveWord> fresh;
    fresh.reserve(starting.size());
    for (std::uint32_t j : starting) fresh.push_back({sb.rank(j), 0, j, words.symbol_at(j, t)});
    state.active.insert(state.active.begin(), fresh.begin(), fresh.end());
  }
  state.t = t;
  state.alpha = state.active.size();
}

void stable_radix_step(std::vector<ActiveWord>& active, std::vector<ActiveWord>& scratch) {
  std::array<std::size_t, 5> offset{};
  for (const ActiveWord& w : active)
    if (is_base(w.symbol)) ++offset[code(w.symbol) + 1];
  for (unsigned c = 0; c < 4; ++c) offset[c + 1] += offset[c];
  scratch.resize(offset[4]);
  for (const ActiveWord& w : active)
    if (is_base(w.symbol)) scratch[offset[code(w.symbol)]++] = w;
  active.swap(scratch);
}

std::vector<ActiveWord> stable_radix_step(std::span<const ActiveWord> active) {
  std::vector<ActiveWord> list(active.begin(), active.end()), scratch;
  stable_radix_step(list, scratch);
  return list;
}

std::uint64_t next_insert_position(Symbol context_head, Symbol inserted, const TreeArray& tree,
                                   const Accumulator& r, std::uint64_t rank_k, std::uint64_t alpha_next) {
  if (!is_base(inserted)) throw std::invalid_argument("next_insert_position: word already finished");
  // The end-marker rows sit at the front of the A-tree, ahead of every suffix
  // starting with A.
  const std::uint64_t markers = inserted == Symbol::A ? alpha_next : 0;
  return markers + tree.level1_base(context_head, inserted) + r[inserted] + rank_k;
}

IterationPlan plan_iteration(std::span<const ActiveWord> active, const ContextShape& shape) {
  IterationPlan plan;
  for (unsigned x = 0; x < 4; ++x) {
    plan.tree_begin[x + 1] = static_cast<std::size_t>(
        std::partition_point(active.begin(), active.end(),
                             [&](const ActiveWord& w) { return code(shape.first(w.context)) <= x; }) -
        active.begin());
  }
  for (std::size_t i = 0; i < active.size(); ++i) {
    const ActiveWord& w = active[i];
    if (is_base(w.symbol)) ++plan.per_tree[code(shape.first(w.context))][w.symbol];
    const std::uint64_t leaf = shape.leaf(w.context);
    if (plan.groups.empty() || plan.groups.back().leaf != leaf) plan.groups.push_back({leaf, i, i});
    plan.groups.back().end = i + 1;
  }
  return plan;
}

namespace {

struct LeafJob {
  Symbol tree;
  LeafBatch batch;
  std::uint64_t base;
};

}  // namespace

void build(const WordCollection& words, const Config& config, std::ostream& out, BuildReport* report,
           const IterationObserver& observer) {
  const auto started = std::chrono::steady_clock::now();
  check_config(config, words.total_length());

  const ContextShape shape(config.kappa);
  TreeArray tree(config.kappa);
  BucketStore store({config.kappa, config.backend, config.tmp_dir, config.buffer_bytes, config.byte_files});
  WorkerPool pool(config.threads);
  IterationState state = make_iteration_state(words);
  StartBitvector sb(words.size());

  std::vector<ActiveWord> scratch;
  std::vector<std::uint64_t> rank_k;
  std::vector<LeafJob> jobs;
  const std::uint64_t M = words.max_length();

  for (std::uint64_t t = 0; t <= M; ++t) {
    activate_new_words(state, sb, words, t);
    const bool last = t == M;
    const std::uint64_t alpha_next = last ? 0 : state.alpha + state.starting_at(t + 1).size();
    auto& active = state.active;

    const IterationPlan plan = plan_iteration(active, shape);
    tree.update_prefix_totals(plan.per_tree);

    jobs.clear();
    for (unsigned x = 0; x < 4; ++x) {
      const std::size_t begin = plan.tree_begin[x];
      const auto slice = std::span<const ActiveWord>(active).subspan(begin, plan.tree_begin[x + 1] - begin);
      for (LeafBatch& b : tree.descend(from_code(x), slice)) {
        // End markers are not counted in the tree, so in the final iteration
        // the markers inserted further left in this tree are added here.
        const std::uint64_t base = local_position_base(b.r) + (last ? b.begin : 0);
        b.begin += begin;
        b.end += begin;
        jobs.push_back({from_code(x), b, base});
      }
    }

    rank_k.assign(active.size(), 0);
    auto run_job = [&](std::size_t i) {
      const LeafJob& job = jobs[i];
      const std::size_t n = job.batch.end - job.batch.begin;
      auto entries = std::span(active).subspan(job.batch.begin, n);
      auto ranks = std::span(rank_k).subspan(job.batch.begin, n);
      store.merge_insert(job.batch.leaf, job.base, entries, ranks);
      if (last) return;
      for (std::size_t e = 0; e < n; ++e) {
        ActiveWord& w = entries[e];
        w.position = next_insert_position(job.tree, w.symbol, tree, job.batch.r, ranks[e], alpha_next);
        w.context = shape.push(w.context, w.symbol);
      }
    };
    if (active.size() >= config.parallel_min_active) {
      pool.parallel_for(jobs.size(), run_job);
    } else {
      for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    }

    if (last) {
      active.clear();
    } else {
      stable_radix_step(active, scratch);
      for (ActiveWord& w : active)
        w.symbol = t + 1 == M ? Symbol::Dollar : words.base(w.word, M - 2 - t);
    }
    if (observer) observer({t, state.alpha, tree, store, active});
  }

  store.assemble(out, words.total_length());
  if (report) {
    report->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report->iterations = M + 1;
    report->total_length = words.total_length();
    report->io = store.stats();
  }
}

std::string build(const WordCollection& words, const Config& config, BuildReport* report,
                  const IterationObserver& observer) {
  std::ostringstream out;
  build(words, config, out, report, observer);
  return std::move(out).str();
}

}  // namespace ibb
