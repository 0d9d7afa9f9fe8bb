#include "monet/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <variant>

#include "monet/channel.hpp"
#include "monet/error.hpp"
#include "monet/rng.hpp"

namespace monet {

std::vector<SpanningTree> worker_generate_trees(const WeightedGraph& g, std::size_t count,
                                                const SeedStream& stream) {
  if (count < 1) throw Error(ErrorCode::kInvalidParameter, "worker_generate_trees: count must be >= 1");
  std::vector<SpanningTree> trees;
  trees.reserve(count);
  for (std::size_t i = 0; i < count; ++i) trees.push_back(random_spanning_tree(g, stream.seed_for(i)));
  return trees;
}

std::string_view to_string(VerificationKind kind) {
  return kind == VerificationKind::kMixingCover ? "mixing-cover" : "parallel-cover";
}

std::size_t default_round_cap(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;  // ⌈log₂ n⌉
  return bits + 1;
}

bool run_verification(const WeightedGraph& overlay, const VerificationConfig& config,
                      std::uint64_t seed, std::vector<CoverReport>* reports) {
  const std::size_t n = overlay.vertex_count();
  const std::size_t reps = std::max<std::size_t>(config.repetitions, 1);
  bool all = true;
  for (std::size_t r = 0; r < reps; ++r) {
    const std::uint64_t rep_seed = derive_seed(seed, r, seed_domain::kVerify);
    CoverReport report;
    if (config.kind == VerificationKind::kMixingCover) {
      report = mixing_cover_test(overlay, rep_seed, config.cover);
    } else {
      const double ln_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
      const std::size_t count = config.walk_count ? config.walk_count : 4 * n;
      const std::size_t length =
          config.walk_length ? config.walk_length : static_cast<std::size_t>(std::ceil(4.0 * ln_n));
      report = parallel_cover_test(overlay, count, length, rep_seed, config.cover.weighted);
    }
    all = all && report.success;
    if (reports) reports->push_back(std::move(report));
  }
  return all;
}

namespace {

struct WorkOrder {
  std::size_t first_index = 0;
  std::size_t count = 0;
};
struct Stop {};
using WorkerMessage = std::variant<WorkOrder, Stop>;

struct TreeBatch {
  std::size_t worker = 0;
  std::size_t first_index = 0;
  std::vector<SpanningTree> trees;
  std::exception_ptr failure;
};

// Logical worker units, each a thread with its own inbox. Replies go to the
// controller's shared inbox.
class WorkerPool {
 public:
  WorkerPool(const WeightedGraph& g, std::uint64_t master, std::size_t workers)
      : inboxes_(workers) {
    for (std::size_t w = 0; w < workers; ++w) {
      threads_.emplace_back([this, &g, master, w] {
        while (true) {
          WorkerMessage message = inboxes_[w].receive();
          if (std::holds_alternative<Stop>(message)) return;
          const auto order = std::get<WorkOrder>(message);
          TreeBatch batch;
          batch.worker = w;
          batch.first_index = order.first_index;
          try {
            batch.trees = worker_generate_trees(g, order.count, {master, order.first_index});
          } catch (...) {
            batch.failure = std::current_exception();
          }
          replies_.send(std::move(batch));
        }
      });
    }
  }

  ~WorkerPool() {
    for (auto& inbox : inboxes_) inbox.send(Stop{});
    for (auto& t : threads_) t.join();
  }

  std::size_t size() const noexcept { return inboxes_.size(); }
  void dispatch(std::size_t worker, WorkOrder order) { inboxes_[worker].send(order); }
  TreeBatch collect() { return replies_.receive(); }

 private:
  std::vector<Channel<WorkerMessage>> inboxes_;
  Channel<TreeBatch> replies_;
  std::vector<std::thread> threads_;
};

}  // namespace

BuildOrchestration orchestrate_build(std::shared_ptr<const WeightedGraph> g,
                                     const BuildConfig& config) {
  if (config.workers < 1) throw Error(ErrorCode::kInvalidParameter, "orchestrate_build: workers must be >= 1");
  if (g->vertex_count() < 2) {
    throw Error(ErrorCode::kDegenerateGraph, "orchestrate_build needs at least 2 vertices");
  }
  g->require_connected("orchestrate_build");

  const std::size_t cap = config.round_cap.value_or(default_round_cap(g->vertex_count()));
  if (cap < 1) throw Error(ErrorCode::kInvalidParameter, "orchestrate_build: round cap must be >= 1");

  std::optional<EdgeStatistics> stats;
  if (config.mode == WeightMode::kResistanceScaled) stats = edge_statistics(*g);

  OverlayAccumulator acc(g);
  std::vector<BuildRound> rounds;
  bool success = false;
  {
    WorkerPool pool(*g, config.seed, config.workers);
    std::size_t k = 1;
    std::size_t next_index = 0;
    for (std::size_t round = 1; round <= cap; ++round, k *= 2) {
      BuildRound record;
      record.round = round;
      record.requested = k;
      record.per_worker.assign(pool.size(), 0);

      // Contiguous index blocks; the first (k mod workers) workers take one extra.
      std::size_t expected = 0;
      std::size_t cursor = next_index;
      for (std::size_t w = 0; w < pool.size(); ++w) {
        const std::size_t share = k / pool.size() + (w < k % pool.size() ? 1 : 0);
        if (share == 0) continue;
        pool.dispatch(w, {cursor, share});
        cursor += share;
        ++expected;
      }

      std::vector<TreeBatch> batches;
      std::exception_ptr failure;
      for (std::size_t i = 0; i < expected; ++i) {
        TreeBatch batch = pool.collect();
        if (batch.failure && !failure) failure = batch.failure;
        batches.push_back(std::move(batch));
      }
      if (failure) std::rethrow_exception(failure);

      // Serial barrier: merge in index order, then verify.
      std::sort(batches.begin(), batches.end(),
                [](const TreeBatch& a, const TreeBatch& b) { return a.first_index < b.first_index; });
      for (const auto& batch : batches) {
        record.per_worker[batch.worker] += batch.trees.size();
        record.returned += batch.trees.size();
        for (const auto& tree : batch.trees) acc.add(tree);
      }
      next_index = cursor;
      record.total_trees = acc.tree_count();

      const OverlayGraph current = acc.finish(WeightMode::kPlain, config.seed);
      record.distinct_edges = current.distinct_edge_count();
      record.passed = run_verification(current.graph(), config.verification,
                                       derive_seed(config.seed, round, seed_domain::kVerify),
                                       &record.verification);
      rounds.push_back(std::move(record));
      if (rounds.back().passed) {
        success = true;
        break;
      }
    }
  }

  BuildOrchestration result{
      config.workers, config.seed, cap, std::move(rounds), acc.tree_count(), success, {},
      acc.finish(config.mode, config.seed, stats ? &*stats : nullptr)};
  if (!success) {
    result.diagnostics = "verification (" + std::string(to_string(config.verification.kind)) +
                         ") did not pass within " + std::to_string(cap) + " rounds; " +
                         std::to_string(result.total_trees) + " trees, " +
                         std::to_string(result.overlay.distinct_edge_count()) + " distinct edges";
  }
  return result;
}

}  // namespace monet
