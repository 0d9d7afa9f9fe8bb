#include "monet/verifier.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "monet/error.hpp"
#include "monet/rng.hpp"
#include "monet/spanning_tree.hpp"
#include "monet/walk.hpp"

namespace monet {

std::string_view to_string(NeighborRule rule) {
  return rule == NeighborRule::kCurrentVertex ? "current-vertex" : "accumulated-set";
}

std::uint64_t cover_length_cap(std::size_t n, double cap_factor) {
  if (n < 2) return 0;
  const double nn = static_cast<double>(n);
  return static_cast<std::uint64_t>(std::floor(cap_factor * nn * std::log(nn)));
}

CoverReport mixing_cover_test(const WeightedGraph& overlay, std::uint64_t seed,
                              const CoverOptions& options) {
  if (!(options.cap_factor > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "mixing_cover_test: cap_factor must be > 0");
  }
  const std::size_t n = overlay.vertex_count();
  if (n == 0) throw Error(ErrorCode::kDegenerateGraph, "mixing_cover_test: empty graph");
  overlay.require_connected("mixing_cover_test");

  CoverReport report;
  report.vertex_count = n;
  report.rule = options.rule;
  report.weighted = options.weighted;
  report.cap_factor = options.cap_factor;
  report.length_cap = cover_length_cap(n, options.cap_factor);

  Rng rng(seed);
  const WalkStepper stepper(overlay, options.weighted);
  std::vector<char> visited(n, 0);
  Vertex current = static_cast<Vertex>(rng.below(n));
  const Vertex start = current;

  // Γ' accumulated over visited vertices, for the literal neighbour-set rule.
  std::vector<Vertex> frontier;
  std::vector<char> in_frontier;
  if (options.rule == NeighborRule::kAccumulatedSet) in_frontier.assign(n, 0);

  std::size_t counter = 0;
  std::uint64_t steps = 0;
  while (true) {
    if (!visited[current]) {
      visited[current] = 1;
      ++counter;
      if (options.rule == NeighborRule::kAccumulatedSet) {
        for (const auto& inc : overlay.neighbors(current)) {
          if (!in_frontier[inc.neighbor]) {
            in_frontier[inc.neighbor] = 1;
            frontier.push_back(inc.neighbor);
          }
        }
      }
    }
    if (counter == n || steps >= report.length_cap) break;
    if (options.rule == NeighborRule::kCurrentVertex) {
      current = stepper.step(current, rng).neighbor;
    } else {
      current = frontier[rng.below(frontier.size())];
    }
    ++steps;
  }

  report.visited_count = counter;
  report.walk_length = steps;
  report.success = counter == n;
  report.walks.push_back({start, steps, counter});
  return report;
}

CoverReport mixing_cover_test(const OverlayGraph& overlay, std::uint64_t seed,
                              const CoverOptions& options) {
  return mixing_cover_test(overlay.graph(), seed, options);
}

CoverReport parallel_cover_test(const WeightedGraph& overlay, std::size_t walk_count,
                                std::size_t walk_length, std::uint64_t seed, bool weighted) {
  if (walk_count < 1 || walk_length < 1) {
    throw Error(ErrorCode::kInvalidParameter,
                "parallel_cover_test: walk_count and walk_length must be >= 1");
  }
  const std::size_t n = overlay.vertex_count();
  if (n == 0) throw Error(ErrorCode::kDegenerateGraph, "parallel_cover_test: empty graph");
  overlay.require_connected("parallel_cover_test");

  CoverReport report;
  report.parallel = true;
  report.vertex_count = n;
  report.weighted = weighted;
  report.walk_length = walk_length;
  report.length_cap = walk_length;

  const WalkStepper stepper(overlay, weighted);
  std::vector<char> covered(n, 0);
  std::vector<std::uint32_t> seen_by(n, std::numeric_limits<std::uint32_t>::max());
  std::size_t total = 0;
  for (std::size_t w = 0; w < walk_count; ++w) {
    // Each walk owns a derived seed, so walks could run in any order.
    Rng rng(derive_seed(seed, w, seed_domain::kVerify));
    Vertex current = static_cast<Vertex>(rng.below(n));
    WalkDetail detail{current, 0, 0};
    auto mark = [&](Vertex v) {
      if (seen_by[v] != w) {
        seen_by[v] = static_cast<std::uint32_t>(w);
        ++detail.visited;
      }
      if (!covered[v]) {
        covered[v] = 1;
        ++total;
      }
    };
    mark(current);
    if (n > 1) {
      for (std::size_t s = 0; s < walk_length; ++s) {
        current = stepper.step(current, rng).neighbor;
        mark(current);
      }
      detail.length = walk_length;
    }
    report.walks.push_back(detail);
  }
  report.visited_count = total;
  report.success = total == n;
  return report;
}

CoverReport parallel_cover_test(const OverlayGraph& overlay, std::size_t walk_count,
                                std::size_t walk_length, std::uint64_t seed, bool weighted) {
  return parallel_cover_test(overlay.graph(), walk_count, walk_length, seed, weighted);
}

// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd dense_laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    lap(e.u, e.u) += e.weight;
    lap(e.v, e.v) += e.weight;
    lap(e.u, e.v) -= e.weight;
    lap(e.v, e.u) -= e.weight;
  }
  return lap;
}

}  // namespace

SpectralReport spectral_approximation_check(const WeightedGraph& base, const WeightedGraph& approx,
                                            bool resistance_scaled, const SpectralOptions& options) {
  const std::size_t n = base.vertex_count();
  if (approx.vertex_count() != n) {
    throw Error(ErrorCode::kInvalidParameter, "spectral check: vertex counts differ");
  }
  if (n < 2) throw Error(ErrorCode::kDegenerateGraph, "spectral check needs at least 2 vertices");
  base.require_connected("spectral_approximation_check");
  const double lower_eps = 1.0 / std::sqrt(static_cast<double>(n));
  if (!(options.epsilon >= lower_eps && options.epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "spectral check: epsilon must lie in [1/sqrt(n), 1] = [" +
                    std::to_string(lower_eps) + ", 1]");
  }

  SpectralReport report;
  report.epsilon = options.epsilon;
  report.probes_requested = options.probes;
  report.resistance_scaled = resistance_scaled;
  if (!resistance_scaled) {
    report.notes.emplace_back(
        "overlay uses plain weights; the approximation guarantee assumes resistance-scaled sampling");
  }

  Rng rng(derive_seed(options.seed, 0, seed_domain::kProbe));
  std::vector<double> x(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < options.probes; ++p) {
    double mean = 0.0;
    for (auto& xi : x) {
      xi = rng.normal();
      mean += xi;
    }
    mean /= static_cast<double>(n);
    double norm = 0.0;
    for (auto& xi : x) {
      xi -= mean;
      norm += xi * xi;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& xi : x) xi /= norm;
    }
    const double q_base = laplacian_quadratic_form(base, x);
    if (!(q_base >= 1e-12)) {
      ++report.probes_skipped;
      report.notes.push_back("probe " + std::to_string(p) +
                             " skipped: x^T L x below 1e-12 (numerical null space)");
      continue;
    }
    const double ratio = laplacian_quadratic_form(approx, x) / q_base;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    ++report.probes_used;
  }
  if (report.probes_used > 0) {
    report.ratio_min = lo;
    report.ratio_max = hi;
  }

  bool ok = report.probes_used > 0 && lo >= 1.0 - options.epsilon && hi <= 1.0 + options.epsilon;

  if (n <= options.exact_limit) {
    // Restrict both pencils to the complement of the all-ones vector, where
    // the base Laplacian of a connected graph is positive definite.
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(nn, 1, 1.0 / std::sqrt(static_cast<double>(n)));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
    const Eigen::MatrixXd full_q = qr.householderQ() * Eigen::MatrixXd::Identity(nn, nn);
    const Eigen::MatrixXd basis = full_q.rightCols(nn - 1);
    const Eigen::MatrixXd reduced_base = basis.transpose() * dense_laplacian(base) * basis;
    const Eigen::MatrixXd reduced_approx = basis.transpose() * dense_laplacian(approx) * basis;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        reduced_approx, reduced_base, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (solver.info() == Eigen::Success) {
      report.has_eigen_extremes = true;
      report.eigen_min = solver.eigenvalues().minCoeff();
      report.eigen_max = solver.eigenvalues().maxCoeff();
      ok = ok && report.eigen_min >= 1.0 - options.epsilon &&
           report.eigen_max <= 1.0 + options.epsilon;
    } else {
      report.notes.emplace_back("generalised eigensolver did not converge; probes only");
    }
  }
  report.pass = ok;
  return report;
}

SpectralReport spectral_approximation_check(const WeightedGraph& base, const OverlayGraph& overlay,
                                            const SpectralOptions& options) {
  return spectral_approximation_check(base, overlay.graph(),
                                      overlay.mode() == WeightMode::kResistanceScaled, options);
}

// ---------------------------------------------------------------------------

CutApproximationReport cut_approximation_check(const WeightedGraph& base,
                                               const WeightedGraph& overlay, double alpha,
                                               std::size_t cap) {
  const std::size_t n = base.vertex_count();
  if (overlay.vertex_count() != n) {
    throw Error(ErrorCode::kInvalidParameter, "cut check: vertex counts differ");
  }
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidParameter, "cut check: alpha must be > 0");
  if (n < 2) throw Error(ErrorCode::kDegenerateGraph, "cut check needs at least 2 vertices");
  if (n > cap || n > 63) {
    throw Error(ErrorCode::kSizeCap, "cut check enumerates 2^n cuts; n=" + std::to_string(n) +
                                         " exceeds the cap of " +
                                         std::to_string(std::min<std::size_t>(cap, 63)));
  }
  base.require_connected("cut_approximation_check");

  auto masks = [n](const WeightedGraph& g) {
    std::vector<unsigned long long> adj(n, 0);
    for (const auto& e : g.edges()) {
      adj[e.u] |= 1ull << e.v;
      adj[e.v] |= 1ull << e.u;
    }
    return adj;
  };
  const auto base_adj = masks(base);
  const auto over_adj = masks(overlay);

  const double scale = alpha * std::log(static_cast<double>(n));
  CutApproximationReport report;
  report.alpha = alpha;
  double best = std::numeric_limits<double>::infinity();
  unsigned long long best_mask = 0;
  long long base_cut = 0, over_cut = 0;
  std::size_t best_base = 0, best_over = 0;

  // ∂A = ∂(V∖A), so only sets avoiding vertex n−1 are enumerated.
  detail::for_each_subset_gray(n - 1, [&](unsigned long long mask, std::size_t bit, bool added) {
    const unsigned long long others = mask & ~(1ull << bit);
    const long long db = std::popcount(base_adj[bit]) - 2 * std::popcount(base_adj[bit] & others);
    const long long dov = std::popcount(over_adj[bit]) - 2 * std::popcount(over_adj[bit] & others);
    base_cut += added ? db : -db;
    over_cut += added ? dov : -dov;
    ++report.cuts_checked;
    const double ratio = static_cast<double>(over_cut) * scale / static_cast<double>(base_cut);
    if (ratio < best) {
      best = ratio;
      best_mask = mask;
      best_base = static_cast<std::size_t>(base_cut);
      best_over = static_cast<std::size_t>(over_cut);
    }
  });

  report.min_ratio = best;
  for (std::size_t v = 0; v < n; ++v) {
    if ((best_mask >> v) & 1ull) report.witness.push_back(static_cast<Vertex>(v));
  }
  report.witness_base_boundary = best_base;
  report.witness_overlay_boundary = best_over;
  report.pass = best >= 1.0;
  return report;
}

CutApproximationReport cut_approximation_check(const WeightedGraph& base,
                                               const OverlayGraph& overlay, double alpha,
                                               std::size_t cap) {
  return cut_approximation_check(base, overlay.graph(), alpha, cap);
}

// ---------------------------------------------------------------------------

void enumerate_spanning_trees(const WeightedGraph& g,
                              const std::function<void(std::span<const EdgeId>, double)>& visit) {
  const std::size_t n = g.vertex_count();
  if (n > kTreeEnumerationCap) {
    throw Error(ErrorCode::kSizeCap, "spanning tree enumeration is limited to n <= " +
                                         std::to_string(kTreeEnumerationCap));
  }
  if (n < 2) throw Error(ErrorCode::kDegenerateGraph, "tree enumeration needs at least 2 vertices");
  const std::size_t m = g.edge_count();

  // Include/exclude backtracking over edges with an undoable union-find
  // (union by size, no path compression).
  std::vector<Vertex> parent(n);
  std::vector<std::size_t> size(n, 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<EdgeId> chosen;
  chosen.reserve(n - 1);

  std::function<void(EdgeId, double)> recurse = [&](EdgeId next, double weight) {
    if (chosen.size() == n - 1) {
      visit(chosen, weight);
      return;
    }
    if (m - next < (n - 1) - chosen.size()) return;
    const auto& e = g.edge(next);
    Vertex a = find(e.u), b = find(e.v);
    if (a != b) {
      if (size[a] < size[b]) std::swap(a, b);
      parent[b] = a;
      size[a] += size[b];
      chosen.push_back(next);
      recurse(next + 1, weight * e.weight);
      chosen.pop_back();
      size[a] -= size[b];
      parent[b] = b;
    }
    recurse(next + 1, weight);
  };
  recurse(0, 1.0);
}

NegativeCorrelationReport negative_correlation_test(const WeightedGraph& g, std::size_t samples,
                                                    std::uint64_t seed) {
  g.require_connected("negative_correlation_test");
  const std::size_t m = g.edge_count();
  NegativeCorrelationReport report;
  report.samples = samples;

  std::vector<double> exact_marginal(m, 0.0);
  std::vector<double> exact_joint(m * m, 0.0);
  double total = 0.0;
  enumerate_spanning_trees(g, [&](std::span<const EdgeId> edges, double weight) {
    ++report.trees_enumerated;
    total += weight;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      exact_marginal[edges[i]] += weight;
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        exact_joint[edges[i] * m + edges[j]] += weight;
      }
    }
  });
  for (auto& p : exact_marginal) p /= total;
  for (auto& p : exact_joint) p /= total;

  std::vector<std::uint64_t> count(m, 0);
  std::vector<std::uint64_t> joint_count(m * m, 0);
  for (std::size_t s = 0; s < samples; ++s) {
    auto edges = random_spanning_tree(g, tree_seed(seed, s)).sorted_edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      ++count[edges[i]];
      for (std::size_t j = i + 1; j < edges.size(); ++j) ++joint_count[edges[i] * m + edges[j]];
    }
  }
  const double denom = samples > 0 ? static_cast<double>(samples) : 1.0;
  report.exact_marginal = exact_marginal;
  report.empirical_marginal.resize(m);
  for (std::size_t e = 0; e < m; ++e) report.empirical_marginal[e] = static_cast<double>(count[e]) / denom;

  report.exact_holds = true;
  report.max_exact_excess = -std::numeric_limits<double>::infinity();
  report.max_empirical_excess = -std::numeric_limits<double>::infinity();
  for (EdgeId e = 0; e < m; ++e) {
    for (EdgeId f = e + 1; f < m; ++f) {
      EdgePairCorrelation pair;
      pair.first = e;
      pair.second = f;
      pair.exact_joint = exact_joint[e * m + f];
      pair.exact_product = exact_marginal[e] * exact_marginal[f];
      pair.empirical_joint = static_cast<double>(joint_count[e * m + f]) / denom;
      pair.empirical_product = report.empirical_marginal[e] * report.empirical_marginal[f];
      report.max_exact_excess = std::max(report.max_exact_excess, pair.exact_joint - pair.exact_product);
      if (samples > 0) {
        report.max_empirical_excess =
            std::max(report.max_empirical_excess, pair.empirical_joint - pair.empirical_product);
      }
      if (pair.exact_joint > pair.exact_product + 1e-12) report.exact_holds = false;
      report.pairs.push_back(pair);
    }
  }
  if (report.pairs.empty()) {
    report.max_exact_excess = 0.0;
    report.max_empirical_excess = 0.0;
  }
  if (samples == 0) report.max_empirical_excess = 0.0;
  report.max_empirical_violation = std::max(0.0, report.max_empirical_excess);
  return report;
}

}  // namespace monet
