#include "monet/expansion.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "monet/error.hpp"

namespace monet {

namespace {

std::vector<Vertex> mask_to_vertices(unsigned long long mask, std::size_t n) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < n; ++v) {
    if ((mask >> v) & 1ull) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

}  // namespace

ExpansionResult expansion_bruteforce(const WeightedGraph& g, ExpansionMode mode, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorCode::kDegenerateGraph, "expansion needs at least 2 vertices");

  ExpansionResult result;
  result.mode = mode;

  if (!g.connected()) {
    std::vector<std::size_t> sizes(g.component_count(), 0);
    for (auto c : g.components()) ++sizes[c];
    const auto smallest = static_cast<std::uint32_t>(
        std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (Vertex v = 0; v < n; ++v) {
      if (g.components()[v] == smallest) result.witness.push_back(v);
    }
    result.ratio = 0.0;
    result.witness_boundary = 0;
    return result;
  }

  if (n > cap || n > 63) {
    throw Error(ErrorCode::kSizeCap,
                "exact expansion enumerates 2^n cuts; n=" + std::to_string(n) +
                    " exceeds the cap of " + std::to_string(std::min<std::size_t>(cap, 63)) +
                    "; use the mixing-rate cover test to estimate expansion instead");
  }

  std::vector<unsigned long long> adjacency(n, 0);
  for (const auto& e : g.edges()) {
    adjacency[e.u] |= 1ull << e.v;
    adjacency[e.v] |= 1ull << e.u;
  }

  const std::size_t half = n / 2;
  double best = std::numeric_limits<double>::infinity();
  unsigned long long best_mask = 0;
  std::size_t best_boundary = 0;
  long long boundary = 0;  // |∂S| maintained incrementally in edge mode

  detail::for_each_subset_gray(n, [&](unsigned long long mask, std::size_t bit, bool added) {
    const auto deg = static_cast<long long>(std::popcount(adjacency[bit]));
    const auto inside = static_cast<long long>(std::popcount(adjacency[bit] & mask & ~(1ull << bit)));
    boundary += added ? deg - 2 * inside : -(deg - 2 * inside);

    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > half) return;
    std::size_t measure;
    if (mode == ExpansionMode::kEdge) {
      measure = static_cast<std::size_t>(boundary);
    } else {
      unsigned long long reach = 0;
      for (unsigned long long m = mask; m != 0; m &= m - 1) {
        reach |= adjacency[static_cast<std::size_t>(__builtin_ctzll(m))];
      }
      measure = static_cast<std::size_t>(std::popcount(reach & ~mask));
    }
    const double ratio = static_cast<double>(measure) / static_cast<double>(size);
    if (ratio < best) {
      best = ratio;
      best_mask = mask;
      best_boundary = measure;
    }
  });

  result.ratio = best;
  result.witness = mask_to_vertices(best_mask, n);
  result.witness_boundary = best_boundary;
  return result;
}

}  // namespace monet
