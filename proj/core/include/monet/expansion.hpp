#pragma once

#include <cstddef>
#include <vector>

#include "monet/graph.hpp"

namespace monet {

enum class ExpansionMode { kEdge, kVertex };

struct ExpansionResult {
  ExpansionMode mode = ExpansionMode::kEdge;
  double ratio = 0.0;
  /// A minimising set S with 1 <= |S| <= n/2.
  std::vector<Vertex> witness;
  /// |∂S| (edge mode) or |Γ'(S)| (vertex mode) for the witness.
  std::size_t witness_boundary = 0;
};

inline constexpr std::size_t kDefaultBruteForceCap = 20;

/// Exact expansion by enumerating every S with |S| <= n/2.
///
/// Edge mode minimises |∂S|/|S| (edge counts, weights ignored); vertex mode
/// minimises |Γ'(S)|/|S|. Disconnected graphs return 0 with the smallest
/// component as witness, without enumeration and regardless of the cap.
/// Throws Error(kSizeCap) when n > cap, Error(kDegenerateGraph) when n < 2.
ExpansionResult expansion_bruteforce(const WeightedGraph& g, ExpansionMode mode,
                                     std::size_t cap = kDefaultBruteForceCap);

namespace detail {

/// Visits every nonempty subset of {0..n-1} (the full set included) in
/// Gray-code order, calling visit(mask, flipped_vertex, added). n <= 63.
template <typename Visit>
void for_each_subset_gray(std::size_t n, Visit&& visit) {
  const unsigned long long total = 1ull << n;
  unsigned long long mask = 0;
  for (unsigned long long i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(__builtin_ctzll(i));
    mask ^= 1ull << bit;
    const bool added = (mask >> bit) & 1ull;
    visit(mask, bit, added);
  }
}

}  // namespace detail

}  // namespace monet
