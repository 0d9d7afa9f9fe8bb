#pragma once

#include <cstddef>
#include <cstdint>

#include "monet/graph.hpp"

namespace monet {

WeightedGraph complete_graph(std::size_t n, double weight = 1.0);
WeightedGraph path_graph(std::size_t n, double weight = 1.0);
WeightedGraph cycle_graph(std::size_t n, double weight = 1.0);
WeightedGraph star_graph(std::size_t n, double weight = 1.0);

/// Connected simple graph whose degrees are all `degree`, except one vertex
/// of degree + 1 when n * degree is odd. Configuration model with rejection
/// of non-simple or disconnected pairings. Unit weights.
WeightedGraph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed);

/// Random spanning tree (uniform attachment) plus each remaining pair with
/// probability `edge_probability`; weights uniform in [min_weight, max_weight].
/// Always connected.
WeightedGraph random_connected_graph(std::size_t n, double edge_probability, double min_weight,
                                     double max_weight, std::uint64_t seed);

}  // namespace monet
