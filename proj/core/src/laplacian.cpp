#include "monet/laplacian.hpp"

#include <algorithm>
#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "monet/error.hpp"

namespace monet {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// L_0 with the first row and column removed; vertex v > 0 maps to v - 1.
Eigen::MatrixXd reduced_laplacian(const WeightedGraph& g) {
  const auto m = static_cast<Eigen::Index>(g.vertex_count() - 1);
  Eigen::MatrixXd minor = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : g.edges()) {
    const Eigen::Index a = static_cast<Eigen::Index>(e.u) - 1;
    const Eigen::Index b = static_cast<Eigen::Index>(e.v) - 1;
    if (a >= 0) minor(a, a) += e.weight;
    minor(b, b) += e.weight;
    if (a >= 0) {
      minor(a, b) -= e.weight;
      minor(b, a) -= e.weight;
    }
  }
  return minor;
}

struct Factored {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double log_det = 0.0;
};

Factored factor_or_throw(const Eigen::MatrixXd& minor, const char* what) {
  Factored f{Eigen::LLT<Eigen::MatrixXd>(minor), 0.0};
  const double rcond = f.llt.info() == Eigen::Success ? f.llt.rcond() : 0.0;
  if (f.llt.info() != Eigen::Success || !(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::kNumericalFailure,
                std::string(what) + ": reduced Laplacian is numerically singular (condition estimate " +
                    (rcond > 0 ? std::to_string(1.0 / rcond) : std::string("inf")) + ")");
  }
  const auto& lower = f.llt.matrixLLT();
  for (Eigen::Index i = 0; i < lower.rows(); ++i) f.log_det += 2.0 * std::log(lower(i, i));
  return f;
}

void require_tree_input(const WeightedGraph& g, const char* what) {
  if (g.vertex_count() < 2) {
    throw Error(ErrorCode::kDegenerateGraph, std::string(what) + " needs at least 2 vertices");
  }
  g.require_connected(what);
}

}  // namespace

LaplacianMatrix::LaplacianMatrix(const WeightedGraph& g)
    : n_(g.vertex_count()), values_(n_ * n_, 0.0) {
  for (const auto& e : g.edges()) {
    values_[e.u * n_ + e.u] += e.weight;
    values_[e.v * n_ + e.v] += e.weight;
    values_[e.u * n_ + e.v] -= e.weight;
    values_[e.v * n_ + e.u] -= e.weight;
  }
}

std::vector<double> LaplacianMatrix::minor(std::size_t removed) const {
  if (removed >= n_) throw Error(ErrorCode::kInvalidParameter, "minor index out of range");
  std::vector<double> out;
  out.reserve((n_ - 1) * (n_ - 1));
  for (std::size_t r = 0; r < n_; ++r) {
    if (r == removed) continue;
    for (std::size_t c = 0; c < n_; ++c) {
      if (c != removed) out.push_back(values_[r * n_ + c]);
    }
  }
  return out;
}

double LaplacianMatrix::quadratic_form(std::span<const double> x) const {
  if (x.size() != n_) throw Error(ErrorCode::kInvalidParameter, "vector length mismatch");
  Eigen::Map<const RowMatrix> lap(values_.data(), static_cast<Eigen::Index>(n_),
                                  static_cast<Eigen::Index>(n_));
  Eigen::Map<const Eigen::VectorXd> vec(x.data(), static_cast<Eigen::Index>(n_));
  return vec.dot(lap * vec);
}

double laplacian_quadratic_form(const WeightedGraph& g, std::span<const double> x) {
  if (x.size() != g.vertex_count()) throw Error(ErrorCode::kInvalidParameter, "vector length mismatch");
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    const double d = x[e.u] - x[e.v];
    sum += e.weight * d * d;
  }
  return sum;
}

TreeWeight spanning_tree_weight(const WeightedGraph& g, std::optional<EdgeId> excluded_edge) {
  require_tree_input(g, "spanning_tree_weight");
  if (!excluded_edge) {
    const auto f = factor_or_throw(reduced_laplacian(g), "spanning_tree_weight");
    return {f.log_det, std::exp(f.log_det)};
  }
  const WeightedGraph reduced = g.without_edge(*excluded_edge);
  if (!reduced.connected()) return {-std::numeric_limits<double>::infinity(), 0.0};
  const auto f = factor_or_throw(reduced_laplacian(reduced), "spanning_tree_weight");
  return {f.log_det, std::exp(f.log_det)};
}

std::vector<EdgeId> bridges(const WeightedGraph& g) {
  // Iterative Tarjan low-link over the incidence lists.
  const std::size_t n = g.vertex_count();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> order(n, kUnseen), low(n, 0);
  std::vector<EdgeId> result;
  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  std::uint32_t clock = 0;
  constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();
  for (Vertex root = 0; root < n; ++root) {
    if (order[root] != kUnseen) continue;
    order[root] = low[root] = clock++;
    stack.push_back({root, kNoEdge, 0});
    while (!stack.empty()) {
      auto& top = stack.back();
      auto list = g.neighbors(top.v);
      if (top.next < list.size()) {
        const auto inc = list[top.next++];
        if (inc.edge == top.via) continue;
        if (order[inc.neighbor] == kUnseen) {
          order[inc.neighbor] = low[inc.neighbor] = clock++;
          stack.push_back({inc.neighbor, inc.edge, 0});
        } else {
          low[top.v] = std::min(low[top.v], order[inc.neighbor]);
        }
      } else {
        const Frame done = top;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > order[parent.v]) result.push_back(done.via);
        }
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

EdgeStatistics edge_statistics(const WeightedGraph& g, InclusionMethod method) {
  require_tree_input(g, "edge_statistics");
  const std::size_t m = g.edge_count();
  if (method == InclusionMethod::kAuto) {
    method = g.vertex_count() <= kDirectDeterminantLimit ? InclusionMethod::kDeterminantRatio
                                                         : InclusionMethod::kRankOneUpdate;
  }

  EdgeStatistics stats;
  stats.method = method;
  stats.inclusion_probability.assign(m, 0.0);
  stats.effective_resistance.assign(m, 0.0);
  stats.conductance.assign(m, 0.0);

  const Eigen::MatrixXd minor = reduced_laplacian(g);
  const auto base = factor_or_throw(minor, "edge_statistics");
  stats.reciprocal_condition = base.llt.rcond();
  const Eigen::MatrixXd inverse =
      base.llt.solve(Eigen::MatrixXd::Identity(minor.rows(), minor.cols()));

  std::vector<char> is_bridge(m, 0);
  for (EdgeId id : bridges(g)) is_bridge[id] = 1;

  for (EdgeId id = 0; id < m; ++id) {
    const auto& e = g.edge(id);
    stats.conductance[id] = e.weight;
    // R_e = b^T L_0^{-1} b with b = 1_u − 1_v, where index 0 is grounded.
    const Eigen::Index a = static_cast<Eigen::Index>(e.u) - 1;
    const Eigen::Index b = static_cast<Eigen::Index>(e.v) - 1;
    double resistance = inverse(b, b);
    if (a >= 0) resistance += inverse(a, a) - 2.0 * inverse(a, b);
    stats.effective_resistance[id] = resistance;

    double probability;
    if (is_bridge[id]) {
      probability = 1.0;
    } else if (method == InclusionMethod::kDeterminantRatio) {
      Eigen::MatrixXd reduced = minor;
      if (a >= 0) {
        reduced(a, a) -= e.weight;
        reduced(a, b) += e.weight;
        reduced(b, a) += e.weight;
      }
      reduced(b, b) -= e.weight;
      const auto f = factor_or_throw(reduced, "edge_statistics");
      probability = 1.0 - std::exp(f.log_det - base.log_det);
    } else {
      probability = e.weight * resistance;
    }
    stats.inclusion_probability[id] = probability;
  }

  double total = 0.0;
  for (double p : stats.inclusion_probability) total += p;
  stats.average_probability = m == 0 ? 0.0 : total / static_cast<double>(m);
  return stats;
}

}  // namespace monet
