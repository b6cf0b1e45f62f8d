#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

#include "nonstoch/value.hpp"

namespace nonstoch {

/// Undirected graph with Value-labeled vertices, no self-loops, adjacency
/// kept symmetric. Immutable in practice once built.
class Graph {
 public:
  explicit Graph(std::vector<Value> vertices);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const Value& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<Value>& vertices() const { return vertices_; }

  void add_edge(std::size_t a, std::size_t b);
  bool adjacent(std::size_t a, std::size_t b) const { return adj_[a][b]; }
  const boost::dynamic_bitset<>& neighbors(std::size_t i) const {
    return adj_[i];
  }

 private:
  std::vector<Value> vertices_;
  std::vector<boost::dynamic_bitset<>> adj_;
  std::size_t edge_count_ = 0;
};

inline constexpr std::size_t kDefaultProductVertexCap = 10000;

/// Strong product: vertices are (u, v) pairs; distinct pairs are adjacent
/// when both coordinates are equal-or-adjacent. Codebooks for concatenated
/// blocks are exactly the independent sets of the product.
Graph strong_product(const Graph& g, const Graph& h,
                     std::size_t vertex_cap = kDefaultProductVertexCap);

/// tau-fold strong power with flat tuple vertices (tau >= 2); tau == 1
/// returns the graph unchanged. Vertices are generated in lexicographic
/// order of their component indices.
Graph strong_power(const Graph& g, unsigned tau,
                   std::size_t vertex_cap = kDefaultProductVertexCap);

struct MisOptions {
  /// Graphs larger than this are refused outright (the exact search would
  /// be hopeless); a greedy lower bound is reported with the error.
  std::size_t exact_cap = 400;
  /// Branch-and-bound node budget; deterministic, unlike wall time.
  std::uint64_t node_budget = 200'000'000;
};

struct MisResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness_indices;
  std::vector<Value> witness;
  std::uint64_t nodes_explored = 0;
};

/// Exact maximum independent set via branch and bound with a greedy
/// clique-cover upper bound. Vertices are explored in index order, so the
/// witness is reproducible across runs and platforms. Throws
/// SearchBudgetExceeded (carrying the best size found so far) when the node
/// budget or the exact-search cap is exceeded.
MisResult max_independent_set(const Graph& g, const MisOptions& options = {});

}  // namespace nonstoch
