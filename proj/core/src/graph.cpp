#include "nonstoch/graph.hpp"

#include <string>

#include "nonstoch/errors.hpp"

namespace nonstoch {

Graph::Graph(std::vector<Value> vertices) : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if (vertices_[i] == vertices_[j])
        throw InvalidArgument("duplicate vertex " + vertices_[i].str());
    }
  }
  adj_.assign(vertices_.size(), boost::dynamic_bitset<>(vertices_.size()));
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a >= vertices_.size() || b >= vertices_.size())
    throw InvalidArgument("edge endpoint out of range");
  if (a == b) throw InvalidArgument("self-loops are not allowed");
  if (!adj_[a][b]) {
    adj_[a][b] = true;
    adj_[b][a] = true;
    ++edge_count_;
  }
}

Graph strong_product(const Graph& g, const Graph& h, std::size_t vertex_cap) {
  const std::size_t n = g.vertex_count() * h.vertex_count();
  if (n > vertex_cap)
    throw InvalidArgument("strong product would have " + std::to_string(n) +
                          " vertices, above the cap of " +
                          std::to_string(vertex_cap));
  std::vector<Value> vertices;
  vertices.reserve(n);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    for (std::size_t j = 0; j < h.vertex_count(); ++j)
      vertices.push_back(Value(Value::Tuple{g.vertex(i), h.vertex(j)}));
  }
  Graph out(std::move(vertices));
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    for (std::size_t j = 0; j < h.vertex_count(); ++j) {
      const std::size_t a = i * h.vertex_count() + j;
      for (std::size_t k = i; k < g.vertex_count(); ++k) {
        if (k != i && !g.adjacent(i, k)) continue;
        for (std::size_t l = 0; l < h.vertex_count(); ++l) {
          const std::size_t b = k * h.vertex_count() + l;
          if (b <= a) continue;
          if (l != j && !h.adjacent(j, l)) continue;
          out.add_edge(a, b);
        }
      }
    }
  }
  return out;
}

Graph strong_power(const Graph& g, unsigned tau, std::size_t vertex_cap) {
  if (tau == 0) throw InvalidArgument("strong power needs tau >= 1");
  if (tau == 1) return g;

  const std::size_t base = g.vertex_count();
  std::size_t n = 1;
  for (unsigned i = 0; i < tau; ++i) {
    if (n > vertex_cap / base)
      throw InvalidArgument("strong power would exceed the vertex cap of " +
                            std::to_string(vertex_cap));
    n *= base;
  }

  // Index arithmetic in base `base`, most significant digit first, keeps the
  // vertex order lexicographic in the component vertices.
  std::vector<Value> vertices;
  vertices.reserve(n);
  std::vector<std::size_t> digits(tau, 0);
  for (std::size_t v = 0; v < n; ++v) {
    Value::Tuple items;
    items.reserve(tau);
    std::size_t rem = v;
    for (unsigned d = 0; d < tau; ++d) {
      std::size_t scale = 1;
      for (unsigned e = d + 1; e < tau; ++e) scale *= base;
      digits[d] = rem / scale;
      rem %= scale;
      items.push_back(g.vertex(digits[d]));
    }
    vertices.push_back(Value(std::move(items)));
  }

  Graph out(std::move(vertices));
  std::vector<std::size_t> da(tau), db(tau);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t rem = a;
    for (unsigned d = tau; d-- > 0;) {
      da[d] = rem % base;
      rem /= base;
    }
    for (std::size_t b = a + 1; b < n; ++b) {
      rem = b;
      for (unsigned d = tau; d-- > 0;) {
        db[d] = rem % base;
        rem /= base;
      }
      bool linked = true;
      for (unsigned d = 0; d < tau; ++d) {
        if (da[d] != db[d] && !g.adjacent(da[d], db[d])) {
          linked = false;
          break;
        }
      }
      if (linked) out.add_edge(a, b);
    }
  }
  return out;
}

namespace {

using Bitset = boost::dynamic_bitset<>;

struct MisSearch {
  const Graph& g;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  Bitset best;
  std::size_t best_size = 0;

  explicit MisSearch(const Graph& graph, std::uint64_t node_budget)
      : g(graph), budget(node_budget), best(graph.vertex_count()) {}

  /// Greedy clique cover of the candidate set; its size bounds the largest
  /// independent subset from above.
  std::size_t cover_bound(const Bitset& candidates) const {
    std::vector<Bitset> cliques;
    for (std::size_t v = candidates.find_first(); v != Bitset::npos;
         v = candidates.find_next(v)) {
      bool placed = false;
      for (Bitset& clique : cliques) {
        if (clique.is_subset_of(g.neighbors(v))) {
          clique.set(v);
          placed = true;
          break;
        }
      }
      if (!placed) {
        Bitset fresh(g.vertex_count());
        fresh.set(v);
        cliques.push_back(std::move(fresh));
      }
    }
    return cliques.size();
  }

  void run(Bitset candidates, Bitset current, std::size_t current_size) {
    if (++nodes > budget)
      throw SearchBudgetExceeded(
          "independent-set search exceeded its node budget", best_size);
    if (candidates.none()) {
      if (current_size > best_size) {
        best_size = current_size;
        best = current;
      }
      return;
    }
    if (current_size + cover_bound(candidates) <= best_size) return;

    const std::size_t v = candidates.find_first();

    Bitset with_v = candidates & ~g.neighbors(v);
    with_v.reset(v);
    current.set(v);
    run(std::move(with_v), current, current_size + 1);
    current.reset(v);

    candidates.reset(v);
    run(std::move(candidates), current, current_size);
  }
};

}  // namespace

MisResult max_independent_set(const Graph& g, const MisOptions& options) {
  if (g.vertex_count() > options.exact_cap) {
    // Report a greedy lower bound with the refusal.
    Bitset taken(g.vertex_count());
    std::size_t greedy = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if ((taken & g.neighbors(v)).none() && !taken[v]) {
        taken.set(v);
        ++greedy;
      }
    }
    throw SearchBudgetExceeded(
        "graph has " + std::to_string(g.vertex_count()) +
            " vertices, above the exact-search cap of " +
            std::to_string(options.exact_cap),
        greedy);
  }

  MisSearch search(g, options.node_budget);
  Bitset all(g.vertex_count());
  all.set();
  search.run(all, Bitset(g.vertex_count()), 0);

  MisResult out;
  out.size = search.best_size;
  out.nodes_explored = search.nodes;
  for (std::size_t v = search.best.find_first(); v != Bitset::npos;
       v = search.best.find_next(v)) {
    out.witness_indices.push_back(v);
    out.witness.push_back(g.vertex(v));
  }
  return out;
}

}  // namespace nonstoch
