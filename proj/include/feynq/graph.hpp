#ifndef FEYNQ_GRAPH_HPP
#define FEYNQ_GRAPH_HPP

// Connected multigraphs with labelled vertices 1..n and an ordered edge list;
// the combinatorial side of the Feynman quadrics: stars, vertex removal,
// spanning-tree enumeration and the graph polynomial.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace feynq {

struct Disconnected : std::runtime_error {
  explicit Disconnected(const std::string& why) : std::runtime_error(why) {}
};

namespace detail {

// union-find over vertices 0..n-1, small and copyable
struct Dsu {
  explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  // returns false if already in the same component
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
  std::vector<int> parent;
};

} // namespace detail

class FeynmanGraph {
public:
  using Edge = std::pair<int, int>; // 1-based endpoints, i != j

  FeynmanGraph(int vertex_count, std::vector<Edge> edges)
      : n_(vertex_count), edges_(std::move(edges)) {
    if (n_ < 1)
      throw std::invalid_argument("FeynmanGraph: need at least one vertex");
    for (const auto& [i, j] : edges_) {
      if (i < 1 || i > n_ || j < 1 || j > n_)
        throw std::invalid_argument("FeynmanGraph: edge endpoint out of range");
      if (i == j)
        throw std::invalid_argument("FeynmanGraph: self-loops not allowed");
    }
    if (!connected())
      throw Disconnected("FeynmanGraph: graph is not connected");
  }

  // complete graph on n vertices, edges in lexicographic order
  static FeynmanGraph complete(int n) {
    if (n < 1)
      throw std::invalid_argument("complete: need at least one vertex");
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    return FeynmanGraph(n, std::move(e));
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // indices (0-based, ascending) of the edges incident to vertex v
  std::vector<int> star(int v) const {
    check_vertex(v);
    std::vector<int> idx;
    for (std::size_t k = 0; k < edges_.size(); ++k)
      if (edges_[k].first == v || edges_[k].second == v)
        idx.push_back(static_cast<int>(k));
    return idx;
  }

  // delete vertex v and its incident edges, relabelling the remaining
  // vertices order-preservingly; the result must stay connected
  FeynmanGraph remove_vertex(int v) const {
    check_vertex(v);
    if (n_ == 1)
      throw std::invalid_argument("remove_vertex: cannot empty the graph");
    std::vector<Edge> e;
    for (const auto& [i, j] : edges_) {
      if (i == v || j == v) continue;
      e.emplace_back(i > v ? i - 1 : i, j > v ? j - 1 : j);
    }
    return FeynmanGraph(n_ - 1, std::move(e)); // throws Disconnected if split
  }

  // All spanning trees as sorted sets of edge indices, enumerated by
  // recursive deletion/contraction and returned in lexicographic order.
  std::vector<std::vector<int>> spanning_trees() const {
    std::vector<std::vector<int>> trees;
    std::vector<int> chosen;
    detail::Dsu dsu(n_);
    spanning_rec(0, n_ - 1, dsu, chosen, trees);
    std::sort(trees.begin(), trees.end());
    return trees;
  }

  // Monomials of the graph polynomial: for each spanning tree T the product
  // of the edge variables NOT in T, i.e. the complement edge-index set,
  // with integer multiplicities.
  std::map<std::vector<int>, long long> graph_polynomial() const {
    std::map<std::vector<int>, long long> monomials;
    for (const auto& tree : spanning_trees()) {
      std::vector<int> complement;
      std::size_t t = 0;
      for (int k = 0; k < edge_count(); ++k) {
        if (t < tree.size() && tree[t] == k)
          ++t;
        else
          complement.push_back(k);
      }
      ++monomials[complement];
    }
    return monomials;
  }

  friend bool operator==(const FeynmanGraph& a, const FeynmanGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

private:
  void check_vertex(int v) const {
    if (v < 1 || v > n_)
      throw std::invalid_argument("vertex label out of range");
  }

  bool connected() const {
    detail::Dsu dsu(n_);
    int components = n_;
    for (const auto& [i, j] : edges_)
      if (dsu.unite(i - 1, j - 1)) --components;
    return components == 1;
  }

  // deletion/contraction: at edge k either contract it into the tree
  // (skipping cycle edges) or delete it; Dsu passed by value per branch
  void spanning_rec(int k, int needed, detail::Dsu dsu,
                    std::vector<int>& chosen,
                    std::vector<std::vector<int>>& trees) const {
    if (needed == 0) {
      trees.push_back(chosen);
      return;
    }
    if (edge_count() - k < needed) return; // not enough edges left
    const auto& [i, j] = edges_[static_cast<std::size_t>(k)];
    detail::Dsu contracted = dsu;
    if (contracted.unite(i - 1, j - 1)) { // not a self-loop after contraction
      chosen.push_back(k);
      spanning_rec(k + 1, needed - 1, std::move(contracted), chosen, trees);
      chosen.pop_back();
    }
    spanning_rec(k + 1, needed, std::move(dsu), chosen, trees);
  }

  int n_;
  std::vector<Edge> edges_;
};

} // namespace feynq

#endif
