#ifndef ODDHOM_GRAPH_HPP
#define ODDHOM_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddhom {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;  // canonical form: first < second

inline constexpr std::uint32_t kInfDist = std::numeric_limits<std::uint32_t>::max();

inline Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return u < v ? Edge{u, v} : Edge{v, u};
}

/// Undirected simple graph on vertices 0..n-1, immutable after construction.
/// Stores the sorted edge list plus a CSR adjacency structure with sorted
/// neighbor ranges, so neighbor scans and membership tests are cheap.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(Vertex n, std::vector<Edge> edges) {
    for (auto& e : edges) {
      if (e.first == e.second)
        throw std::invalid_argument("self-loop at vertex " + std::to_string(e.first));
      if (e.first > e.second) std::swap(e.first, e.second);
      if (e.second >= n)
        throw std::invalid_argument("edge endpoint " + std::to_string(e.second) +
                                    " out of range (n=" + std::to_string(n) + ")");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("parallel edge in input");
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.build_adjacency();
    return g;
  }

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_ || u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& [u, v] : edges_) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(2 * edges_.size());
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
      adj_[cursor[u]++] = v;
      adj_[cursor[v]++] = u;
    }
    for (Vertex v = 0; v < n_; ++v)
      std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
  }

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<Vertex> adj_;
};

// Text format: first line "n m", then m lines "u v" with u < v, ASCII
// decimal, LF line endings, edges in ascending lexicographic order on save.

inline void write_graph(const Graph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph parse_graph(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0)
    throw std::runtime_error("graph header: expected 'n m'");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u, v;
    if (!(in >> u >> v)) throw std::runtime_error("graph body: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::runtime_error("edge endpoint out of range at line " + std::to_string(i + 2));
    if (u >= v)
      throw std::runtime_error("edge line " + std::to_string(i + 2) + ": expected u < v");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(static_cast<Vertex>(n), std::move(edges));  // rejects duplicates
}

inline void save_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_graph(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  try {
    return parse_graph(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace oddhom

#endif  // ODDHOM_GRAPH_HPP
