#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectral_walks {

/// Undirected simple graph on vertices 0..n-1 with sorted neighbour lists.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  /// Throws ValidationError on self-loops, repeated edges or out-of-range endpoints.
  Graph(int n, const std::vector<Edge>& edges);

  static Graph complete(int n);
  /// Left part 0..n-1, right part n..n+N-1; bi-regular of bi-degree (N, n).
  static Graph complete_bipartite(int n, int N);
  static Graph cycle(int n);
  static Graph petersen();

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  int max_degree() const;
  bool has_edge(int u, int v) const;

  /// Edges with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  /// The common degree if the graph is regular.
  std::optional<int> regular_degree() const;

  /// Size of the left part when the graph was built as bipartite (0 otherwise).
  int left_part_size() const { return left_part_; }
  /// True if built as bipartite with every left vertex of degree d_left and every right vertex of degree d_right.
  bool is_biregular(int d_left, int d_right) const;

  Eigen::MatrixXd adjacency_matrix() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<std::vector<int>> adjacency_;
  std::size_t edge_count_ = 0;
  int left_part_ = 0;
};

/// Reads "u v" pairs, one per line, 0-indexed. Blank lines and lines starting with '#'
/// are skipped. The vertex count is max index + 1 unless `n` is given.
Graph read_edge_list(std::istream& in, std::optional<int> n = std::nullopt);
Graph load_edge_list(const std::string& path, std::optional<int> n = std::nullopt);
void write_edge_list(std::ostream& out, const Graph& g);

/// Simple d-regular graph from the pairing model, drawing one pair of free points at a time
/// and re-drawing pairs that would form a loop or a multi-edge (restarting when stuck).
/// Requires n*d even, n > d, d >= 3. Deterministic in the seed.
Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts = 10000);

/// Length of a shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);

}  // namespace spectral_walks
