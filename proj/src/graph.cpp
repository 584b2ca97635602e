#include "spectral_walks/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/rng.hpp"

namespace spectral_walks {

Graph::Graph(int n, const std::vector<Edge>& edges) {
  if (n < 1) throw ValidationError("graph: need at least one vertex");
  adjacency_.resize(static_cast<std::size_t>(n));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ValidationError("graph: edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    }
    if (u == v) throw ValidationError("graph: self-loop at vertex " + std::to_string(u));
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw ValidationError("graph: repeated edge");
    }
  }
  edge_count_ = edges.size();
}

Graph Graph::complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph Graph::complete_bipartite(int n, int N) {
  if (n < 1 || N < 1) throw ValidationError("complete_bipartite: both parts must be non-empty");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < N; ++v) edges.emplace_back(u, n + v);
  }
  Graph g(n + N, edges);
  g.left_part_ = n;
  return g;
}

Graph Graph::cycle(int n) {
  if (n < 3) throw ValidationError("cycle: need n >= 3");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) edges.emplace_back(u, (u + 1) % n);
  return Graph(n, edges);
}

Graph Graph::petersen() {
  // Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, edges);
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adjacency_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

bool Graph::has_edge(int u, int v) const {
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int u = 0; u < vertex_count(); ++u) {
    for (int v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<int> Graph::regular_degree() const {
  const int d = degree(0);
  for (const auto& list : adjacency_) {
    if (static_cast<int>(list.size()) != d) return std::nullopt;
  }
  return d;
}

bool Graph::is_biregular(int d_left, int d_right) const {
  if (left_part_ == 0) return false;
  for (int v = 0; v < vertex_count(); ++v) {
    const bool left = v < left_part_;
    if (degree(v) != (left ? d_left : d_right)) return false;
    for (int w : adjacency_[v]) {
      if ((w < left_part_) == left) return false;
    }
  }
  return true;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  const int n = vertex_count();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v : adjacency_[u]) a(u, v) = 1.0;
  }
  return a;
}

Graph read_edge_list(std::istream& in, std::optional<int> n) {
  std::vector<Graph::Edge> edges;
  std::string line;
  int line_no = 0;
  int max_index = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": expected two integers");
    }
    if (u < 0 || v < 0 || u > std::numeric_limits<int>::max() || v > std::numeric_limits<int>::max()) {
      throw ValidationError("edge list line " + std::to_string(line_no) + ": vertex index out of range");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_index = std::max({max_index, static_cast<int>(u), static_cast<int>(v)});
  }
  const int count = n.value_or(max_index + 1);
  return Graph(count, edges);
}

Graph load_edge_list(const std::string& path, std::optional<int> n) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open edge list '" + path + "'");
  return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts) {
  if (d < 3) throw ContractError("random_regular: need d >= 3");
  if (n <= d) throw ContractError("random_regular: need n > d");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw ContractError("random_regular: n * d must be even");

  Rng rng(seed);
  const std::size_t stubs = static_cast<std::size_t>(n) * d;
  std::vector<int> points;
  std::vector<Graph::Edge> edges;
  std::vector<std::vector<int>> adjacent(static_cast<std::size_t>(n));
  auto suitable = [&](int u, int v) {
    return u != v && std::find(adjacent[u].begin(), adjacent[u].end(), v) == adjacent[u].end();
  };
  auto stuck = [&] {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (suitable(points[i], points[j])) return false;
      }
    }
    return true;
  };
  // Pair uniformly chosen free points one edge at a time, re-drawing pairs that would
  // create a loop or a repeated edge; restart when no admissible pair is left.
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    points.resize(stubs);
    for (std::size_t i = 0; i < stubs; ++i) points[i] = static_cast<int>(i) / d;
    edges.clear();
    for (auto& row : adjacent) row.clear();
    int misses = 0;
    while (!points.empty()) {
      const std::size_t i = rng.uniform_index(points.size());
      const std::size_t j = rng.uniform_index(points.size());
      const int u = points[i];
      const int v = points[j];
      if (i == j || !suitable(u, v)) {
        if (++misses >= 64) {
          if (stuck()) break;
          misses = 0;
        }
        continue;
      }
      misses = 0;
      adjacent[u].push_back(v);
      adjacent[v].push_back(u);
      edges.emplace_back(std::min(u, v), std::max(u, v));
      for (std::size_t index : {std::max(i, j), std::min(i, j)}) {
        points[index] = points.back();
        points.pop_back();
      }
    }
    if (points.empty()) return Graph(n, edges);
  }
  throw SamplingError("random_regular: no simple pairing within " + std::to_string(max_attempts) + " attempts");
}

std::optional<int> girth(const Graph& g) {
  const int n = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> queue;
    dist[root] = 0;
    parent[root] = -1;
    queue.push(root);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      if (2 * dist[u] >= best) break;
      for (int w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

}  // namespace spectral_walks
