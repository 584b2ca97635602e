#include "spectral_walks/walks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "spectral_walks/errors.hpp"

namespace spectral_walks {

namespace {

using UndirectedEdge = std::pair<int, int>;

UndirectedEdge undirected(int u, int v) { return u < v ? UndirectedEdge{u, v} : UndirectedEdge{v, u}; }

double walk_estimate(const Graph& g, int u, int k) {
  if (k == 0) return 1.0;
  const double branching = std::max(g.max_degree() - 1, 1);
  return g.degree(u) * std::pow(branching, k - 1);
}

void check_guard(double estimate, int k) {
  if (k < 0) throw ContractError("walk length must be >= 0");
  if (k > kMaxWalkLength) {
    throw ResourceError("walk length " + std::to_string(k) + " exceeds the enumeration limit " +
                        std::to_string(kMaxWalkLength));
  }
  if (estimate > kMaxWalkEstimate) {
    throw ResourceError("estimated walk count " + std::to_string(estimate) + " exceeds the enumeration limit");
  }
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.vertex_count()) throw ContractError("vertex " + std::to_string(v) + " out of range");
}

// Depth-first search over non-backtracking walks, calling visit(path) at full length.
template <typename Visit>
void dfs(const Graph& g, std::vector<int>& path, int k, Visit& visit) {
  if (static_cast<int>(path.size()) == k + 1) {
    visit(path);
    return;
  }
  const int here = path.back();
  const int back = path.size() >= 2 ? path[path.size() - 2] : -1;
  for (int next : g.neighbors(here)) {
    if (next == back) continue;
    path.push_back(next);
    dfs(g, path, k, visit);
    path.pop_back();
  }
}

// Per-edge traversal parities along the current path, keyed by position in the neighbour lists.
class EdgeParity {
 public:
  explicit EdgeParity(const Graph& g) : offsets_(static_cast<std::size_t>(g.vertex_count()) + 1, 0) {
    for (int v = 0; v < g.vertex_count(); ++v) offsets_[v + 1] = offsets_[v] + g.degree(v);
    id_.assign(static_cast<std::size_t>(offsets_.back()), 0);
    int next_id = 0;
    for (int u = 0; u < g.vertex_count(); ++u) {
      const auto& list = g.neighbors(u);
      for (std::size_t i = 0; i < list.size(); ++i) {
        const int v = list[i];
        if (u < v) {
          id_[offsets_[u] + i] = next_id;
          const auto& back = g.neighbors(v);
          const auto j = std::lower_bound(back.begin(), back.end(), u) - back.begin();
          id_[offsets_[v] + j] = next_id;
          ++next_id;
        }
      }
    }
    parity_.assign(static_cast<std::size_t>(next_id), 0);
  }

  int edge_id(int u, std::size_t neighbour_index) const { return id_[offsets_[u] + neighbour_index]; }

  // Flips the parity of edge e and returns the change in the number of odd edges.
  int flip(int e) {
    parity_[e] ^= 1;
    return parity_[e] ? 1 : -1;
  }

 private:
  std::vector<int> offsets_;
  std::vector<int> id_;
  std::vector<char> parity_;
};

struct ClosedCounter {
  const Graph& g;
  EdgeParity parity;
  int start = 0;
  int k = 0;
  int odd_edges = 0;
  std::vector<int> path;
  WalkCounts counts;

  void run(int from) {
    start = from;
    path.assign(1, from);
    step();
  }

  void step() {
    const int depth = static_cast<int>(path.size()) - 1;
    const int here = path.back();
    const int back = depth >= 1 ? path[depth - 1] : -1;
    if (depth == k) {
      if (here != start) return;
      ++counts.nb_closed;
      if (odd_edges == 0) ++counts.nb_even_closed;
      if (k >= 3 && path[k - 1] != path[1]) ++counts.cyclic_nb;
      return;
    }
    const auto& list = g.neighbors(here);
    for (std::size_t i = 0; i < list.size(); ++i) {
      const int next = list[i];
      if (next == back) continue;
      const int e = parity.edge_id(here, i);
      odd_edges += parity.flip(e);
      path.push_back(next);
      step();
      path.pop_back();
      odd_edges += parity.flip(e);
    }
  }
};

WalkCounts closed_counts_from(const Graph& g, int k, const std::vector<int>& starts) {
  ClosedCounter counter{g, EdgeParity(g), 0, k, 0, {}, {}};
  for (int u : starts) counter.run(u);
  return counter.counts;
}

}  // namespace

bool is_walk_in(const Walk& w, const Graph& g) {
  if (w.vertices.empty()) return false;
  for (int v : w.vertices) {
    if (v < 0 || v >= g.vertex_count()) return false;
  }
  for (std::size_t j = 1; j < w.vertices.size(); ++j) {
    if (!g.has_edge(w.vertices[j - 1], w.vertices[j])) return false;
  }
  return true;
}

bool is_closed(const Walk& w) { return !w.vertices.empty() && w.vertices.front() == w.vertices.back(); }

bool is_non_backtracking(const Walk& w) {
  for (std::size_t j = 2; j < w.vertices.size(); ++j) {
    if (w.vertices[j] == w.vertices[j - 2]) return false;
  }
  return true;
}

bool is_cyclically_non_backtracking(const Walk& w) {
  if (!is_closed(w) || !is_non_backtracking(w)) return false;
  const int k = w.length();
  if (k < 3) return k == 0;
  return w.vertices[k - 1] != w.vertices[1];
}

bool is_even(const Walk& w) {
  std::map<UndirectedEdge, int> multiplicity;
  for (std::size_t j = 1; j < w.vertices.size(); ++j) ++multiplicity[undirected(w.vertices[j - 1], w.vertices[j])];
  return std::all_of(multiplicity.begin(), multiplicity.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

std::vector<Walk> enumerate_nb_walks(const Graph& g, int u, int v, int k) {
  check_vertex(g, u);
  check_vertex(g, v);
  check_guard(walk_estimate(g, u, k), k);
  std::vector<Walk> out;
  std::vector<int> path{u};
  auto visit = [&](const std::vector<int>& p) {
    if (p.back() == v) out.push_back(Walk{p});
  };
  dfs(g, path, k, visit);
  return out;
}

WalkCounts count_walks(const Graph& g, int k) {
  double estimate = 0.0;
  std::vector<int> starts(static_cast<std::size_t>(g.vertex_count()));
  for (int u = 0; u < g.vertex_count(); ++u) {
    estimate += walk_estimate(g, u, k);
    starts[u] = u;
  }
  check_guard(estimate, k);
  if (k == 0) return WalkCounts{g.vertex_count(), g.vertex_count(), g.vertex_count()};
  return closed_counts_from(g, k, starts);
}

std::int64_t predicted_nb_closed(int d, std::span<const std::int64_t> cyclic, int k) {
  if (d < 2) throw ContractError("predicted_nb_closed: need d >= 2");
  if (k < 0 || static_cast<int>(cyclic.size()) <= k) throw ContractError("predicted_nb_closed: need c_0..c_k");
  std::int64_t total = cyclic[k];
  std::int64_t power = 1;  // (d-1)^{r-1}
  for (int r = 1; 2 * r < k; ++r) {
    total += (d - 2) * power * cyclic[k - 2 * r];
    power *= d - 1;
  }
  return total;
}

Eigen::VectorXd signed_walk_sums_from(const SignMatrix& m, int u, int k) {
  const Graph& g = m.host();
  check_vertex(g, u);
  check_guard(walk_estimate(g, u, k), k);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(g.vertex_count());
  std::vector<int> path{u};
  auto visit = [&](const std::vector<int>& p) {
    double product = 1.0;
    for (std::size_t j = 1; j < p.size(); ++j) product *= m(p[j - 1], p[j]);
    sums[p.back()] += product;
  };
  dfs(g, path, k, visit);
  return sums;
}

double signed_walk_sum(const SignMatrix& m, int u, int v, int k) {
  check_vertex(m.host(), v);
  return signed_walk_sums_from(m, u, k)[v];
}

std::vector<CensusRow> even_walk_census(CensusFamily family, int n, int N, int max_k) {
  if (max_k < 1) throw ContractError("even_walk_census: need max_k >= 1");
  const bool bipartite = family == CensusFamily::CompleteBipartite;
  const Graph g = bipartite ? Graph::complete_bipartite(n, N) : Graph::complete(n);
  // Both families are vertex-transitive within each part, so one representative per part suffices.
  std::vector<std::pair<int, std::int64_t>> representatives{{0, bipartite ? n : g.vertex_count()}};
  if (bipartite) representatives.emplace_back(n, N);

  std::vector<CensusRow> rows;
  for (int length = 1; length <= 2 * max_k; ++length) {
    double estimate = 0.0;
    for (const auto& [v, multiplicity] : representatives) estimate += walk_estimate(g, v, length);
    check_guard(estimate, length);
    std::int64_t count = 0;
    for (const auto& [v, multiplicity] : representatives) {
      count += multiplicity * closed_counts_from(g, length, {v}).nb_even_closed;
    }
    CensusRow row{length, count, 0.0};
    if (length % 2 == 0) {
      const int j = length / 2;
      const double scale = bipartite ? std::pow(static_cast<double>(n) * N, j / 2.0) : std::pow(n, j);
      row.ratio = static_cast<double>(count) / (j * scale);
    }
    rows.push_back(row);
  }
  return rows;
}

FragmentReport classify_fragments(const Walk& w) {
  const auto& u = w.vertices;
  const int k = w.length();
  if (k < 1) throw ContractError("classify_fragments: walk has no edges");
  if (!is_closed(w) || !is_non_backtracking(w) || !is_even(w)) {
    throw ContractError("classify_fragments: walk must be closed, non-backtracking and even");
  }
  for (int r = 1; r <= k; ++r) {
    if (u[r - 1] == u[r]) throw ContractError("classify_fragments: walk contains a loop");
  }

  enum class Kind { T1, T2, T3 };
  std::vector<Kind> kind(static_cast<std::size_t>(k) + 1, Kind::T3);
  std::vector<int> partner(static_cast<std::size_t>(k) + 1, 0);  // for T1 steps, the step of their T2 copy
  std::vector<char> seen_vertex;
  std::map<UndirectedEdge, int> first_visit;  // T1 edge -> its step
  auto seen = [&](int v) { return v < static_cast<int>(seen_vertex.size()) && seen_vertex[v]; };
  auto mark = [&](int v) {
    if (v >= static_cast<int>(seen_vertex.size())) seen_vertex.resize(static_cast<std::size_t>(v) + 1, 0);
    seen_vertex[v] = 1;
  };

  FragmentReport report;
  for (int r = 1; r <= k; ++r) {
    const int a = u[r - 1];
    const int b = u[r];
    const Triple t{a, b, r};
    // Vertices touched by steps before r are u_0..u_{r-1}.
    if (!seen(b)) {
      kind[r] = Kind::T1;
      first_visit.emplace(undirected(a, b), r);
      report.t1.push_back(t);
    } else if (auto it = first_visit.find(undirected(a, b)); it != first_visit.end() && partner[it->second] == 0) {
      kind[r] = Kind::T2;
      partner[it->second] = r;
      report.t2.push_back(t);
    } else {
      report.t3.push_back(t);
    }
    mark(a);
    mark(b);
  }

  // A T1 step r continues the window ending at r-1 in the given orientation.
  auto continues = [&](int r, Orientation o) {
    if (r > k || kind[r] != Kind::T1) return false;
    return o == Orientation::Same ? partner[r] == partner[r - 1] + 1 : partner[r] == partner[r - 1] - 1;
  };

  int r = 1;
  while (r <= k) {
    if (kind[r] != Kind::T1) {
      ++r;
      continue;
    }
    const int start = r;
    Orientation orientation = Orientation::Same;
    if (continues(r + 1, Orientation::Same)) {
      orientation = Orientation::Same;
    } else if (continues(r + 1, Orientation::Reversed)) {
      orientation = Orientation::Reversed;
    } else {
      // A single edge: orientation follows the direction of its repetition.
      orientation = u[partner[r] - 1] == u[r - 1] ? Orientation::Same : Orientation::Reversed;
    }
    int end = r;
    while (continues(end + 1, orientation)) ++end;

    Fragment f;
    f.proto.assign(u.begin() + (start - 1), u.begin() + end + 1);
    f.vertices = f.proto.front() == u.front() ? f.proto : std::vector<int>(f.proto.begin() + 1, f.proto.end());
    f.first_step = start;
    f.partner_step = orientation == Orientation::Same ? partner[start] : partner[end];
    f.orientation = orientation;
    report.fragments.push_back(std::move(f));
    r = end + 1;
  }
  return report;
}

}  // namespace spectral_walks
