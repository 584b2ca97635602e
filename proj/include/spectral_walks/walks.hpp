#pragma once

// Exhaustive enumeration of non-backtracking walks. These routines are the brute-force side
// of every walk identity in the library, so they count by explicit depth-first search and
// never by transfer matrices.

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "spectral_walks/ensembles.hpp"
#include "spectral_walks/graph.hpp"

namespace spectral_walks {

inline constexpr int kMaxWalkLength = 14;
inline constexpr double kMaxWalkEstimate = 1e7;

struct Walk {
  std::vector<int> vertices;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Walk&, const Walk&) = default;
  friend auto operator<=>(const Walk&, const Walk&) = default;
};

bool is_walk_in(const Walk& w, const Graph& g);
bool is_closed(const Walk& w);
/// u_j != u_{j-2} for all j >= 2.
bool is_non_backtracking(const Walk& w);
/// Closed, non-backtracking, and also non-backtracking across the closing seam (u_{k-1} != u_1).
bool is_cyclically_non_backtracking(const Walk& w);
/// Every undirected edge is traversed an even number of times.
bool is_even(const Walk& w);

/// All non-backtracking walks of length k from u to v, in lexicographic order.
/// Throws ResourceError when k > 14 or the crude size estimate exceeds 1e7.
std::vector<Walk> enumerate_nb_walks(const Graph& g, int u, int v, int k);

struct WalkCounts {
  std::int64_t nb_closed = 0;       // closed non-backtracking walks, all start vertices
  std::int64_t nb_even_closed = 0;  // ... of which every edge is used an even number of times
  std::int64_t cyclic_nb = 0;       // ... closed walks that are also non-backtracking at the seam (c_k)
};

WalkCounts count_walks(const Graph& g, int k);

/// c_k + sum_{1 <= r < k/2} (d-2)(d-1)^{r-1} c_{k-2r}, the closed NB walk count of a d-regular
/// graph predicted from its cycle counts; cyclic[j] = c_j for 0 <= j <= k.
std::int64_t predicted_nb_closed(int d, std::span<const std::int64_t> cyclic, int k);

/// Sum over NB walks u -> v of length k of M_{u0 u1} ... M_{u(k-1) uk}.
double signed_walk_sum(const SignMatrix& m, int u, int v, int k);
/// The same sums for every end vertex v at once.
Eigen::VectorXd signed_walk_sums_from(const SignMatrix& m, int u, int k);

enum class CensusFamily { Complete, CompleteBipartite };

struct CensusRow {
  int length = 0;
  std::int64_t count = 0;  // closed even NB walks of this length
  double ratio = 0.0;      // count / (j n^j), or count / (j (nN)^{j/2}), for length 2j; 0 for odd lengths
};

/// Exact even-walk counts on K_n (N ignored) or K_{n,N} for lengths 1..2 max_k.
std::vector<CensusRow> even_walk_census(CensusFamily family, int n, int N, int max_k);

struct Triple {
  int from = 0;
  int to = 0;
  int step = 0;  // 1-based position in the walk

  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Orientation { Same, Reversed };

struct Fragment {
  std::vector<int> proto;     // the proto-fragment (u_1, ..., u_l)
  std::vector<int> vertices;  // the fragment: proto, or proto without u_1 when u_1 is not the start
  int first_step = 0;         // step of the first first-visit edge
  int partner_step = 0;       // earliest step of the matching repeated run
  Orientation orientation = Orientation::Same;
};

struct FragmentReport {
  std::vector<Triple> t1;  // first visits
  std::vector<Triple> t2;  // first repetition of a first-visit edge
  std::vector<Triple> t3;  // everything else
  std::vector<Fragment> fragments;

  int fragment_count() const { return static_cast<int>(fragments.size()); }
};

/// Edge classes and fragment decomposition of a closed, non-backtracking, even walk.
FragmentReport classify_fragments(const Walk& w);

}  // namespace spectral_walks
