#include "spectral_walks/ensembles.hpp"

#include <cmath>
#include <string>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/rng.hpp"

namespace spectral_walks {

namespace {

bool is_exactly_symmetric(const Eigen::MatrixXd& m) { return m.rows() == m.cols() && m == m.transpose(); }

}  // namespace

SignMatrix::SignMatrix(Graph host, Eigen::MatrixXd entries, double scale)
    : host_(std::move(host)), entries_(std::move(entries)), scale_(scale) {
  if (!(scale_ > 0.0)) throw ContractError("SignMatrix: scale must be positive");
  const int n = host_.vertex_count();
  if (entries_.rows() != n || entries_.cols() != n) throw ContractError("SignMatrix: dimension does not match host graph");
  if (!is_exactly_symmetric(entries_)) throw ContractError("SignMatrix: entries are not symmetric");
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double x = entries_(u, v);
      if (host_.has_edge(u, v)) {
        if (x != scale_ && x != -scale_) throw ContractError("SignMatrix: edge entry is not +-scale");
      } else if (x != 0.0) {
        throw ContractError("SignMatrix: non-zero entry off the host graph");
      }
    }
  }
}

SignMatrix SignMatrix::adjacency(const Graph& g, double scale) {
  return SignMatrix(g, scale * g.adjacency_matrix(), scale);
}

Eigen::MatrixXd wigner_matrix(int n, std::uint64_t seed, bool zero_diagonal) {
  if (n < 1) throw ContractError("wigner_matrix: n must be >= 1");
  Rng rng(seed);
  const double entry = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
  Eigen::MatrixXd a(n, n);
  for (int u = 0; u < n; ++u) {
    if (zero_diagonal) {
      a(u, u) = 0.0;
    } else {
      a(u, u) = rng.sign() * entry;
    }
    for (int v = u + 1; v < n; ++v) {
      const double x = rng.sign() * entry;
      a(u, v) = x;
      a(v, u) = x;
    }
  }
  return a;
}

SignMatrix sign_matrix_on_graph(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  const int n = g.vertex_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const double s = rng.sign();
    m(u, v) = s;
    m(v, u) = s;
  }
  return SignMatrix(g, std::move(m));
}

RectSignMatrix::RectSignMatrix(Eigen::MatrixXd signs) : signs_(std::move(signs)) {
  if (signs_.rows() < 1 || signs_.rows() > signs_.cols()) throw ContractError("RectSignMatrix: need 1 <= n <= N");
  if (!((signs_.array() == 1.0) || (signs_.array() == -1.0)).all()) {
    throw ContractError("RectSignMatrix: sign pattern must be +-1");
  }
}

Eigen::MatrixXd RectSignMatrix::entries() const { return signs_ / std::sqrt(static_cast<double>(cols())); }

RectSignMatrix rect_sign_matrix(int n, int N, std::uint64_t seed) {
  if (n < 1 || n > N) throw ContractError("rect_sign_matrix: need 1 <= n <= N");
  Rng rng(seed);
  Eigen::MatrixXd s(n, N);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < N; ++v) s(u, v) = rng.sign();
  }
  return RectSignMatrix(std::move(s));
}

Eigen::MatrixXd covariance(const RectSignMatrix& b) {
  Eigen::MatrixXd gram = b.signs() * b.signs().transpose();
  gram /= static_cast<double>(b.cols());
  return gram;
}

SignMatrix bipartite_embedding(const RectSignMatrix& b) {
  const int n = b.rows();
  const int N = b.cols();
  // Vertices 0..n-1 are rows of B, n..n+N-1 its columns (the graph's left/right parts).
  Graph host = Graph::complete_bipartite(n, N);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + N, n + N);
  m.topRightCorner(n, N) = b.signs();
  m.bottomLeftCorner(N, n) = b.signs().transpose();
  return SignMatrix(std::move(host), std::move(m));
}

Eigen::MatrixXd WignerSplit::reconstruct() const {
  Eigen::MatrixXd a = signs.dense() * scale;
  a.diagonal() += diagonal;
  return a;
}

WignerSplit split_wigner(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw ContractError("split_wigner: matrix must be square and non-empty");
  if (!is_exactly_symmetric(a)) throw ContractError("split_wigner: matrix is not symmetric");
  const int n = static_cast<int>(a.rows());
  const double entry = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
  Eigen::MatrixXd signs = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd diagonal(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const double x = a(u, v);
      if (x != entry && x != -entry && !(u == v && x == 0.0)) {
        throw ContractError("split_wigner: entry (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") is not +-1/(2 sqrt(n))");
      }
      if (u == v) {
        diagonal[u] = x;
      } else {
        signs(u, v) = x > 0.0 ? 1.0 : -1.0;
      }
    }
  }
  return WignerSplit{SignMatrix(Graph::complete(n), std::move(signs)), std::move(diagonal), entry};
}

SignMatrix hadamard(const Eigen::MatrixXd& mbar, const Graph& g) {
  const int n = g.vertex_count();
  if (mbar.rows() != n || mbar.cols() != n) {
    throw ContractError("hadamard: matrix is " + std::to_string(mbar.rows()) + "x" + std::to_string(mbar.cols()) +
                        " but the graph has " + std::to_string(n) + " vertices");
  }
  if (!is_exactly_symmetric(mbar)) throw ContractError("hadamard: matrix is not symmetric");
  if (!((mbar.array() == 1.0) || (mbar.array() == -1.0)).all()) throw ContractError("hadamard: entries must be +-1");
  Eigen::MatrixXd m = mbar.cwiseProduct(g.adjacency_matrix());
  return SignMatrix(g, std::move(m));
}

}  // namespace spectral_walks
