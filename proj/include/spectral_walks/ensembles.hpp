#pragma once

// Random matrix ensembles with symmetric +-1 (Bernoulli) entries, all deterministic in the seed.

#include <Eigen/Core>

#include <cstdint>

#include "spectral_walks/graph.hpp"

namespace spectral_walks {

/// Symmetric matrix with entries +-scale on the edges of its host graph and 0 elsewhere.
class SignMatrix {
 public:
  /// Validates symmetry and the support/magnitude pattern; throws ContractError.
  SignMatrix(Graph host, Eigen::MatrixXd entries, double scale = 1.0);

  /// All entries +scale: scale * A(g).
  static SignMatrix adjacency(const Graph& g, double scale = 1.0);

  const Graph& host() const { return host_; }
  const Eigen::MatrixXd& dense() const { return entries_; }
  double scale() const { return scale_; }
  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int u, int v) const { return entries_(u, v); }

 private:
  Graph host_;
  Eigen::MatrixXd entries_;
  double scale_;
};

/// n x n symmetric matrix with independent fair entries +-1/(2 sqrt(n)) for u <= v.
/// With zero_diagonal the diagonal is 0 and consumes no randomness.
Eigen::MatrixXd wigner_matrix(int n, std::uint64_t seed, bool zero_diagonal = false);

/// Independent fair signs on the edges of g.
SignMatrix sign_matrix_on_graph(const Graph& g, std::uint64_t seed);

/// n x N matrix (n <= N) with entries +-1/sqrt(N), stored as its sign pattern.
class RectSignMatrix {
 public:
  /// signs must be +-1 entries with rows <= cols.
  explicit RectSignMatrix(Eigen::MatrixXd signs);

  int rows() const { return static_cast<int>(signs_.rows()); }
  int cols() const { return static_cast<int>(signs_.cols()); }
  const Eigen::MatrixXd& signs() const { return signs_; }
  /// The actual entries, signs / sqrt(N).
  Eigen::MatrixXd entries() const;

 private:
  Eigen::MatrixXd signs_;
};

RectSignMatrix rect_sign_matrix(int n, int N, std::uint64_t seed);

/// C = B B^t, computed as (S S^t) / N from the integer sign pattern so diag(C) = 1 exactly.
Eigen::MatrixXd covariance(const RectSignMatrix& b);

/// sqrt(N) B embedded as a sign matrix on K_{n,N}: vertices 0..n-1 index the rows of B,
/// n..n+N-1 its columns.
SignMatrix bipartite_embedding(const RectSignMatrix& b);

/// A = signs * scale + diag(diagonal), with signs a sign matrix on K_n and scale = 1/(2 sqrt(n)).
struct WignerSplit {
  SignMatrix signs;
  Eigen::VectorXd diagonal;
  double scale;

  Eigen::MatrixXd reconstruct() const;
};

/// Splits a matrix of the wigner_matrix form; throws ContractError otherwise.
WignerSplit split_wigner(const Eigen::MatrixXd& a);

/// Entrywise product of a full symmetric +-1 matrix with A(g).
SignMatrix hadamard(const Eigen::MatrixXd& mbar, const Graph& g);

}  // namespace spectral_walks
