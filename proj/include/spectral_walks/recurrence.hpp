#pragma once

// Orthonormal polynomial families given by three-term recurrences:
//
//   x P_k(x) = b_k P_{k+1}(x) + a_k P_k(x) + b_{k-1} P_{k-1}(x),   P_0 = 1, P_{-1} = 0,
//
// with diagonal a_k and off-diagonal b_k > 0. Every family used here has
// a_k, b_k constant for k >= 1, so a recurrence is four numbers plus the
// support interval of its orthogonality measure.

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

#include "spectral_walks/errors.hpp"

namespace spectral_walks {

inline constexpr Eigen::Index kDefaultDimensionCap = 4096;

struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  double center() const { return 0.5 * (lo + hi); }
  double halfwidth() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class FamilyKind { ChebyshevU, KestenMcKay, MarchenkoPasturQ, BernsteinSzego };

class ThreeTermRecurrence {
 public:
  /// U_k, orthonormal for the Wigner semicircle on [-1, 1].
  static ThreeTermRecurrence chebyshev_u();
  /// p_{k,d}: a_k = 0, b_0 = sqrt(d), b_k = sqrt(d-1). Support [-2 sqrt(d-1), 2 sqrt(d-1)].
  static ThreeTermRecurrence kesten_mckay(int d);
  /// q_{k,xi1,xi2}: a_0 = 1, a_k = 1 + xi1, b_k = sqrt(xi2).
  static ThreeTermRecurrence marchenko_pastur_q(double xi1, double xi2);
  /// gamma (U_k + alpha U_{k-1} + beta U_{k-2}) normalised so that P_0 = 1.
  static ThreeTermRecurrence bernstein_szego(double gamma, double alpha, double beta);

  FamilyKind kind() const { return kind_; }
  std::string name() const;

  int d() const { return d_; }
  double xi1() const { return xi1_; }
  double xi2() const { return xi2_; }
  double gamma() const { return gamma_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  double diag(int k) const { return k == 0 ? diag0_ : diag_; }
  double offdiag(int k) const { return k == 0 ? off0_ : off_; }

  const Interval& support() const { return support_; }
  bool is_canonical() const;

  /// The same family pushed forward by x = (t - center) / halfwidth onto [-1, 1].
  ThreeTermRecurrence canonical() const;
  /// Position of t relative to the support: (t - center) / halfwidth.
  double to_canonical(double t) const { return (t - support_.center()) / support_.halfwidth(); }
  double from_canonical(double x) const { return support_.center() + support_.halfwidth() * x; }

  /// Leading coefficient gamma_k of P_k, i.e. prod_{j<k} 1 / b_j.
  double leading_coefficient(int k) const;

 private:
  ThreeTermRecurrence(FamilyKind kind, double diag0, double diag, double off0, double off, Interval support);

  FamilyKind kind_;
  double diag0_;
  double diag_;
  double off0_;
  double off_;
  Interval support_;
  int d_ = 0;
  double xi1_ = 0.0;
  double xi2_ = 0.0;
  double gamma_ = 1.0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

/// Chebyshev polynomial of the second kind, any integer k (U_{-1} = 0, U_{-k-2} = -U_k).
template <typename Scalar>
Scalar chebyshev_u(int k, Scalar x) {
  if (k < 0) {
    return k == -1 ? Scalar(0) : -chebyshev_u(-k - 2, x);
  }
  Scalar prev(0);
  Scalar cur(1);
  for (int j = 0; j < k; ++j) {
    Scalar next = Scalar(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Direct Bernstein-Szego formula gamma (U_k + alpha U_{k-1} + beta U_{k-2}), with the
/// extra 1 / sqrt(1 - beta) factor at k = 0.
double bernstein_szego_poly(double gamma, double alpha, double beta, int k, double x);

template <typename Scalar>
Scalar poly_eval(const ThreeTermRecurrence& rec, int k, Scalar x) {
  Scalar prev(0);
  Scalar cur(1);
  for (int j = 0; j < k; ++j) {
    const double prev_off = j == 0 ? 0.0 : rec.offdiag(j - 1);
    Scalar next = ((x - rec.diag(j)) * cur - prev_off * prev) / rec.offdiag(j);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// P_0(x), ..., P_kmax(x).
template <typename Scalar>
std::vector<Scalar> poly_eval_all(const ThreeTermRecurrence& rec, int kmax, Scalar x) {
  std::vector<Scalar> values(static_cast<std::size_t>(kmax) + 1);
  values[0] = Scalar(1);
  if (kmax >= 1) values[1] = (x - rec.diag(0)) / rec.offdiag(0);
  for (int j = 1; j < kmax; ++j) {
    values[j + 1] = ((x - rec.diag(j)) * values[j] - rec.offdiag(j - 1) * values[j - 1]) / rec.offdiag(j);
  }
  return values;
}

/// P_k(M) by the matrix form of the recurrence; one matrix product per step.
template <typename Derived>
typename Derived::PlainObject poly_eval_matrix(const ThreeTermRecurrence& rec, int k,
                                               const Eigen::MatrixBase<Derived>& m,
                                               Eigen::Index cap = kDefaultDimensionCap) {
  using Plain = typename Derived::PlainObject;
  if (m.rows() != m.cols()) throw ContractError("poly_eval_matrix: matrix is not square");
  if (m.rows() > cap) {
    throw ResourceError("poly_eval_matrix: dimension " + std::to_string(m.rows()) + " exceeds cap " +
                        std::to_string(cap));
  }
  const Eigen::Index n = m.rows();
  Plain prev = Plain::Zero(n, n);
  Plain cur = Plain::Identity(n, n);
  for (int j = 0; j < k; ++j) {
    const double prev_off = j == 0 ? 0.0 : rec.offdiag(j - 1);
    Plain next = m * cur;
    next -= rec.diag(j) * cur + prev_off * prev;
    next /= rec.offdiag(j);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return (0.5 * (cur + cur.transpose())).eval();
}

struct QuadratureRule {
  int m = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Zeros of P_m, ascending: eigenvalues of the m x m Jacobi truncation. m <= 256.
std::vector<double> jacobi_zeros(const ThreeTermRecurrence& rec, int m);

/// rho_k(x) = 1 / sum_{i<=k} P_i(x)^2.
double christoffel(const ThreeTermRecurrence& rec, int k, double x);

/// B_k = max_{[-1,1]} |P_k|; the family must be in canonical form.
double sup_norm(const ThreeTermRecurrence& rec, int k);
/// b_k = max_{[-1,1]} rho_k; the family must be in canonical form.
double max_christoffel(const ThreeTermRecurrence& rec, int k);

/// m-node Gauss-Jacobi rule: nodes at the zeros of P_m, weights rho_{m-1}(node).
QuadratureRule gauss_jacobi(const ThreeTermRecurrence& rec, int m);

struct GrowthReport {
  double min_over_line = 0.0;
  double boundary_value = 0.0;
  bool increasing_beyond_edge = false;
};

/// Shape of an even-degree P_k outside the support: minimum over a wide grid, value at the
/// support edges inflated by (1 + eps), and outward monotonicity past the edges.
/// Only Kesten-McKay and Marchenko-Pastur q families; k even and >= 2; eps in [0, 1].
GrowthReport growth_check(const ThreeTermRecurrence& rec, int k, double eps);

}  // namespace spectral_walks
