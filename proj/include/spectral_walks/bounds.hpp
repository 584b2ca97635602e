#pragma once

// Chebyshev-Markov-Stieltjes stability certificates and the Monte-Carlo tail experiment.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "spectral_walks/measures.hpp"
#include "spectral_walks/recurrence.hpp"

namespace spectral_walks {

/// d_K(mu, sigma) <= 2 b_{m-1} + (1 + m^4 b_{m-1}^2 B_m^4) sqrt(sum eps_k^2) whenever
/// |int P_k dmu| <= eps_k for 1 <= k <= 2m-2.
struct CmsCertificate {
  ThreeTermRecurrence family;
  int m = 0;
  std::vector<double> epsilons;
  double b_prev = 0.0;  // b_{m-1}
  double sup_m = 0.0;   // B_m
  double bound = 0.0;
};

/// family must be canonical, m >= 2, epsilons of length 2m-2 and non-negative.
CmsCertificate cms_bound(const ThreeTermRecurrence& family, int m, std::vector<double> epsilons);

/// eps_k = |sum_i P_k(lambda_i)| / n for k = 1..2m-2, with the spectrum already on [-1, 1].
std::vector<double> epsilons_from_spectrum(const ThreeTermRecurrence& family, const EmpiricalSpectrum& e, int m);

struct Certification {
  CmsCertificate certificate;
  double actual = 0.0;          // d_K(mu_M, measure)
  bool spectrum_inside = false;  // every rescaled eigenvalue lies in [-1, 1]
};

/// Rescales the spectrum of M to the canonical support of measure and compares the
/// certificate with the measured Kolmogorov distance.
Certification certify(const LimitMeasure& measure, const Eigen::MatrixXd& m, int deg);
Certification certify(const LimitMeasure& measure, const EmpiricalSpectrum& e, int deg);

/// Polynomial in Newton form: c_0 + c_1 (x - z_0) + c_2 (x - z_0)(x - z_1) + ...
struct NewtonPolynomial {
  std::vector<double> centers;
  std::vector<double> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double operator()(double x) const;
  double derivative(double x) const;
};

struct MarkovStieltjes {
  std::vector<double> nodes;  // zeros of P_m
  NewtonPolynomial r;         // 1 at nodes 1..s, 0 after, flat at every node but s
  NewtonPolynomial s;         // 1 at nodes 1..s-1, 0 after, flat at every node but s
  NewtonPolynomial ell;       // Lagrange basis polynomial of node s
  double residual = 0.0;      // worst interpolation-condition violation
};

/// Hermite interpolants R >= 1_{(-inf, kappa_s]} >= S of degree <= 2m-2, with R - S = ell^2.
/// m <= 40, 1 <= s <= m; throws NumericError when the conditions are violated by more than 1e-7.
MarkovStieltjes markov_stieltjes_polys(const ThreeTermRecurrence& family, int m, int s);

enum class TailEnsemble { Wigner, Covariance };

struct TailConfig {
  TailEnsemble ensemble = TailEnsemble::Wigner;
  int n = 100;
  int N = 200;  // covariance only
  int k = 8;
  double eps = 0.15;
  int trials = 100;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct TailTrial {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double norm = 0.0;
  double trace = 0.0;  // sum_i p_{k,n-1}(lambda_i(signs)) or sum_i q_k(lambda_i(C))
  bool exceeded = false;
};

struct TailResult {
  std::vector<TailTrial> trials;
  int exceed_count = 0;
  double trace_mean = 0.0;
  double trace_median = 0.0;
  double trace_q90 = 0.0;
  double trace_max = 0.0;
};

/// Wigner: counts ||A|| >= 1 + eps. Covariance: counts spectra of C = B B^t leaving
/// [(1 - sqrt xi)^2 - eps, (1 + sqrt xi)^2 + eps], xi = n / N.
/// Trial t uses trial_seed(seed, t); results do not depend on the thread count.
TailResult tail_experiment(const TailConfig& config);

/// Linear-interpolated quantile of unsorted data, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace spectral_walks
