#pragma once

// Limiting spectral measures and Kolmogorov distances.
//
// Every measure here is an affine pushforward t = center + halfwidth * x of a
// Bernstein-Szego probability measure on [-1, 1],
//
//   (2 (1 - beta) / pi) sqrt(1 - x^2) / ((alpha^2 + (1 - beta)^2) + 2 alpha (1 + beta) x + 4 beta x^2) dx,
//
// so a single density/CDF implementation covers Wigner, Kesten-McKay, Marchenko-Pastur and
// Godsil-Mohar. CDFs are integrated in the angle variable x = cos(theta), which removes the
// square-root endpoint behaviour and the x = 0 singularity of Marchenko-Pastur at xi = 1.

#include <span>
#include <string>
#include <vector>

#include "spectral_walks/recurrence.hpp"

namespace spectral_walks {

enum class MeasureKind {
  Wigner,
  KestenMcKay,
  KestenMcKayScaled,
  MarchenkoPastur,
  MarchenkoPasturScaled,
  GodsilMohar,
  BernsteinSzego,
};

class LimitMeasure {
 public:
  /// (2/pi) sqrt(1 - x^2) on [-1, 1].
  static LimitMeasure wigner();
  /// (d / 2 pi) sqrt(4(d-1) - x^2) / (d^2 - x^2) on [-2 sqrt(d-1), 2 sqrt(d-1)].
  static LimitMeasure kesten_mckay(int d);
  /// Kesten-McKay pushed onto [-1, 1].
  static LimitMeasure kesten_mckay_scaled(int d);
  /// Marchenko-Pastur law with ratio xi in (0, 1].
  static LimitMeasure marchenko_pastur(double xi);
  static LimitMeasure marchenko_pastur_scaled(double xi);
  /// Orthogonality measure of q_{k,xi1,xi2}; requires xi1 / sqrt(xi2) < 1.
  static LimitMeasure godsil_mohar(double xi1, double xi2);
  /// Probability-normalised Bernstein-Szego measure on [-1, 1]; gamma only labels the family.
  static LimitMeasure bernstein_szego(double gamma, double alpha, double beta);

  MeasureKind kind() const { return kind_; }
  std::string name() const;
  const Interval& support() const { return support_; }

  double density(double x) const;
  double cdf(double x) const;
  /// CDF at each point of an ascending sequence, integrating piece by piece.
  std::vector<double> cdf_sorted(std::span<const double> xs) const;
  /// sup of the density (infinite for Marchenko-Pastur at xi = 1).
  double max_density() const;

  /// Orthonormal polynomial family of this measure, in the measure's own coordinates.
  ThreeTermRecurrence recurrence() const;
  /// Pushforward onto [-1, 1] by x = (t - center) / halfwidth.
  LimitMeasure canonical() const;

  double center() const { return support_.center(); }
  double halfwidth() const { return support_.halfwidth(); }

  // Canonical Bernstein-Szego parameters.
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  LimitMeasure(MeasureKind kind, double alpha, double beta, Interval support);

  double canonical_density(double y) const;
  double gap_density(double t, double s) const;
  double angular_density(double theta) const;

  MeasureKind kind_;
  double alpha_;
  double beta_;
  Interval support_;
  int d_ = 0;
  double xi1_ = 0.0;
  double xi2_ = 0.0;
  double gamma_ = 1.0;
};

/// integral of x^k against the measure via its own (k+2)-node Gauss rule; k <= 40.
double moment(const LimitMeasure& measure, int k);

/// Eigenvalues of a symmetric matrix, ascending, with the normalised counting CDF.
class EmpiricalSpectrum {
 public:
  explicit EmpiricalSpectrum(std::vector<double> eigenvalues);

  std::size_t size() const { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double min() const { return eigenvalues_.front(); }
  double max() const { return eigenvalues_.back(); }

  /// #{lambda_i <= x} / n.
  double cdf(double x) const;
  /// Spectrum of (M - center) / halfwidth.
  EmpiricalSpectrum rescaled(double center, double halfwidth) const;

 private:
  std::vector<double> eigenvalues_;
};

/// Exact sup_x |F_e(x) - F(x)| for a step CDF against a continuous one.
double ks_distance_empirical(const EmpiricalSpectrum& e, const LimitMeasure& measure);

/// sup_x |F_a(x) - F_b(x)| on a uniform grid over the union of supports, refined near the
/// maximiser. grid >= 1000.
double ks_distance_measures(const LimitMeasure& a, const LimitMeasure& b, int grid = 10000);

}  // namespace spectral_walks
