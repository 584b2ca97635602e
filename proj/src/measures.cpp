#include "spectral_walks/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "numeric_detail.hpp"

namespace spectral_walks {

namespace {

constexpr double kCdfTol = 1e-11;
constexpr double kPieceTol = 1e-13;

}  // namespace

LimitMeasure::LimitMeasure(MeasureKind kind, double alpha, double beta, Interval support)
    : kind_(kind), alpha_(alpha), beta_(beta), support_(support) {}

LimitMeasure LimitMeasure::wigner() { return LimitMeasure(MeasureKind::Wigner, 0.0, 0.0, {-1.0, 1.0}); }

LimitMeasure LimitMeasure::kesten_mckay(int d) {
  if (d < 3) throw ContractError("kesten_mckay: degree d must be >= 3, got " + std::to_string(d));
  const double edge = 2.0 * std::sqrt(d - 1.0);
  LimitMeasure m(MeasureKind::KestenMcKay, 0.0, -1.0 / (d - 1.0), {-edge, edge});
  m.d_ = d;
  return m;
}

LimitMeasure LimitMeasure::kesten_mckay_scaled(int d) { return kesten_mckay(d).canonical(); }

LimitMeasure LimitMeasure::marchenko_pastur(double xi) {
  if (!(xi > 0.0 && xi <= 1.0)) throw ContractError("marchenko_pastur: xi must lie in (0, 1]");
  const double r = std::sqrt(xi);
  LimitMeasure m(MeasureKind::MarchenkoPastur, r, 0.0, {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)});
  m.xi1_ = xi;
  m.xi2_ = xi;
  return m;
}

LimitMeasure LimitMeasure::marchenko_pastur_scaled(double xi) { return marchenko_pastur(xi).canonical(); }

LimitMeasure LimitMeasure::godsil_mohar(double xi1, double xi2) {
  if (!(xi2 > 0.0) || !std::isfinite(xi1)) throw ContractError("godsil_mohar: need finite xi1 and xi2 > 0");
  const double r = std::sqrt(xi2);
  const double alpha = xi1 / r;
  if (!(std::abs(alpha) < 1.0)) {
    throw ContractError("godsil_mohar: need |xi1 / sqrt(xi2)| < 1 for a measure without atoms");
  }
  LimitMeasure m(MeasureKind::GodsilMohar, alpha, 0.0, {1.0 + xi1 - 2.0 * r, 1.0 + xi1 + 2.0 * r});
  m.xi1_ = xi1;
  m.xi2_ = xi2;
  return m;
}

LimitMeasure LimitMeasure::bernstein_szego(double gamma, double alpha, double beta) {
  // Validates the parameters.
  (void)ThreeTermRecurrence::bernstein_szego(gamma, alpha, beta);
  LimitMeasure m(MeasureKind::BernsteinSzego, alpha, beta, {-1.0, 1.0});
  m.gamma_ = gamma;
  return m;
}

std::string LimitMeasure::name() const {
  std::ostringstream out;
  switch (kind_) {
    case MeasureKind::Wigner:
      out << "wigner";
      break;
    case MeasureKind::KestenMcKay:
      out << "kesten-mckay(d=" << d_ << ")";
      break;
    case MeasureKind::KestenMcKayScaled:
      out << "kesten-mckay-scaled(d=" << d_ << ")";
      break;
    case MeasureKind::MarchenkoPastur:
      out << "marchenko-pastur(xi=" << xi1_ << ")";
      break;
    case MeasureKind::MarchenkoPasturScaled:
      out << "marchenko-pastur-scaled(xi=" << xi1_ << ")";
      break;
    case MeasureKind::GodsilMohar:
      out << "godsil-mohar(xi1=" << xi1_ << ",xi2=" << xi2_ << ")";
      break;
    case MeasureKind::BernsteinSzego:
      out << "bernstein-szego(gamma=" << gamma_ << ",alpha=" << alpha_ << ",beta=" << beta_ << ")";
      break;
  }
  return out.str();
}

double LimitMeasure::canonical_density(double y) const { return gap_density(1.0 + y, 1.0 - y); }

// Density at y with t = 1 + y and s = 1 - y; the denominator is expanded about the nearer
// endpoint so poles at y = -1 or y = 1 keep full relative accuracy.
double LimitMeasure::gap_density(double t, double s) const {
  if (!(t > 0.0 && s > 0.0)) return 0.0;
  const double c2 = 4.0 * beta_;
  const double c1 = 2.0 * alpha_ * (1.0 + beta_);
  const double denom = t <= s ? (alpha_ - 1.0 - beta_) * (alpha_ - 1.0 - beta_) + (c1 - 2.0 * c2) * t + c2 * t * t
                              : (alpha_ + 1.0 + beta_) * (alpha_ + 1.0 + beta_) - (c1 + 2.0 * c2) * s + c2 * s * s;
  return 2.0 * (1.0 - beta_) / std::numbers::pi * std::sqrt(t * s) / denom;
}

double LimitMeasure::angular_density(double theta) const {
  const double y = std::cos(theta);
  const double s = std::sin(theta);
  const double denom =
      (alpha_ * alpha_ + (1.0 - beta_) * (1.0 - beta_)) + 2.0 * alpha_ * (1.0 + beta_) * y + 4.0 * beta_ * y * y;
  if (denom <= 0.0) {
    // Endpoint with a root on the unit circle (beta = 0, |alpha| = 1): sin^2 / denom -> (1 - alpha y) / 2.
    return 2.0 / std::numbers::pi * (1.0 - alpha_ * y) / 2.0;
  }
  return 2.0 * (1.0 - beta_) / std::numbers::pi * s * s / denom;
}

double LimitMeasure::density(double x) const {
  const double h = support_.halfwidth();
  return gap_density((x - support_.lo) / h, (support_.hi - x) / h) / h;
}

double LimitMeasure::cdf(double x) const {
  const double y = (x - support_.center()) / support_.halfwidth();
  if (y <= -1.0) return 0.0;
  if (y >= 1.0) return 1.0;
  if (kind_ == MeasureKind::Wigner) {
    return 0.5 + (y * std::sqrt(1.0 - y * y) + std::asin(y)) / std::numbers::pi;
  }
  const double theta = std::acos(y);
  const double value =
      detail::adaptive_simpson([this](double t) { return angular_density(t); }, theta, std::numbers::pi, kCdfTol);
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> LimitMeasure::cdf_sorted(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  if (!std::is_sorted(xs.begin(), xs.end())) throw ContractError("cdf_sorted: points must be ascending");
  if (kind_ == MeasureKind::Wigner) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = cdf(xs[i]);
    return out;
  }
  const auto g = [this](double t) { return angular_density(t); };
  double theta_prev = std::numbers::pi;
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = (xs[i] - support_.center()) / support_.halfwidth();
    if (y <= -1.0) {
      out[i] = 0.0;
      continue;
    }
    const double theta = y >= 1.0 ? 0.0 : std::acos(y);
    if (theta < theta_prev) {
      acc += detail::adaptive_simpson(g, theta, theta_prev, kPieceTol);
      theta_prev = theta;
    }
    out[i] = std::clamp(acc, 0.0, 1.0);
  }
  return out;
}

double LimitMeasure::max_density() const {
  if (beta_ == 0.0 && std::abs(alpha_) >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
  const double peak = detail::maximize_on_unit_interval([this](double y) { return canonical_density(y); }, 2000);
  return peak / support_.halfwidth();
}

ThreeTermRecurrence LimitMeasure::recurrence() const {
  switch (kind_) {
    case MeasureKind::Wigner:
      return ThreeTermRecurrence::chebyshev_u();
    case MeasureKind::KestenMcKay:
      return ThreeTermRecurrence::kesten_mckay(d_);
    case MeasureKind::KestenMcKayScaled:
      return ThreeTermRecurrence::kesten_mckay(d_).canonical();
    case MeasureKind::MarchenkoPastur:
      return ThreeTermRecurrence::marchenko_pastur_q(xi1_, xi2_);
    case MeasureKind::MarchenkoPasturScaled:
      return ThreeTermRecurrence::marchenko_pastur_q(xi1_, xi2_).canonical();
    case MeasureKind::GodsilMohar:
      return ThreeTermRecurrence::marchenko_pastur_q(xi1_, xi2_);
    case MeasureKind::BernsteinSzego:
      return ThreeTermRecurrence::bernstein_szego(gamma_, alpha_, beta_);
  }
  throw ContractError("recurrence: unknown measure kind");
}

LimitMeasure LimitMeasure::canonical() const {
  LimitMeasure out = *this;
  out.support_ = {-1.0, 1.0};
  switch (kind_) {
    case MeasureKind::KestenMcKay:
      out.kind_ = MeasureKind::KestenMcKayScaled;
      break;
    case MeasureKind::MarchenkoPastur:
      out.kind_ = MeasureKind::MarchenkoPasturScaled;
      break;
    case MeasureKind::GodsilMohar:
      out.kind_ = MeasureKind::BernsteinSzego;
      out.gamma_ = 1.0;
      break;
    default:
      break;
  }
  return out;
}

double moment(const LimitMeasure& measure, int k) {
  if (k < 0 || k > 40) throw ContractError("moment: k must be in [0, 40], got " + std::to_string(k));
  const QuadratureRule rule = gauss_jacobi(measure.recurrence(), k + 2);
  return rule.integrate([k](double x) { return std::pow(x, k); });
}

EmpiricalSpectrum::EmpiricalSpectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw ContractError("EmpiricalSpectrum: need at least one eigenvalue");
  for (double v : eigenvalues_) {
    if (!std::isfinite(v)) throw ContractError("EmpiricalSpectrum: eigenvalues must be finite");
  }
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

double EmpiricalSpectrum::cdf(double x) const {
  const auto count = std::upper_bound(eigenvalues_.begin(), eigenvalues_.end(), x) - eigenvalues_.begin();
  return static_cast<double>(count) / static_cast<double>(eigenvalues_.size());
}

EmpiricalSpectrum EmpiricalSpectrum::rescaled(double center, double halfwidth) const {
  if (!(halfwidth > 0.0)) throw ContractError("EmpiricalSpectrum::rescaled: halfwidth must be positive");
  std::vector<double> out(eigenvalues_.size());
  std::transform(eigenvalues_.begin(), eigenvalues_.end(), out.begin(),
                 [&](double v) { return (v - center) / halfwidth; });
  return EmpiricalSpectrum(std::move(out));
}

double ks_distance_empirical(const EmpiricalSpectrum& e, const LimitMeasure& measure) {
  const auto& values = e.eigenvalues();
  const double n = static_cast<double>(values.size());
  std::vector<double> distinct;
  std::vector<std::size_t> upto;  // #{lambda <= distinct[j]}
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (distinct.empty() || values[i] != distinct.back()) {
      distinct.push_back(values[i]);
      upto.push_back(i + 1);
    } else {
      upto.back() = i + 1;
    }
  }
  const std::vector<double> f = measure.cdf_sorted(distinct);
  double best = 0.0;
  std::size_t below = 0;
  for (std::size_t j = 0; j < distinct.size(); ++j) {
    best = std::max({best, std::abs(static_cast<double>(upto[j]) / n - f[j]),
                     std::abs(f[j] - static_cast<double>(below) / n)});
    below = upto[j];
  }
  return best;
}

double ks_distance_measures(const LimitMeasure& a, const LimitMeasure& b, int grid) {
  if (grid < 1000) throw ContractError("ks_distance_measures: grid must be >= 1000");
  const double lo = std::min(a.support().lo, b.support().lo);
  const double hi = std::max(a.support().hi, b.support().hi);
  const double step = (hi - lo) / grid;
  std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) xs[i] = lo + step * i;
  xs.back() = hi;
  const std::vector<double> fa = a.cdf_sorted(xs);
  const std::vector<double> fb = b.cdf_sorted(xs);
  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double diff = std::abs(fa[i] - fb[i]);
    if (diff > best) {
      best = diff;
      arg = i;
    }
  }
  if (best == 0.0) return 0.0;
  auto gap = [&](double x) { return std::abs(a.cdf(x) - b.cdf(x)); };
  const double left = xs[arg == 0 ? 0 : arg - 1];
  const double right = xs[std::min(arg + 1, xs.size() - 1)];
  return std::max(best, detail::golden_max(gap, left, right));
}

}  // namespace spectral_walks
