#include "spectral_walks/recurrence.hpp"

#include "numeric_detail.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace spectral_walks {

namespace {

constexpr double kCanonicalTol = 1e-12;

void require_canonical(const ThreeTermRecurrence& rec, const char* what) {
  if (!rec.is_canonical()) {
    throw ContractError(std::string(what) + ": family " + rec.name() + " is not on [-1, 1]; use canonical()");
  }
}

}  // namespace

ThreeTermRecurrence::ThreeTermRecurrence(FamilyKind kind, double diag0, double diag, double off0, double off,
                                         Interval support)
    : kind_(kind), diag0_(diag0), diag_(diag), off0_(off0), off_(off), support_(support) {
  if (!(off0_ > 0.0) || !(off_ > 0.0)) throw ContractError("three-term recurrence: off-diagonal must be positive");
}

ThreeTermRecurrence ThreeTermRecurrence::chebyshev_u() {
  return ThreeTermRecurrence(FamilyKind::ChebyshevU, 0.0, 0.0, 0.5, 0.5, {-1.0, 1.0});
}

ThreeTermRecurrence ThreeTermRecurrence::kesten_mckay(int d) {
  if (d < 3) throw ContractError("kesten_mckay: degree d must be >= 3, got " + std::to_string(d));
  const double edge = 2.0 * std::sqrt(d - 1.0);
  ThreeTermRecurrence rec(FamilyKind::KestenMcKay, 0.0, 0.0, std::sqrt(static_cast<double>(d)), std::sqrt(d - 1.0),
                          {-edge, edge});
  rec.d_ = d;
  return rec;
}

ThreeTermRecurrence ThreeTermRecurrence::marchenko_pastur_q(double xi1, double xi2) {
  if (!(xi2 > 0.0) || !std::isfinite(xi1) || !std::isfinite(xi2)) {
    throw ContractError("marchenko_pastur_q: need finite xi1 and xi2 > 0");
  }
  const double root = std::sqrt(xi2);
  ThreeTermRecurrence rec(FamilyKind::MarchenkoPasturQ, 1.0, 1.0 + xi1, root, root,
                          {1.0 + xi1 - 2.0 * root, 1.0 + xi1 + 2.0 * root});
  rec.xi1_ = xi1;
  rec.xi2_ = xi2;
  return rec;
}

ThreeTermRecurrence ThreeTermRecurrence::bernstein_szego(double gamma, double alpha, double beta) {
  if (!(gamma > 0.0)) throw ContractError("bernstein_szego: gamma must be positive");
  if (!(beta < 1.0)) throw ContractError("bernstein_szego: beta must be < 1");
  // The weight is 1 / |1 + alpha z + beta z^2|^2 on |z| = 1; orthonormality needs the roots of
  // that quadratic outside the open unit disc (a root on the circle is an integrable endpoint
  // singularity and is allowed).
  std::vector<std::complex<double>> roots;
  if (beta == 0.0) {
    if (alpha != 0.0) roots.emplace_back(-1.0 / alpha);
  } else {
    const std::complex<double> disc = std::sqrt(std::complex<double>(alpha * alpha - 4.0 * beta));
    roots.push_back((-alpha + disc) / (2.0 * beta));
    roots.push_back((-alpha - disc) / (2.0 * beta));
  }
  for (const auto& r : roots) {
    if (std::abs(r) < 1.0 - 1e-12) {
      throw ContractError("bernstein_szego: 1 + alpha z + beta z^2 has a root inside the unit disc");
    }
  }
  for (int j = 1; j < 1000; ++j) {
    const double x = -std::cos(std::numbers::pi * j / 1000.0);
    const double denom = (alpha * alpha + (1.0 - beta) * (1.0 - beta)) + 2.0 * alpha * (1.0 + beta) * x + 4.0 * beta * x * x;
    if (!(denom > 0.0)) throw ContractError("bernstein_szego: denominator not positive on [-1, 1]");
  }
  ThreeTermRecurrence rec(FamilyKind::BernsteinSzego, -alpha / 2.0, 0.0, std::sqrt(1.0 - beta) / 2.0, 0.5,
                          {-1.0, 1.0});
  rec.gamma_ = gamma;
  rec.alpha_ = alpha;
  rec.beta_ = beta;
  return rec;
}

std::string ThreeTermRecurrence::name() const {
  std::ostringstream out;
  switch (kind_) {
    case FamilyKind::ChebyshevU:
      out << "chebyshev-u";
      break;
    case FamilyKind::KestenMcKay:
      out << "kesten-mckay(d=" << d_ << ")";
      break;
    case FamilyKind::MarchenkoPasturQ:
      out << "marchenko-pastur-q(xi1=" << xi1_ << ",xi2=" << xi2_ << ")";
      break;
    case FamilyKind::BernsteinSzego:
      out << "bernstein-szego(gamma=" << gamma_ << ",alpha=" << alpha_ << ",beta=" << beta_ << ")";
      break;
  }
  if (is_canonical() && kind_ != FamilyKind::ChebyshevU && kind_ != FamilyKind::BernsteinSzego) out << "[scaled]";
  return out.str();
}

bool ThreeTermRecurrence::is_canonical() const {
  return std::abs(support_.lo + 1.0) < kCanonicalTol && std::abs(support_.hi - 1.0) < kCanonicalTol;
}

ThreeTermRecurrence ThreeTermRecurrence::canonical() const {
  ThreeTermRecurrence out = *this;
  const double c = support_.center();
  const double h = support_.halfwidth();
  out.diag0_ = (diag0_ - c) / h;
  out.diag_ = (diag_ - c) / h;
  out.off0_ = off0_ / h;
  out.off_ = off_ / h;
  out.support_ = {-1.0, 1.0};
  return out;
}

double ThreeTermRecurrence::leading_coefficient(int k) const {
  double g = 1.0;
  for (int j = 0; j < k; ++j) g /= offdiag(j);
  return g;
}

double bernstein_szego_poly(double gamma, double alpha, double beta, int k, double x) {
  const double combo = chebyshev_u(k, x) + alpha * chebyshev_u(k - 1, x) + beta * chebyshev_u(k - 2, x);
  return k == 0 ? gamma / std::sqrt(1.0 - beta) * combo : gamma * combo;
}

std::vector<double> jacobi_zeros(const ThreeTermRecurrence& rec, int m) {
  if (m < 1 || m > 256) throw ContractError("jacobi_zeros: m must be in [1, 256], got " + std::to_string(m));
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int j = 0; j < m; ++j) diag[j] = rec.diag(j);
  for (int j = 0; j + 1 < m; ++j) sub[j] = rec.offdiag(j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("jacobi_zeros: tridiagonal QL iteration did not converge within " +
                       std::to_string(30 * m) + " iterations");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> zeros(ev.data(), ev.data() + ev.size());
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

double christoffel(const ThreeTermRecurrence& rec, int k, double x) {
  const std::vector<double> values = poly_eval_all(rec, k, x);
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return 1.0 / sum;
}

double sup_norm(const ThreeTermRecurrence& rec, int k) {
  require_canonical(rec, "sup_norm");
  return detail::maximize_on_unit_interval([&](double x) { return std::abs(poly_eval(rec, k, x)); },
                                   32 * std::max(k, 1));
}

double max_christoffel(const ThreeTermRecurrence& rec, int k) {
  require_canonical(rec, "max_christoffel");
  return detail::maximize_on_unit_interval([&](double x) { return christoffel(rec, k, x); }, 32 * std::max(k, 1));
}

QuadratureRule gauss_jacobi(const ThreeTermRecurrence& rec, int m) {
  QuadratureRule rule;
  rule.m = m;
  rule.nodes = jacobi_zeros(rec, m);
  rule.weights.reserve(rule.nodes.size());
  for (double node : rule.nodes) rule.weights.push_back(christoffel(rec, m - 1, node));
  return rule;
}

GrowthReport growth_check(const ThreeTermRecurrence& rec, int k, double eps) {
  if (rec.kind() != FamilyKind::KestenMcKay && rec.kind() != FamilyKind::MarchenkoPasturQ) {
    throw ContractError("growth_check: only Kesten-McKay and Marchenko-Pastur q families are supported");
  }
  if (k < 2 || k % 2 != 0) throw ContractError("growth_check: k must be even and >= 2, got " + std::to_string(k));
  if (!(eps >= 0.0 && eps <= 1.0)) throw ContractError("growth_check: eps must lie in [0, 1]");

  constexpr int kPoints = 10000;
  const double c = rec.support().center();
  const double h = rec.support().halfwidth();
  const double lo = c - 3.0 * h;
  const double step = 6.0 * h / (kPoints - 1);

  GrowthReport report;
  report.min_over_line = std::numeric_limits<double>::infinity();
  report.increasing_beyond_edge = true;
  double prev_t = 0.0;
  double prev_v = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = lo + step * i;
    const double v = poly_eval(rec, k, t);
    report.min_over_line = std::min(report.min_over_line, v);
    if (i > 0) {
      if (prev_t >= c + h && !(v > prev_v)) report.increasing_beyond_edge = false;
      if (t <= c - h && !(prev_v > v)) report.increasing_beyond_edge = false;
    }
    prev_t = t;
    prev_v = v;
  }
  const double inside = -detail::maximize_on_unit_interval(
      [&](double x) { return -poly_eval(rec, k, c + h * x); }, std::max(64 * k, 1024));
  report.min_over_line = std::min(report.min_over_line, inside);
  report.boundary_value = std::min(poly_eval(rec, k, c + h * (1.0 + eps)), poly_eval(rec, k, c - h * (1.0 + eps)));
  return report;
}

}  // namespace spectral_walks
