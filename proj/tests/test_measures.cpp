#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/graph.hpp"
#include "spectral_walks/measures.hpp"

using namespace spectral_walks;
using std::numbers::pi;

namespace {

// x = a + s^2 absorbs an inverse square-root singularity at a.
double integrate(const LimitMeasure& m, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate([&](double s) { return 2.0 * s * m.density(a + s * s); }, 0.0, std::sqrt(b - a));
}

std::vector<LimitMeasure> corpus() {
  return {LimitMeasure::wigner(),
          LimitMeasure::kesten_mckay(3),
          LimitMeasure::kesten_mckay(10),
          LimitMeasure::kesten_mckay_scaled(5),
          LimitMeasure::marchenko_pastur(0.25),
          LimitMeasure::marchenko_pastur(0.5),
          LimitMeasure::marchenko_pastur(1.0),
          LimitMeasure::marchenko_pastur_scaled(0.5),
          LimitMeasure::godsil_mohar(0.45, 0.55),
          LimitMeasure::bernstein_szego(1.0, 0.3, -0.2)};
}

double km_density_closed(int d, double x) {
  const double r = 4.0 * (d - 1) - x * x;
  if (r <= 0.0) return 0.0;
  return d / (2.0 * pi) * std::sqrt(r) / (d * d - x * x);
}

double mp_density_closed(double xi, double x) {
  const double a = (1 - std::sqrt(xi)) * (1 - std::sqrt(xi));
  const double b = (1 + std::sqrt(xi)) * (1 + std::sqrt(xi));
  if (x <= a || x >= b) return 0.0;
  return std::sqrt((x - a) * (b - x)) / (2.0 * pi * xi * x);
}

// sup |F_e - F| by checking both one-sided limits at every atom and a dense grid in between.
double ks_grid_oracle(const std::vector<double>& atoms, const LimitMeasure& m, int grid) {
  const double n = static_cast<double>(atoms.size());
  auto step = [&](double x) { return (std::upper_bound(atoms.begin(), atoms.end(), x) - atoms.begin()) / n; };
  double best = 0.0;
  const double lo = std::min(atoms.front(), m.support().lo) - 0.1;
  const double hi = std::max(atoms.back(), m.support().hi) + 0.1;
  for (int i = 0; i <= grid; ++i) {
    const double x = lo + (hi - lo) * i / grid;
    best = std::max(best, std::abs(step(x) - m.cdf(x)));
  }
  for (double a : atoms) {
    best = std::max(best, std::abs(step(a) - m.cdf(a)));
    best = std::max(best, std::abs(step(std::nextafter(a, -1e300)) - m.cdf(a)));
  }
  return best;
}

}  // namespace

TEST_CASE("density examples") {
  CHECK(LimitMeasure::wigner().density(0.0) == doctest::Approx(2.0 / pi));
  CHECK(LimitMeasure::wigner().density(2.0) == 0.0);
  const auto mp1 = LimitMeasure::marchenko_pastur(1.0);
  CHECK(mp1.density(4.0) == 0.0);
  for (double x : {1e-4, 1e-6, 1e-8}) {
    CHECK(mp1.density(x) == doctest::Approx(std::sqrt(x * (4 - x)) / (2 * pi * x)).epsilon(1e-9));
  }
  CHECK(LimitMeasure::kesten_mckay(3).density(0.0) == doctest::Approx(std::sqrt(8.0) / (6.0 * pi)).epsilon(1e-13));
}

TEST_CASE("densities match the closed forms") {
  for (int d : {3, 4, 10, 30}) {
    const auto km = LimitMeasure::kesten_mckay(d);
    for (int i = 0; i <= 400; ++i) {
      const double x = -2.2 * std::sqrt(d - 1.0) + 4.4 * std::sqrt(d - 1.0) * i / 400;
      CHECK(km.density(x) == doctest::Approx(km_density_closed(d, x)).epsilon(1e-12));
    }
  }
  for (double xi : {0.1, 0.25, 0.5, 0.8, 1.0}) {
    const auto mp = LimitMeasure::marchenko_pastur(xi);
    for (int i = 1; i < 400; ++i) {
      const double x = 4.5 * i / 400;
      CHECK(mp.density(x) == doctest::Approx(mp_density_closed(xi, x)).epsilon(1e-11));
    }
    const auto scaled = LimitMeasure::marchenko_pastur_scaled(xi);
    for (int i = 1; i < 200; ++i) {
      const double x = -1.0 + 2.0 * i / 200;
      const double expected = 2.0 / pi * std::sqrt(1 - x * x) / ((1 + xi) + 2 * std::sqrt(xi) * x);
      CHECK(scaled.density(x) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("Godsil-Mohar is the pushforward of a Bernstein-Szego measure") {
  const double xi1 = 0.4;
  const double xi2 = 0.5;
  const auto gm = LimitMeasure::godsil_mohar(xi1, xi2);
  const auto bs = LimitMeasure::bernstein_szego(1.0, xi1 / std::sqrt(xi2), 0.0);
  CHECK(gm.support().lo == doctest::Approx(1 - 2 * std::sqrt(xi2) + xi1));
  CHECK(gm.support().hi == doctest::Approx(1 + 2 * std::sqrt(xi2) + xi1));
  const double h = 2 * std::sqrt(xi2);
  for (int i = 1; i < 300; ++i) {
    const double x = -1.0 + 2.0 * i / 300;
    CHECK(gm.density(1 + xi1 + h * x) * h == doctest::Approx(bs.density(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(LimitMeasure::godsil_mohar(0.9, 0.5), ContractError);
}

TEST_CASE("total mass is one") {
  for (const auto& m : corpus()) {
    CAPTURE(m.name());
    CHECK(std::abs(integrate(m, m.support().lo, m.support().hi) - 1.0) <= 1e-9);
  }
}

TEST_CASE("cdf invariants") {
  for (const auto& m : corpus()) {
    CAPTURE(m.name());
    const Interval s = m.support();
    CHECK(m.cdf(s.lo) <= 1e-9);
    CHECK(m.cdf(s.hi) >= 1.0 - 1e-9);
    CHECK(m.cdf(s.lo - 1.0) == 0.0);
    CHECK(m.cdf(s.hi + 1.0) == 1.0);
    double prev = 0.0;
    std::vector<double> xs;
    for (int i = 0; i <= 200; ++i) xs.push_back(s.lo - 0.05 + (s.hi - s.lo + 0.1) * i / 200);
    const auto sorted = m.cdf_sorted(xs);
    for (int i = 0; i <= 200; ++i) {
      const double f = m.cdf(xs[i]);
      CHECK(f >= prev);
      prev = f;
      CHECK(sorted[i] == doctest::Approx(f).epsilon(1e-10));
      if (i % 20 == 5 && xs[i] > s.lo) {
        CHECK(f == doctest::Approx(integrate(m, s.lo, xs[i])).epsilon(1e-9));
      }
    }
  }
  CHECK(LimitMeasure::wigner().cdf(0.0) == doctest::Approx(0.5));
  CHECK(LimitMeasure::kesten_mckay_scaled(3).cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  const double xs[] = {0.3, 0.1};
  CHECK_THROWS_AS(LimitMeasure::wigner().cdf_sorted(xs), ContractError);
}

TEST_CASE("scaled Marchenko-Pastur pushes forward to Marchenko-Pastur") {
  for (double xi : {0.25, 0.5, 1.0}) {
    const auto mp = LimitMeasure::marchenko_pastur(xi);
    const auto scaled = LimitMeasure::marchenko_pastur_scaled(xi);
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 2.0 * i / 100;
      const double t = 1 + xi + 2 * std::sqrt(xi) * x;
      CHECK(std::abs(scaled.cdf(x) - mp.cdf(t)) <= 1e-8);
    }
  }
}

TEST_CASE("moments") {
  const auto w = LimitMeasure::wigner();
  CHECK(moment(w, 0) == doctest::Approx(1.0));
  CHECK(std::abs(moment(w, 1)) < 1e-15);
  boost::math::quadrature::tanh_sinh<double> q;
  const double second = q.integrate([&](double x) { return x * x * w.density(x); }, -1.0, 1.0);
  CHECK(moment(w, 2) == doctest::Approx(second).epsilon(1e-12));
  CHECK(moment(w, 2) == doctest::Approx(0.25));
  const auto mp = LimitMeasure::marchenko_pastur(0.5);
  // Marchenko-Pastur moments: 1, 1, 1 + xi.
  CHECK(moment(mp, 1) == doctest::Approx(1.0));
  CHECK(moment(mp, 2) == doctest::Approx(1.5));
  CHECK_THROWS_AS(moment(w, 41), ContractError);
}

TEST_CASE("Kolmogorov distance to an empirical spectrum") {
  const auto w = LimitMeasure::wigner();
  CHECK(ks_distance_empirical(EmpiricalSpectrum({0.0}), w) == doctest::Approx(0.5));

  // Exact quartiles of the semicircle.
  auto quantile = [&](double p) {
    double a = -1.0;
    double b = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double c = 0.5 * (a + b);
      (w.cdf(c) < p ? a : b) = c;
    }
    return 0.5 * (a + b);
  };
  CHECK(ks_distance_empirical(EmpiricalSpectrum({quantile(0.25), quantile(0.75)}), w) ==
        doctest::Approx(0.25).epsilon(1e-9));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Graph::petersen().adjacency_matrix() / (2.0 * std::sqrt(2.0)));
  std::vector<double> atoms(es.eigenvalues().data(), es.eigenvalues().data() + 10);
  std::sort(atoms.begin(), atoms.end());
  const auto km = LimitMeasure::kesten_mckay_scaled(3);
  const double dk = ks_distance_empirical(EmpiricalSpectrum(atoms), km);
  CHECK(dk > 0.0);
  CHECK(dk < 0.3);
  CHECK(std::abs(dk - ks_grid_oracle(atoms, km, 1000000)) <= 1e-6);

  // Ties: three equal atoms act as a single jump.
  CHECK(ks_distance_empirical(EmpiricalSpectrum({0.0, 0.0, 0.0}), w) == doctest::Approx(0.5));
  CHECK(ks_distance_empirical(EmpiricalSpectrum({-5.0, 0.0, 0.0, 5.0}), w) == doctest::Approx(0.25));
}

TEST_CASE("Kolmogorov distance is invariant under joint rescaling") {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Graph::petersen().adjacency_matrix());
  std::vector<double> atoms(es.eigenvalues().data(), es.eigenvalues().data() + 10);
  const EmpiricalSpectrum e(atoms);
  const auto km = LimitMeasure::kesten_mckay(3);
  const double direct = ks_distance_empirical(e, km);
  const double scaled = ks_distance_empirical(e.rescaled(km.center(), km.halfwidth()), km.canonical());
  CHECK(direct == doctest::Approx(scaled).epsilon(1e-12));
}

TEST_CASE("Kolmogorov distance between measures") {
  const auto w = LimitMeasure::wigner();
  CHECK(ks_distance_measures(w, w) == 0.0);
  CHECK_THROWS_AS(ks_distance_measures(w, w, 10), ContractError);

  const double d10 = ks_distance_measures(LimitMeasure::kesten_mckay_scaled(10), w);
  CHECK(d10 <= 30.0 / 64.0);
  double prev = 1.0;
  for (int d = 3; d <= 50; ++d) {
    const double dk = ks_distance_measures(LimitMeasure::kesten_mckay_scaled(d), w);
    CHECK(dk < prev);
    prev = dk;
    if (d >= 10) CHECK(dk <= 5.0 / d);
  }

  // Grid oracle on a finer uniform grid.
  const auto km = LimitMeasure::kesten_mckay_scaled(4);
  double oracle = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = -1.0 + 2.0 * i / 200000;
    oracle = std::max(oracle, std::abs(km.cdf(x) - w.cdf(x)));
  }
  CHECK(std::abs(ks_distance_measures(km, w) - oracle) <= 1e-5);
}

TEST_CASE("Godsil-Mohar approaches Marchenko-Pastur") {
  for (double xi : {0.25, 0.5}) {
    const auto mp = LimitMeasure::marchenko_pastur(xi);
    for (int n : {50, 100, 400, 1600}) {
      const double big_n = n / xi;
      const double xi1 = (n - 2) / big_n;
      const double xi2 = (n - 1) * (big_n - 1) / (big_n * big_n);
      const double dk = ks_distance_measures(LimitMeasure::godsil_mohar(xi1, xi2), mp);
      CHECK(dk <= 5 * std::abs(xi1 - xi) + 5 * std::abs(xi2 - xi));
    }
  }
}

TEST_CASE("maximum density") {
  CHECK(LimitMeasure::wigner().max_density() == doctest::Approx(2.0 / pi).epsilon(1e-8));
  const auto km = LimitMeasure::kesten_mckay_scaled(3);
  double oracle = 0.0;
  for (int i = 0; i <= 100000; ++i) oracle = std::max(oracle, km.density(-1.0 + 2.0 * i / 100000));
  CHECK(km.max_density() == doctest::Approx(oracle).epsilon(1e-6));
  CHECK(std::isinf(LimitMeasure::marchenko_pastur(1.0).max_density()));
}

TEST_CASE("empirical spectrum") {
  const EmpiricalSpectrum e({3.0, -1.0, 2.0, 2.0});
  CHECK(e.min() == -1.0);
  CHECK(e.max() == 3.0);
  CHECK(e.cdf(2.0) == 0.75);
  CHECK(e.cdf(1.999) == 0.25);
  CHECK(e.rescaled(1.0, 2.0).max() == 1.0);
  CHECK_THROWS_AS(EmpiricalSpectrum({}), ContractError);
  CHECK_THROWS_AS(EmpiricalSpectrum({std::nan("")}), ContractError);
}
