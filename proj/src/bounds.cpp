#include "spectral_walks/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "spectral_walks/ensembles.hpp"
#include "spectral_walks/errors.hpp"
#include "spectral_walks/parallel.hpp"
#include "spectral_walks/rng.hpp"
#include "spectral_walks/spectra.hpp"

namespace spectral_walks {

namespace {

constexpr int kMaxHermiteDegree = 40;

struct HermiteDatum {
  double z;
  double value;
  double slope;
  bool doubled;
};

// Newton form of the Hermite interpolant through simple and doubled nodes. Distinct nodes are
// taken in Leja order, which keeps the divided differences well scaled.
NewtonPolynomial hermite(std::vector<HermiteDatum> data) {
  std::vector<HermiteDatum> ordered;
  ordered.reserve(data.size());
  while (!data.empty()) {
    std::size_t pick = 0;
    if (ordered.empty()) {
      for (std::size_t i = 1; i < data.size(); ++i) {
        if (std::abs(data[i].z) > std::abs(data[pick].z)) pick = i;
      }
    } else {
      double best = -1.0;
      for (std::size_t i = 0; i < data.size(); ++i) {
        double product = 1.0;
        for (const auto& d : ordered) product *= std::abs(data[i].z - d.z);
        if (product > best) {
          best = product;
          pick = i;
        }
      }
    }
    ordered.push_back(data[pick]);
    data.erase(data.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  std::vector<double> z;
  std::vector<double> f;
  std::vector<double> slope;
  for (const auto& d : ordered) {
    const int copies = d.doubled ? 2 : 1;
    for (int c = 0; c < copies; ++c) {
      z.push_back(d.z);
      f.push_back(d.value);
      slope.push_back(d.slope);
    }
  }
  const std::size_t n = z.size();
  std::vector<double> table = f;
  std::vector<double> coefficients{table[0]};
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const double gap = z[i] - z[i - j];
      table[i] = gap == 0.0 ? slope[i] : (table[i] - table[i - 1]) / gap;
    }
    coefficients.push_back(table[j]);
  }
  z.pop_back();
  return NewtonPolynomial{std::move(z), std::move(coefficients)};
}

}  // namespace

CmsCertificate cms_bound(const ThreeTermRecurrence& family, int m, std::vector<double> epsilons) {
  if (m < 2) throw ContractError("cms_bound: need m >= 2");
  if (!family.is_canonical()) throw ContractError("cms_bound: family must be on [-1, 1]");
  if (static_cast<int>(epsilons.size()) != 2 * m - 2) {
    throw ContractError("cms_bound: expected " + std::to_string(2 * m - 2) + " epsilons, got " +
                        std::to_string(epsilons.size()));
  }
  double sum_sq = 0.0;
  for (double e : epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw ContractError("cms_bound: epsilons must be finite and >= 0");
    sum_sq += e * e;
  }
  CmsCertificate cert{family, m, std::move(epsilons), 0.0, 0.0, 0.0};
  cert.b_prev = max_christoffel(family, m - 1);
  cert.sup_m = sup_norm(family, m);
  const double md = m;
  const double b = cert.b_prev;
  const double big_b = cert.sup_m;
  const double amplification = 1.0 + md * md * md * md * b * b * big_b * big_b * big_b * big_b;
  cert.bound = 2.0 * b;
  if (sum_sq > 0.0) cert.bound += amplification * std::sqrt(sum_sq);
  return cert;
}

std::vector<double> epsilons_from_spectrum(const ThreeTermRecurrence& family, const EmpiricalSpectrum& e, int m) {
  if (m < 2) throw ContractError("epsilons_from_spectrum: need m >= 2");
  const int top = 2 * m - 2;
  std::vector<double> sums(static_cast<std::size_t>(top) + 1, 0.0);
  for (double lambda : e.eigenvalues()) {
    const auto values = poly_eval_all(family, top, lambda);
    for (int k = 1; k <= top; ++k) sums[k] += values[k];
  }
  std::vector<double> eps(static_cast<std::size_t>(top));
  for (int k = 1; k <= top; ++k) eps[k - 1] = std::abs(sums[k]) / static_cast<double>(e.size());
  return eps;
}

Certification certify(const LimitMeasure& measure, const EmpiricalSpectrum& e, int deg) {
  const LimitMeasure canonical = measure.canonical();
  const ThreeTermRecurrence family = canonical.recurrence();
  const EmpiricalSpectrum rescaled = e.rescaled(measure.center(), measure.halfwidth());
  Certification out{cms_bound(family, deg, epsilons_from_spectrum(family, rescaled, deg)), 0.0, false};
  out.actual = ks_distance_empirical(rescaled, canonical);
  out.spectrum_inside = rescaled.min() >= -1.0 && rescaled.max() <= 1.0;
  return out;
}

Certification certify(const LimitMeasure& measure, const Eigen::MatrixXd& m, int deg) {
  return certify(measure, empirical(m), deg);
}

double NewtonPolynomial::operator()(double x) const {
  double p = coefficients.back();
  for (int i = degree() - 1; i >= 0; --i) p = p * (x - centers[i]) + coefficients[i];
  return p;
}

double NewtonPolynomial::derivative(double x) const {
  double p = coefficients.back();
  double dp = 0.0;
  for (int i = degree() - 1; i >= 0; --i) {
    dp = dp * (x - centers[i]) + p;
    p = p * (x - centers[i]) + coefficients[i];
  }
  return dp;
}

MarkovStieltjes markov_stieltjes_polys(const ThreeTermRecurrence& family, int m, int s) {
  if (m < 1 || m > kMaxHermiteDegree) throw ContractError("markov_stieltjes_polys: need 1 <= m <= 40");
  if (s < 1 || s > m) throw ContractError("markov_stieltjes_polys: need 1 <= s <= m");
  MarkovStieltjes out;
  out.nodes = jacobi_zeros(family, m);
  std::vector<HermiteDatum> r_data;
  std::vector<HermiteDatum> s_data;
  std::vector<HermiteDatum> ell_data;
  for (int t = 1; t <= m; ++t) {
    const double z = out.nodes[t - 1];
    const bool doubled = t != s;
    r_data.push_back({z, t <= s ? 1.0 : 0.0, 0.0, doubled});
    s_data.push_back({z, t < s ? 1.0 : 0.0, 0.0, doubled});
    ell_data.push_back({z, t == s ? 1.0 : 0.0, 0.0, false});
  }
  out.r = hermite(r_data);
  out.s = hermite(s_data);
  out.ell = hermite(ell_data);

  double residual = 0.0;
  auto check = [&residual](const NewtonPolynomial& p, const std::vector<HermiteDatum>& data) {
    for (const auto& d : data) {
      residual = std::max(residual, std::abs(p(d.z) - d.value));
      if (d.doubled) residual = std::max(residual, std::abs(p.derivative(d.z) - d.slope));
    }
  };
  check(out.r, r_data);
  check(out.s, s_data);
  check(out.ell, ell_data);
  out.residual = residual;
  if (!(residual <= 1e-7)) {
    double largest = 0.0;
    for (double c : out.r.coefficients) largest = std::max(largest, std::abs(c));
    throw NumericError("markov_stieltjes_polys: interpolation residual " + std::to_string(residual) +
                       " (largest Newton coefficient " + std::to_string(largest) + ")");
  }
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

TailResult tail_experiment(const TailConfig& config) {
  const bool wigner = config.ensemble == TailEnsemble::Wigner;
  if (config.k < 2 || config.k % 2 != 0) throw ContractError("tail_experiment: k must be even and >= 2");
  if (!(config.eps >= 0.0 && config.eps <= 1.0)) throw ContractError("tail_experiment: eps must lie in [0, 1]");
  if (config.trials < 1 || config.trials > 10000) throw ContractError("tail_experiment: trials must lie in [1, 10000]");
  if (wigner && config.n < 4) throw ContractError("tail_experiment: wigner needs n >= 4");
  if (!wigner && (config.n < 2 || config.n > config.N)) {
    throw ContractError("tail_experiment: covariance needs 2 <= n <= N");
  }

  const double n = config.n;
  const double big_n = config.N;
  const double xi = n / big_n;
  const ThreeTermRecurrence family =
      wigner ? ThreeTermRecurrence::kesten_mckay(config.n - 1)
             : ThreeTermRecurrence::marchenko_pastur_q((n - 2.0) / big_n, (n - 1.0) * (big_n - 1.0) / (big_n * big_n));
  const double lower = (1.0 - std::sqrt(xi)) * (1.0 - std::sqrt(xi)) - config.eps;
  const double upper = (1.0 + std::sqrt(xi)) * (1.0 + std::sqrt(xi)) + config.eps;

  TailResult result;
  result.trials.resize(static_cast<std::size_t>(config.trials));
  for_each_index(config.trials, config.threads, [&](int t) {
    const std::uint64_t seed = trial_seed(config.seed, static_cast<std::uint64_t>(t));
    TailTrial& trial = result.trials[t];
    if (wigner) {
      const Eigen::MatrixXd a = wigner_matrix(config.n, seed);
      const EmpiricalSpectrum e = empirical(a);
      trial.lambda_min = e.min();
      trial.lambda_max = e.max();
      trial.norm = operator_norm(e);
      trial.exceeded = trial.norm >= 1.0 + config.eps;
      trial.trace = trace_poly(family, config.k, empirical(split_wigner(a).signs.dense()));
    } else {
      const EmpiricalSpectrum e = empirical(covariance(rect_sign_matrix(config.n, config.N, seed)));
      trial.lambda_min = e.min();
      trial.lambda_max = e.max();
      trial.norm = operator_norm(e);
      trial.exceeded = e.min() < lower || e.max() > upper;
      trial.trace = trace_poly(family, config.k, e);
    }
  });

  std::vector<double> traces;
  traces.reserve(result.trials.size());
  for (const auto& trial : result.trials) {
    if (trial.exceeded) ++result.exceed_count;
    traces.push_back(trial.trace);
  }
  result.trace_mean = std::accumulate(traces.begin(), traces.end(), 0.0) / static_cast<double>(traces.size());
  result.trace_median = quantile(traces, 0.5);
  result.trace_q90 = quantile(traces, 0.9);
  result.trace_max = *std::max_element(traces.begin(), traces.end());
  return result;
}

}  // namespace spectral_walks
