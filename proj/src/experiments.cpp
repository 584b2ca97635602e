#include "spectral_walks/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "spectral_walks/bounds.hpp"
#include "spectral_walks/ensembles.hpp"
#include "spectral_walks/errors.hpp"
#include "spectral_walks/graph.hpp"
#include "spectral_walks/measures.hpp"
#include "spectral_walks/parallel.hpp"
#include "spectral_walks/rng.hpp"
#include "spectral_walks/spectra.hpp"
#include "spectral_walks/walks.hpp"

namespace spectral_walks {

namespace {

using json = nlohmann::json;

const std::vector<std::pair<ExperimentId, std::string>>& experiment_names() {
  static const std::vector<std::pair<ExperimentId, std::string>> names{
      {ExperimentId::WignerConvergence, "wigner-convergence"},
      {ExperimentId::MpConvergence, "mp-convergence"},
      {ExperimentId::MckayConvergence, "mckay-convergence"},
      {ExperimentId::Tail, "tail"},
      {ExperimentId::WalkCensus, "walk-census"},
      {ExperimentId::Certify, "certify"},
  };
  return names;
}

// Typed access to the "parameters" object. Every key must be consumed; leftovers are reported.
class Params {
 public:
  Params(const json& doc, ResultRecord& record) : doc_(doc), record_(record) {
    if (!doc_.is_object()) throw ConfigError("parameters must be a JSON object");
  }

  int integer(const std::string& key, int fallback, int lo, int hi) {
    const json value = take(key, json(fallback));
    if (!value.is_number_integer()) throw ConfigError("parameter '" + key + "' must be an integer");
    const auto v = value.get<long long>();
    if (v < lo || v > hi) {
      throw ConfigError("parameter '" + key + "' = " + std::to_string(v) + " must lie in [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(v);
  }

  double real(const std::string& key, double fallback, double lo, double hi) {
    const json value = take(key, json(fallback));
    if (!value.is_number()) throw ConfigError("parameter '" + key + "' must be a number");
    const double v = value.get<double>();
    if (!(v >= lo && v <= hi)) {
      throw ConfigError("parameter '" + key + "' = " + format_double(v) + " must lie in [" + format_double(lo) + ", " +
                        format_double(hi) + "]");
    }
    return v;
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) {
    const json value = take(key, json(fallback));
    if (!value.is_string()) throw ConfigError("parameter '" + key + "' must be a string");
    const auto v = value.get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError("parameter '" + key + "' = '" + v + "' must be one of: " + list);
    }
    return v;
  }

  std::string text(const std::string& key) {
    const json value = take(key, json());
    if (!value.is_string()) throw ConfigError("parameter '" + key + "' must be a string");
    return value.get<std::string>();
  }

  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback, int lo, int hi) {
    const json value = take(key, json(fallback));
    if (!value.is_array() || value.empty()) throw ConfigError("parameter '" + key + "' must be a non-empty array");
    std::vector<int> out;
    for (const auto& item : value) {
      if (!item.is_number_integer()) throw ConfigError("parameter '" + key + "' must contain integers");
      const auto v = item.get<long long>();
      if (v < lo || v > hi) {
        throw ConfigError("parameter '" + key + "' entry " + std::to_string(v) + " must lie in [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
      }
      out.push_back(static_cast<int>(v));
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (!used_.contains(key)) throw ConfigError("unknown parameter '" + key + "'");
    }
  }

 private:
  json take(const std::string& key, json fallback) {
    used_.insert(key);
    json value = doc_.contains(key) ? doc_.at(key) : std::move(fallback);
    if (!value.is_null()) record_.parameters.emplace_back(key, value.dump());
    return value;
  }

  const json& doc_;
  ResultRecord& record_;
  std::set<std::string> used_;
};

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

Cell seed_cell(std::uint64_t seed) { return std::to_string(seed); }

void run_wigner_convergence(const ExperimentConfig& config, Params& p, ResultRecord& record) {
  const auto sizes = p.integers("sizes", {100, 400, 1600}, 1, static_cast<int>(kDefaultDimensionCap));
  const int trials = p.integer("trials", 20, 1, 10000);
  p.finish();
  record.columns = {"n", "trial", "seed", "dk", "norm", "lambda_min", "lambda_max"};
  const LimitMeasure target = LimitMeasure::wigner();
  for (int n : sizes) {
    struct Trial {
      double dk, norm, lo, hi;
    };
    std::vector<Trial> out(static_cast<std::size_t>(trials));
    for_each_index(trials, config.threads, [&](int t) {
      const EmpiricalSpectrum e = empirical(wigner_matrix(n, trial_seed(config.seed, t)));
      out[t] = {ks_distance_empirical(e, target), operator_norm(e), e.min(), e.max()};
    });
    std::vector<double> dks;
    for (int t = 0; t < trials; ++t) {
      record.rows.push_back({std::int64_t{n}, std::int64_t{t}, seed_cell(trial_seed(config.seed, t)), out[t].dk,
                             out[t].norm, out[t].lo, out[t].hi});
      dks.push_back(out[t].dk);
    }
    const std::string tag = "n=" + std::to_string(n);
    record.summary.emplace_back("median_dk[" + tag + "]", median(dks));
    record.summary.emplace_back("max_dk[" + tag + "]", *std::max_element(dks.begin(), dks.end()));
  }
}

void run_mp_convergence(const ExperimentConfig& config, Params& p, ResultRecord& record) {
  const int n = p.integer("n", 300, 2, static_cast<int>(kDefaultDimensionCap));
  const int big_n = p.integer("N", 600, n, 1 << 20);
  const int trials = p.integer("trials", 20, 1, 10000);
  const double edge_tol = p.real("edge_tolerance", 0.1, 0.0, 10.0);
  p.finish();
  const double xi = static_cast<double>(n) / big_n;
  const double lo_edge = (1.0 - std::sqrt(xi)) * (1.0 - std::sqrt(xi));
  const double hi_edge = (1.0 + std::sqrt(xi)) * (1.0 + std::sqrt(xi));
  const LimitMeasure target = LimitMeasure::marchenko_pastur(xi);
  record.columns = {"n", "N", "trial", "seed", "dk", "lambda_min", "lambda_max", "edges_ok"};
  struct Trial {
    double dk, lo, hi;
  };
  std::vector<Trial> out(static_cast<std::size_t>(trials));
  for_each_index(trials, config.threads, [&](int t) {
    const EmpiricalSpectrum e = empirical(covariance(rect_sign_matrix(n, big_n, trial_seed(config.seed, t))));
    out[t] = {ks_distance_empirical(e, target), e.min(), e.max()};
  });
  std::vector<double> dks;
  std::int64_t edges_ok = 0;
  for (int t = 0; t < trials; ++t) {
    const bool ok = std::abs(out[t].lo - lo_edge) <= edge_tol && std::abs(out[t].hi - hi_edge) <= edge_tol;
    edges_ok += ok ? 1 : 0;
    record.rows.push_back({std::int64_t{n}, std::int64_t{big_n}, std::int64_t{t}, seed_cell(trial_seed(config.seed, t)),
                           out[t].dk, out[t].lo, out[t].hi, std::int64_t{ok ? 1 : 0}});
    dks.push_back(out[t].dk);
  }
  record.summary.emplace_back("median_dk", median(dks));
  record.summary.emplace_back("edges_ok", static_cast<double>(edges_ok));
  record.summary.emplace_back("edge_lo", lo_edge);
  record.summary.emplace_back("edge_hi", hi_edge);
}

void run_mckay_convergence(const ExperimentConfig& config, Params& p, ResultRecord& record) {
  const int d = p.integer("d", 3, 3, 64);
  const auto sizes = p.integers("sizes", {50, 200, 800}, d + 1, static_cast<int>(kDefaultDimensionCap));
  const int trials = p.integer("trials", 10, 1, 10000);
  p.finish();
  for (int n : sizes) {
    if ((static_cast<long long>(n) * d) % 2 != 0) {
      throw ConfigError("parameter 'sizes' entry " + std::to_string(n) + " gives an odd n * d");
    }
  }
  const LimitMeasure target = LimitMeasure::kesten_mckay(d);
  record.columns = {"n", "d", "trial", "seed", "dk", "girth", "lambda_2", "lambda_min"};
  for (int n : sizes) {
    struct Trial {
      double dk, second, lo;
      std::int64_t girth;
    };
    std::vector<Trial> out(static_cast<std::size_t>(trials));
    for_each_index(trials, config.threads, [&](int t) {
      const Graph g = random_regular(n, d, trial_seed(config.seed, t));
      const EmpiricalSpectrum e = empirical(g.adjacency_matrix());
      const auto& values = e.eigenvalues();
      out[t] = {ks_distance_empirical(e, target), values[values.size() - 2], e.min(), girth(g).value_or(0)};
    });
    std::vector<double> dks;
    for (int t = 0; t < trials; ++t) {
      record.rows.push_back({std::int64_t{n}, std::int64_t{d}, std::int64_t{t}, seed_cell(trial_seed(config.seed, t)),
                             out[t].dk, out[t].girth, out[t].second, out[t].lo});
      dks.push_back(out[t].dk);
    }
    record.summary.emplace_back("median_dk[n=" + std::to_string(n) + "]", median(dks));
  }
}

void run_tail(const ExperimentConfig& config, Params& p, ResultRecord& record) {
  TailConfig tail;
  tail.ensemble = p.choice("ensemble", "wigner", {"wigner", "covariance"}) == "wigner" ? TailEnsemble::Wigner
                                                                                       : TailEnsemble::Covariance;
  const bool wigner = tail.ensemble == TailEnsemble::Wigner;
  tail.n = p.integer("n", wigner ? 400 : 200, wigner ? 4 : 2, static_cast<int>(kDefaultDimensionCap));
  if (!wigner) tail.N = p.integer("N", 2 * tail.n, tail.n, 1 << 20);
  tail.k = p.integer("k", 8, 2, 64);
  if (tail.k % 2 != 0) throw ConfigError("parameter 'k' = " + std::to_string(tail.k) + " must be even");
  tail.eps = p.real("eps", 0.15, 0.0, 1.0);
  tail.trials = p.integer("trials", 100, 1, 10000);
  p.finish();
  tail.seed = config.seed;
  tail.threads = config.threads;
  const TailResult result = tail_experiment(tail);
  record.columns = {"trial", "seed", "lambda_min", "lambda_max", "norm", "trace", "exceeded"};
  for (int t = 0; t < tail.trials; ++t) {
    const TailTrial& r = result.trials[t];
    record.rows.push_back({std::int64_t{t}, seed_cell(trial_seed(config.seed, t)), r.lambda_min, r.lambda_max, r.norm,
                           r.trace, std::int64_t{r.exceeded ? 1 : 0}});
  }
  record.summary.emplace_back("exceed_count", static_cast<double>(result.exceed_count));
  record.summary.emplace_back("trace_mean", result.trace_mean);
  record.summary.emplace_back("trace_median", result.trace_median);
  record.summary.emplace_back("trace_q90", result.trace_q90);
  record.summary.emplace_back("trace_max", result.trace_max);
}

void run_walk_census(const ExperimentConfig&, Params& p, ResultRecord& record) {
  const bool bipartite = p.choice("family", "complete", {"complete", "complete_bipartite"}) == "complete_bipartite";
  const int n = p.integer("n", 5, 1, 64);
  const int big_n = bipartite ? p.integer("N", n, 1, 64) : 0;
  const int max_k = p.integer("max_k", 4, 1, kMaxWalkLength / 2);
  p.finish();
  const auto rows =
      even_walk_census(bipartite ? CensusFamily::CompleteBipartite : CensusFamily::Complete, n, big_n, max_k);
  record.columns = {"length", "count", "ratio"};
  double max_ratio = 0.0;
  for (const auto& row : rows) {
    record.rows.push_back({std::int64_t{row.length}, row.count, row.ratio});
    max_ratio = std::max(max_ratio, row.ratio);
  }
  record.summary.emplace_back("max_ratio", max_ratio);
}

void run_certify(const ExperimentConfig& config, Params& p, ResultRecord& record) {
  const std::string source =
      p.choice("source", "petersen",
               {"petersen", "complete", "complete_bipartite", "cycle", "random-regular", "edge-list", "wigner",
                "covariance"});
  const int m = p.integer("m", 3, 2, 40);
  const bool graph_source = source != "wigner" && source != "covariance";
  const bool random = source == "random-regular" || source == "wigner" || source == "covariance";
  const int trials = random ? p.integer("trials", 10, 1, 10000) : 1;

  int n = 0;
  int big_n = 0;
  int d = 0;
  std::string path;
  if (source == "complete" || source == "cycle" || source == "wigner") {
    n = p.integer("n", source == "wigner" ? 400 : 5, source == "cycle" ? 3 : 1, static_cast<int>(kDefaultDimensionCap));
  } else if (source == "complete_bipartite") {
    n = p.integer("n", 3, 1, static_cast<int>(kDefaultDimensionCap) / 2);
  } else if (source == "random-regular") {
    n = p.integer("n", 100, 4, static_cast<int>(kDefaultDimensionCap));
    d = p.integer("d", 3, 3, n - 1);
  } else if (source == "covariance") {
    n = p.integer("n", 200, 2, static_cast<int>(kDefaultDimensionCap));
    big_n = p.integer("N", 2 * n, n, 1 << 20);
  } else if (source == "edge-list") {
    path = p.text("path");
  }
  p.finish();

  auto graph_for = [&](std::uint64_t seed) {
    if (source == "petersen") return Graph::petersen();
    if (source == "complete") return Graph::complete(n);
    if (source == "complete_bipartite") return Graph::complete_bipartite(n, n);
    if (source == "cycle") return Graph::cycle(n);
    if (source == "random-regular") return random_regular(n, d, seed);
    return load_edge_list(path);
  };

  record.columns = {"trial", "seed", "m", "bound", "actual", "b_prev", "sup_m", "eps_norm", "inside", "dominated"};
  std::vector<std::optional<Certification>> out(static_cast<std::size_t>(trials));
  for_each_index(trials, config.threads, [&](int t) {
    const std::uint64_t seed = trial_seed(config.seed, t);
    if (graph_source) {
      const Graph g = graph_for(seed);
      const auto degree = g.regular_degree();
      if (!degree || *degree < 3) throw ConfigError("certify: the graph must be d-regular with d >= 3");
      out[t] = certify(LimitMeasure::kesten_mckay(*degree), g.adjacency_matrix(), m);
    } else if (source == "wigner") {
      out[t] = certify(LimitMeasure::wigner(), wigner_matrix(n, seed), m);
    } else {
      out[t] = certify(LimitMeasure::marchenko_pastur(static_cast<double>(n) / big_n),
                       covariance(rect_sign_matrix(n, big_n, seed)), m);
    }
  });

  std::int64_t dominated = 0;
  double max_actual = 0.0;
  double min_bound = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Certification& c = *out[t];
    double eps_sq = 0.0;
    for (double e : c.certificate.epsilons) eps_sq += e * e;
    const bool ok = c.certificate.bound >= c.actual;
    dominated += ok ? 1 : 0;
    max_actual = std::max(max_actual, c.actual);
    min_bound = std::min(min_bound, c.certificate.bound);
    record.rows.push_back({std::int64_t{t}, seed_cell(trial_seed(config.seed, t)), std::int64_t{m}, c.certificate.bound,
                           c.actual, c.certificate.b_prev, c.certificate.sup_m, std::sqrt(eps_sq),
                           std::int64_t{c.spectrum_inside ? 1 : 0}, std::int64_t{ok ? 1 : 0}});
  }
  record.summary.emplace_back("dominated", static_cast<double>(dominated));
  record.summary.emplace_back("max_actual", max_actual);
  record.summary.emplace_back("min_bound", min_bound);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* x = std::get_if<double>(&cell)) return format_double(*x);
  return csv_field(std::get<std::string>(cell));
}

}  // namespace

std::string experiment_name(ExperimentId id) {
  for (const auto& [value, name] : experiment_names()) {
    if (value == id) return name;
  }
  return "unknown";
}

ExperimentId parse_experiment(const std::string& name) {
  for (const auto& [value, known] : experiment_names()) {
    if (known == name) return value;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<ExperimentId> id,
                              std::optional<std::uint64_t> seed) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "experiment" && key != "seed" && key != "parameters") {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig config;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string()) throw ConfigError("'experiment' must be a string");
    const ExperimentId named = parse_experiment(doc["experiment"].get<std::string>());
    if (id && *id != named) {
      throw ConfigError("config names experiment '" + experiment_name(named) + "' but '" + experiment_name(*id) +
                        "' was requested");
    }
    config.id = named;
  } else if (id) {
    config.id = *id;
  } else {
    throw ConfigError("no experiment given");
  }
  if (seed) {
    config.seed = *seed;
  } else if (doc.contains("seed")) {
    const json& value = doc["seed"];
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
      throw ConfigError("'seed' must be a non-negative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  } else {
    throw ConfigError("a seed is required (config key 'seed' or --seed)");
  }
  if (doc.contains("parameters")) config.parameters = doc["parameters"];
  return config;
}

ResultRecord run(const ExperimentConfig& config) {
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
  ResultRecord record;
  record.experiment = experiment_name(config.id);
  record.seed = config.seed;
  Params p(config.parameters, record);
  switch (config.id) {
    case ExperimentId::WignerConvergence:
      run_wigner_convergence(config, p, record);
      break;
    case ExperimentId::MpConvergence:
      run_mp_convergence(config, p, record);
      break;
    case ExperimentId::MckayConvergence:
      run_mckay_convergence(config, p, record);
      break;
    case ExperimentId::Tail:
      run_tail(config, p, record);
      break;
    case ExperimentId::WalkCensus:
      run_walk_census(config, p, record);
      break;
    case ExperimentId::Certify:
      run_certify(config, p, record);
      break;
  }
  return record;
}

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

void emit_csv(std::ostream& out, const ResultRecord& record) {
  for (std::size_t i = 0; i < record.columns.size(); ++i) out << (i ? "," : "") << csv_field(record.columns[i]);
  out << '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
  for (const auto& [name, value] : record.summary) out << "#summary," << csv_field(name) << ',' << format_double(value) << '\n';
  if (!record.experiment.empty()) {
    out << "#param,experiment," << csv_field(record.experiment) << '\n';
    out << "#param,seed," << record.seed << '\n';
  }
  for (const auto& [name, value] : record.parameters) out << "#param," << csv_field(name) << ',' << csv_field(value) << '\n';
}

nlohmann::ordered_json to_json(const ResultRecord& record) {
  nlohmann::ordered_json doc;
  doc["experiment"] = record.experiment;
  doc["seed"] = record.seed;
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : record.parameters) doc["parameters"][name] = nlohmann::ordered_json::parse(value);
  doc["columns"] = record.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : record.rows) {
    auto cells = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      std::visit([&cells](const auto& v) { cells.push_back(v); }, cell);
    }
    doc["rows"].push_back(std::move(cells));
  }
  doc["summary"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : record.summary) doc["summary"][name] = value;
  return doc;
}

ResultRecord record_from_json(const nlohmann::ordered_json& doc) {
  ResultRecord record;
  try {
    record.experiment = doc.at("experiment").get<std::string>();
    record.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& [name, value] : doc.at("parameters").items()) record.parameters.emplace_back(name, value.dump());
    record.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows")) {
      std::vector<Cell> cells;
      for (const auto& cell : row) {
        if (cell.is_number_integer()) {
          cells.emplace_back(cell.get<std::int64_t>());
        } else if (cell.is_number()) {
          cells.emplace_back(cell.get<double>());
        } else {
          cells.emplace_back(cell.get<std::string>());
        }
      }
      record.rows.push_back(std::move(cells));
    }
    for (const auto& [name, value] : doc.at("summary").items()) record.summary.emplace_back(name, value.get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed result record: ") + e.what());
  }
  return record;
}

void emit(std::ostream& out, const ResultRecord& record, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    emit_csv(out, record);
  } else {
    out << to_json(record).dump(2) << '\n';
  }
}

}  // namespace spectral_walks
