#pragma once

// Reproduction studies behind the command-line driver: configuration, execution and
// CSV/JSON emission. Every record is a pure function of (experiment, parameters, seed).

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spectral_walks {

enum class ExperimentId { WignerConvergence, MpConvergence, MckayConvergence, Tail, WalkCensus, Certify };

std::string experiment_name(ExperimentId id);
/// Throws ConfigError for unknown names.
ExperimentId parse_experiment(const std::string& name);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  ExperimentId id = ExperimentId::WignerConvergence;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Reads {"experiment": ..., "seed": ..., "parameters": {...}}. The experiment and seed may be
/// supplied by the caller instead (command-line flags win); a seed is mandatory.
ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<ExperimentId> id,
                              std::optional<std::uint64_t> seed);

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultRecord {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> parameters;  // echo, JSON-encoded values
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, double>> summary;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

/// Runs the study. Throws ConfigError for bad or unknown parameters and propagates library errors.
ResultRecord run(const ExperimentConfig& config);

/// Header row, one row per trial, then "#summary,<name>,<value>" and "#param,<name>,<value>" rows.
void emit_csv(std::ostream& out, const ResultRecord& record);
nlohmann::ordered_json to_json(const ResultRecord& record);
/// Inverse of to_json; throws ValidationError on malformed documents.
ResultRecord record_from_json(const nlohmann::ordered_json& doc);
void emit(std::ostream& out, const ResultRecord& record, OutputFormat format);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace spectral_walks
