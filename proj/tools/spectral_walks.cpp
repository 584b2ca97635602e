// spectral-walks <experiment> --config <file> [--seed S] [--threads T] [--out PATH] [--format csv|json]
//
// Exit status: 0 on success, 2 for configuration or contract errors, 3 for numeric failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/experiments.hpp"

namespace sw = spectral_walks;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sw::ConfigError("cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw sw::ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-backtracking walks and orthogonal polynomials for random-matrix spectra"};
  std::string experiment;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_path;
  std::string format = "csv";
  app.add_option("experiment", experiment,
                 "wigner-convergence | mp-convergence | mckay-convergence | tail | walk-census | certify")
      ->required();
  app.add_option("--config", config_path, "JSON config file")->required();
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--threads", threads, "worker threads for independent trials")->check(CLI::Range(1, 1024));
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    sw::ExperimentConfig config = sw::parse_config(read_config(config_path), sw::parse_experiment(experiment), seed);
    config.threads = threads;
    const auto start = std::chrono::steady_clock::now();
    const sw::ResultRecord record = sw::run(config);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    std::ostringstream text;
    sw::emit(text, record, format == "json" ? sw::OutputFormat::Json : sw::OutputFormat::Csv);
    if (out_path.empty()) {
      std::cout << text.str() << std::flush;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out || !(out << text.str()) || !out.flush()) throw sw::ConfigError("cannot write '" + out_path + "'");
    }
    std::cerr << record.experiment << ": " << record.rows.size() << " rows in " << elapsed.count() << " s\n";
    return 0;
  } catch (const sw::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const sw::SamplingError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
