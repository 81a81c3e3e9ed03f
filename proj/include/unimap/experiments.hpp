#pragma once

#include "unimap/numeric.hpp"
#include "unimap/samplers.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace unimap {

enum class Verdict { Pass, Fail, Informational };
std::string to_string(Verdict v);

/// One compared quantity. Asserted checks decide pass/fail; the others are
/// recorded only.
struct Check {
  std::string quantity;
  std::string observed;
  std::string expected;
  std::string provenance;  ///< "formula", "enumeration", "identity", "measured", ...
  bool asserted = true;
  bool holds = true;
};

struct DataRow {
  std::string experiment;
  std::optional<int> n;
  std::string quantity;
  double value = 0;
};

struct ExperimentReport {
  std::string name;
  std::string claim;
  bool informational = false;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<DataRow> data;
  double runtime_seconds = 0;  ///< kept out of to_json so reports are reproducible

  Verdict verdict() const;
  void check(std::string quantity, std::string observed, std::string expected, std::string provenance,
             bool holds, bool asserted = true);
};

nlohmann::json to_json(const ExperimentReport& r);
void write_csv(std::ostream& out, const std::vector<DataRow>& rows);

/// report.json, data.csv and manifest.json (config hash and runtime) in dir.
void persist_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// Hex SHA-1 of "blob <len>\0<text>", as git hashes file contents.
std::string git_blob_hash(const std::string& text);

/// Runs body(i) for i in [0, count) on up to `workers` threads; results are
/// written by index, so the reduction order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned workers = 0);

/// Calls visit on every rooted one-face map with n edges and genus g.
void for_each_unicellular(int n, int g, const std::function<void(const CombinatorialMap&)>& visit);

ExperimentReport verify_one_vertex_law(const std::vector<int>& p_list);
ExperimentReport verify_cm_unicellular(const std::vector<DegreeSequence>& d_list, std::uint64_t trials,
                                       std::uint64_t seed);
ExperimentReport verify_decomposition_identity(int n, int g);
ExperimentReport verify_branch_profile_law(int n, int g);
ExperimentReport verify_branch_substitution(int instances, int max_vertices, int max_M, std::uint64_t seed);

struct CoreExpanderConfig {
  double theta = 0.3;
  double epsilon = 0.1;
  double eta = 0.05;
  std::vector<int> n_list{40};
  int trials = 50;
  std::uint64_t seed = 7;
  std::vector<int> m_curve{2, 3, 4, 6, 8, 12, 16, 24, 32};
  int cheeger_cap = 26;
};
ExperimentReport run_core_expander_experiment(const CoreExpanderConfig& cfg);

ExperimentReport sweep_rate_function(const std::vector<double>& eta_grid, const std::vector<double>& delta_grid);

}  // namespace unimap
