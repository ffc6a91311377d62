#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shapeapprox/generator.hpp"
#include "shapeapprox/io.hpp"
#include "shapeapprox/moduli.hpp"

namespace shapeapprox {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ExperimentResult {
  std::string name;
  nlohmann::json config;  // every parameter, defaults included
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Check> checks;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// f_eps = x^eps against B_n at x = 1/2 and x = 1/n^2.
struct BernXepsConfig {
  double eps = 0.5;
  double lambda = 1.5;
  std::vector<int> n_list{16, 64, 256, 1024, 4096, 16384};
  unsigned precision_bits = 256;

  nlohmann::json to_json() const;
  static BernXepsConfig from_json(const nlohmann::json& j);
};

struct MnStudyConfig {
  std::string f = "exp";
  int q = 3;
  double lambda = 1.0;
  std::vector<int> n_list{20, 40, 60, 80, 100, 120};
  int x_grid = 65;  // interior Chebyshev points
  ModulusGrid grid{};
  unsigned precision_bits = 256;
  int threads = 0;  // 0: hardware concurrency

  nlohmann::json to_json() const;
  static MnStudyConfig from_json(const nlohmann::json& j);
};

struct Lambda2Config {
  std::vector<double> eps_list{1e-2, 1e-4, 1e-6, 1e-8};
  int n = 5;
  int discretization = 257;

  nlohmann::json to_json() const;
  static Lambda2Config from_json(const nlohmann::json& j);
};

struct GenReportConfig {
  int r = 1;
  std::vector<int> n_list{32, 64, 128, 256, 512};
  unsigned precision_bits = 256;

  nlohmann::json to_json() const;
  static GenReportConfig from_json(const nlohmann::json& j);
};

struct JacksonConfig {
  std::string f = "exp";
  int q = 4;
  std::vector<int> n_list{10, 15, 20, 25, 30, 35, 40};
  int discretization = 257;
  int constraint_grid = 257;

  nlohmann::json to_json() const;
  static JacksonConfig from_json(const nlohmann::json& j);
};

ExperimentResult run_bernstein_xeps(const BernXepsConfig& c);
ExperimentResult run_mn_error_study(const MnStudyConfig& c);
ExperimentResult run_lambda2_counterexample(const Lambda2Config& c);
ExperimentResult run_generator_report(const GenReportConfig& c);
ExperimentResult run_jackson(const JacksonConfig& c);

/// (x, f(x), Lf(x), error) on a uniform grid of `grid` points.
ExperimentResult run_apply(const std::string& op, const std::string& f, int grid, unsigned precision_bits = 256);
/// (t, value, argmax_h, argmax_x) for each t.
ExperimentResult run_moduli(const std::string& f, int k, double lambda, const std::vector<double>& t_grid,
                            const ModulusGrid& grid = {});

/// The generator record with delta_mu for mu = 1..4.
nlohmann::json generator_to_json(const GeneratorPoly& g);

/// Polynomial files ({"basis",...} JSON) are checked exactly through
/// check_k_monotone_poly; catalog names through check_k_monotone_fn.
nlohmann::json shape_report(const std::string& f, int k);

}  // namespace shapeapprox
