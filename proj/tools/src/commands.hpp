#pragma once

#include <optional>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace gp::cli {

struct RefineArgs {
  std::string report;
};

struct CertifyArgs {
  bool single_simplex = false;
  bool zero_trace = false;
  std::size_t dense_limit = 1500;
};

struct DecayArgs {
  int source = 0;
  int max_delta = 8;
  int trials = 4;
};

struct TablesArgs {
  std::string output_dir;
  int probe_limit = 100;
};

struct StabilityArgs {
  double gamma_h = 0.0;
  double gamma_rho = 1.0;
  std::string strategy;
  std::vector<double> p;
};

struct CrCheckArgs {
  int probe_limit = 100;
};

struct GradingArgs {
  std::optional<double> bound;
};

// Each returns a process exit code.
int cmd_refine(const RunConfig& cfg, const RefineArgs& args);
int cmd_certify(const RunConfig& cfg, const CertifyArgs& args);
int cmd_decay(const RunConfig& cfg, const DecayArgs& args);
int cmd_tables(const RunConfig& cfg, const TablesArgs& args);
int cmd_stability(const RunConfig& cfg, const StabilityArgs& args);
int cmd_cr_check(const RunConfig& cfg, const CrCheckArgs& args);
int cmd_closure_bench(const RunConfig& cfg);
int cmd_grading(const RunConfig& cfg, const GradingArgs& args);

} // namespace gp::cli
