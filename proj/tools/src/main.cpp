#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gp/error.hpp"

namespace {

using gp::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Seed for all randomness");
  sub->add_option("--output", cfg.output, "Output file (stdout if omitted)");
  sub->add_option("--tol-kappa", cfg.tol.kappa, "Slack on condition bounds");
  sub->add_option("--tol-identity", cfg.tol.identity, "Tolerance of identity defects");
  sub->add_option("--tol-decay", cfg.tol.decay, "Relative slack on decay bounds");
}

void add_mesh(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dim", cfg.dim, "Dimension")->check(CLI::Range(1, 3));
  sub->add_option("--cells", cfg.cells, "Kuhn cells per axis of the initial mesh")->check(CLI::Range(1, 64));
  sub->add_option("--input", cfg.input, "Start from a mesh file instead of the Kuhn cube");
  sub->add_option("--alpha", cfg.alpha, "BiSecLG parameter (0: plain closure)");
  sub->add_option("--rounds", cfg.rounds, "Refinement rounds");
  sub->add_option("--policy", cfg.policy, "Marking: none, uniform, corner, random")
      ->check(CLI::IsMember({"none", "uniform", "corner", "random"}));
  sub->add_option("--fraction", cfg.fraction, "Marked fraction for random marking")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--max-marked", cfg.max_marked, "Cap on marks per round for random marking (0: none)");
}

void add_element(CLI::App* sub, RunConfig& cfg) { sub->add_option("--element", cfg.element, "Degree K or 'cr'"); }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded meshes, local projections and stability ranges"};
  app.set_version_flag("--version", gp::cli::version());
  app.require_subcommand(1);
  RunConfig cfg;

  gp::cli::RefineArgs refine_args;
  auto* refine = app.add_subcommand("refine", "Refine a mesh and report its grading");
  add_common(refine, cfg);
  add_mesh(refine, cfg);
  refine->add_option("--report", refine_args.report, "Grading report file (stdout if omitted)");

  gp::cli::CertifyArgs certify_args;
  auto* certify = app.add_subcommand("certify", "Spectral certificate of the approximating operator");
  add_common(certify, cfg);
  add_mesh(certify, cfg);
  add_element(certify, cfg);
  certify->add_flag("--single-simplex", certify_args.single_simplex, "Use one reference simplex");
  certify->add_flag("--zero-trace", certify_args.zero_trace, "Impose a zero trace on the whole boundary");
  certify->add_option("--dense-limit", certify_args.dense_limit, "Largest size for the dense eigensolver");

  gp::cli::DecayArgs decay_args;
  auto* decay = app.add_subcommand("decay", "Masked projection norms against the decay bound");
  add_common(decay, cfg);
  add_mesh(decay, cfg);
  add_element(decay, cfg);
  decay->add_option("--source", decay_args.source, "Element position of the source set");
  decay->add_option("--max-delta", decay_args.max_delta, "Largest distance");
  decay->add_option("--trials", decay_args.trials, "Random samples per distance");

  gp::cli::TablesArgs tables_args;
  auto* tables = app.add_subcommand("tables", "Reproduce the q_new, stability and CR tables");
  add_common(tables, cfg);
  tables->add_option("--output-dir", tables_args.output_dir, "Directory for one TSV file per table");
  tables->add_option("--probe-limit", tables_args.probe_limit, "Largest dimension probed for CR");

  gp::cli::StabilityArgs stab_args;
  auto* stability = app.add_subcommand("stability", "Admissible p for a grading");
  add_common(stability, cfg);
  stability->add_option("--dim", cfg.dim, "Dimension")->check(CLI::Range(1, 1000));
  stability->add_option("--element", cfg.element, "Degree K, 'inf' or 'cr'");
  stability->add_option("--alpha", cfg.alpha, "alpha for the BiSecLG strategy");
  stability->add_option("--gamma-h", stab_args.gamma_h, "Grading of the mesh size");
  stability->add_option("--gamma-rho", stab_args.gamma_rho, "Grading of the weight");
  stability->add_option("--strategy", stab_args.strategy, "Refinement strategy instead of --gamma-h");
  stability->add_option("--p", stab_args.p, "Exponents to test (0 for infinity)");

  gp::cli::CrCheckArgs cr_args;
  auto* cr = app.add_subcommand("cr-check", "Crouzeix-Raviart mass, condition and dimension checks");
  add_common(cr, cfg);
  add_mesh(cr, cfg);
  cr->add_option("--probe-limit", cr_args.probe_limit, "Largest dimension probed");

  auto* bench = app.add_subcommand("closure-bench", "Closure ratio of repeated BiSecLG refinement");
  add_common(bench, cfg);
  add_mesh(bench, cfg);

  gp::cli::GradingArgs grading_args;
  auto* grading = app.add_subcommand("grading", "Grading of the mesh size function");
  add_common(grading, cfg);
  add_mesh(grading, cfg);
  grading->add_option("--bound", grading_args.bound, "Fail when the vertex grading exceeds this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gp::cli::kExitInput;
  }

  try {
    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "certify") cfg.extra = {{"single_simplex", certify_args.single_simplex}, {"zero_trace", certify_args.zero_trace}, {"dense_limit", certify_args.dense_limit}};
    if (cfg.command == "decay") cfg.extra = {{"source", decay_args.source}, {"max_delta", decay_args.max_delta}, {"trials", decay_args.trials}};
    if (cfg.command == "tables") cfg.extra = {{"output_dir", tables_args.output_dir}, {"probe_limit", tables_args.probe_limit}};
    if (cfg.command == "stability") cfg.extra = {{"gamma_h", stab_args.gamma_h}, {"gamma_rho", stab_args.gamma_rho}, {"strategy", stab_args.strategy}, {"p", stab_args.p}};
    if (cfg.command == "cr-check") cfg.extra = {{"probe_limit", cr_args.probe_limit}};
    if (cfg.command == "refine") cfg.extra = {{"report", refine_args.report}};
    if (cfg.command == "grading" && grading_args.bound) cfg.extra = {{"bound", *grading_args.bound}};

    if (cfg.command == "refine") return gp::cli::cmd_refine(cfg, refine_args);
    if (cfg.command == "certify") return gp::cli::cmd_certify(cfg, certify_args);
    if (cfg.command == "decay") return gp::cli::cmd_decay(cfg, decay_args);
    if (cfg.command == "tables") return gp::cli::cmd_tables(cfg, tables_args);
    if (cfg.command == "stability") return gp::cli::cmd_stability(cfg, stab_args);
    if (cfg.command == "cr-check") return gp::cli::cmd_cr_check(cfg, cr_args);
    if (cfg.command == "closure-bench") return gp::cli::cmd_closure_bench(cfg);
    if (cfg.command == "grading") return gp::cli::cmd_grading(cfg, grading_args);
  } catch (const gp::InputError& e) {
    std::cerr << "gp: " << e.what() << "\n";
    return gp::cli::kExitInput;
  } catch (const gp::PropertyViolation& e) {
    std::cerr << "gp: " << e.what() << "\n";
    return gp::cli::kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "gp: " << e.what() << "\n";
    return 1;
  }
  return gp::cli::kExitInput;
}
