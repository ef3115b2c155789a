#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "gp/distance.hpp"
#include "gp/error.hpp"
#include "gp/mesh_io.hpp"
#include "gp/projection.hpp"
#include "gp/reference_element.hpp"
#include "gp/refinement.hpp"
#include "gp/stability.hpp"

namespace gp::cli {

using nlohmann::ordered_json;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write '" + path + "'");
  os << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct BuiltMesh {
  Mesh mesh{1};
  bool lg_ok = true;
  int worst_gap = 0;
};

BuiltMesh build_mesh(const RunConfig& cfg) {
  if (cfg.rounds < 0) throw InputError("--rounds must be nonnegative");
  if (cfg.alpha < 0) throw InputError("--alpha must be nonnegative");
  BuiltMesh b;
  b.mesh = cfg.input.empty() ? kuhn_initial_mesh(cfg.dim, cfg.cells) : read_mesh_file(cfg.input);
  MarkingPolicy pol;
  pol.kind = parse_marking(cfg.policy);
  pol.fraction = cfg.fraction;
  pol.max_marked = static_cast<std::size_t>(std::max(cfg.max_marked, 0));
  pol.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  for (int r = 0; r < cfg.rounds; ++r) {
    const auto marked = select_marked(b.mesh, pol, rng);
    if (cfg.alpha > 0) {
      b.mesh.refine_lg(marked, cfg.alpha);
      const int gap = b.mesh.max_touching_level_gap();
      b.worst_gap = std::max(b.worst_gap, gap);
      b.lg_ok = b.lg_ok && gap <= cfg.alpha;
    } else {
      b.mesh.refine_closure(marked);
    }
  }
  return b;
}

struct Element {
  bool cr = false;
  int K = 1;
};

Element parse_element(const std::string& s) {
  if (s == "cr" || s == "CR") return {true, 1};
  int K = 0;
  try {
    std::size_t pos = 0;
    K = std::stoi(s, &pos);
    if (pos != s.size()) K = 0;
  } catch (const std::exception&) {
    K = 0;
  }
  if (K < 1 || K > 6) throw InputError("--element must be a degree 1..6 or 'cr'");
  return {false, K};
}

FeSpace make_space(const Mesh& m, const Element& e, bool zero_trace = false) {
  return e.cr ? FeSpace::crouzeix_raviart(m) : FeSpace::lagrange(m, e.K, zero_trace);
}

std::vector<double> h_values(const Mesh& m, const ElementDistance& dist) {
  std::vector<double> h;
  for (int id : dist.elements()) h.push_back(m.h(id));
  return h;
}

ordered_json grading_json(const Mesh& m, DistanceKind kind) {
  const ElementDistance dist(m, kind);
  const int gap = level_gap(m, dist);
  ordered_json j;
  j["level_gap"] = gap;
  j["gamma_h"] = grading_of(h_values(m, dist), dist);
  j["gamma_h_exact"] = "2^(" + std::to_string(gap) + "/" + std::to_string(m.dim()) + ")";
  return j;
}

double parse_p(double p) { return p <= 0.0 ? kInfinityP : p; }

} // namespace

// ---------------------------------------------------------------------------

int cmd_refine(const RunConfig& cfg, const RefineArgs& args) {
  const BuiltMesh b = build_mesh(cfg);
  const Mesh& m = b.mesh;
  const auto conf = m.check_conformity();
  ordered_json rep;
  rep["run"] = cfg.header();
  rep["elements"] = m.num_active();
  rep["vertices"] = m.num_vertices();
  rep["max_level"] = m.max_level();
  rep["conforming"] = conf.conforming;
  rep["vertex_distance"] = grading_json(m, DistanceKind::Vertex);
  rep["face_distance"] = grading_json(m, DistanceKind::Face);
  rep["similarity_classes"] = m.similarity_class_count();
  bool ok = conf.conforming;
  if (cfg.alpha > 0) {
    rep["alpha"] = cfg.alpha;
    rep["gamma_h_bound"] = std::pow(2.0, static_cast<double>(cfg.alpha) / m.dim());
    rep["lg_after_every_round"] = b.lg_ok;
    rep["worst_touching_gap"] = b.worst_gap;
    ok = ok && b.lg_ok && rep["vertex_distance"]["level_gap"].get<int>() <= cfg.alpha;
  }
  rep["ok"] = ok;
  if (!cfg.output.empty()) {
    ordered_json mj = ordered_json::parse(mesh_to_json(m));
    mj["run"] = cfg.header();
    emit(cfg.output, mj.dump() + "\n");
  }
  emit(args.report, dump(rep));
  return ok ? kExitOk : kExitViolation;
}

int cmd_certify(const RunConfig& cfg, const CertifyArgs& args) {
  const Element el = parse_element(cfg.element);
  BuiltMesh b;
  std::string mesh_id;
  if (args.single_simplex) {
    b.mesh = single_simplex_mesh(cfg.dim);
    mesh_id = "simplex";
  } else {
    b = build_mesh(cfg);
    mesh_id = cfg.input.empty() ? "kuhn" : cfg.input;
  }
  if (args.zero_trace) {
    if (el.cr) throw InputError("--zero-trace applies to Lagrange elements only");
    b.mesh.mark_boundary_gamma();
  }
  const FeSpace V = make_space(b.mesh, el, args.zero_trace);
  const SpectralCertificate cert = certify_condition(V, mesh_id, args.dense_limit);
  const ApproxOperator C(V);
  const L2Projector Q(V);
  const IdentityCheck id = check_two_sided_identity(C, Q, 3, cfg.seed);
  const double defect = std::max({id.cq_defect, id.qc_defect, id.symmetry, id.form_defect});
  ordered_json j;
  j["run"] = cfg.header();
  j["certificate"] = ordered_json::parse(to_json(cert));
  j["identity"] = {{"cq_defect", id.cq_defect}, {"qc_defect", id.qc_defect}, {"symmetry", id.symmetry}, {"form_defect", id.form_defect}};
  const bool ok = cert.within_bound(cfg.tol.kappa) && defect <= cfg.tol.identity;
  j["within_bound"] = cert.within_bound(cfg.tol.kappa);
  j["ok"] = ok;
  emit(cfg.output, dump(j));
  return ok ? kExitOk : kExitViolation;
}

int cmd_decay(const RunConfig& cfg, const DecayArgs& args) {
  const Element el = parse_element(cfg.element);
  const BuiltMesh b = build_mesh(cfg);
  const FeSpace V = make_space(b.mesh, el);
  const L2Projector Q(V);
  const ElementDistance dist(b.mesh, DistanceKind::Vertex);
  if (args.source < 0 || static_cast<std::size_t>(args.source) >= dist.size()) throw InputError("--source out of range");
  const std::vector<int> Lp = {args.source};
  const auto row = dist.row(static_cast<std::size_t>(args.source));
  std::ostringstream os;
  os << cfg.tsv_header();
  os << "delta\tmeasured\tsampled\tbound\tok\n";
  bool ok = true, monotone = true;
  double prev = 1e300;
  for (int delta = 1; delta <= args.max_delta; ++delta) {
    std::vector<int> L;
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (row[t] >= delta && row[t] != ElementDistance::kInfinity) L.push_back(static_cast<int>(t));
    }
    if (L.empty()) break;
    const DecayMeasurement dm = measure_decay(Q, dist, L, Lp, args.trials, cfg.seed + static_cast<std::uint64_t>(delta));
    const bool row_ok = dm.exact <= dm.bound * (1 + cfg.tol.decay);
    ok = ok && row_ok;
    if (dm.exact > prev + cfg.tol.monotone) monotone = false;
    prev = dm.exact;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d\t%.6e\t%.6e\t%.6e\t%d\n", delta, dm.exact, dm.sampled, dm.bound, row_ok ? 1 : 0);
    os << buf;
  }
  os << "# monotone_in_delta " << (monotone ? "true" : "false") << "\n";
  emit(cfg.output, os.str());
  return ok && monotone ? kExitOk : kExitViolation;
}

int cmd_tables(const RunConfig& cfg, const TablesArgs& args) {
  const std::vector<std::pair<std::string, std::string>> tables = {
      {"qnew.tsv", table_qnew_tsv()},
      {"stability_2d.tsv", table_stability_tsv(2)},
      {"stability_3d.tsv", table_stability_tsv(3)},
      {"cr_thresholds.tsv", table_cr_tsv(args.probe_limit)},
  };
  if (args.output_dir.empty()) {
    std::string all;
    for (const auto& [name, body] : tables) all += "## " + name + "\n" + cfg.tsv_header() + body;
    emit(cfg.output, all);
    return kExitOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(args.output_dir, ec);
  if (ec) throw InputError("cannot create '" + args.output_dir + "'");
  for (const auto& [name, body] : tables) emit((std::filesystem::path(args.output_dir) / name).string(), cfg.tsv_header() + body);
  return kExitOk;
}

int cmd_stability(const RunConfig& cfg, const StabilityArgs& args) {
  Family f;
  if (cfg.element == "cr" || cfg.element == "CR") {
    f = Family::crouzeix_raviart();
  } else if (cfg.element == "inf") {
    f = Family::lagrange_limit();
  } else {
    f = Family::lagrange(parse_element(cfg.element).K);
  }
  double gh = args.gamma_h;
  if (!args.strategy.empty()) gh = preset_grading(args.strategy, cfg.dim, cfg.alpha);
  if (!(gh >= 1.0)) throw InputError("give --gamma-h >= 1 or a known --strategy");
  if (!(args.gamma_rho >= 1.0)) throw InputError("--gamma-rho must be >= 1");
  ordered_json j;
  j["run"] = cfg.header();
  j["family"] = f.name();
  j["gamma_h"] = gh;
  j["gamma_rho"] = args.gamma_rho;
  for (const auto& [name, kind] : {std::pair{"Lp", NormKind::Lp}, std::pair{"W1p", NormKind::W1p}}) {
    const StabilityVerdict v = stability_range(cfg.dim, f, gh, args.gamma_rho, kind);
    ordered_json k;
    k["gamma_max"] = std::isinf(v.gamma_max) ? ordered_json("inf") : ordered_json(v.gamma_max);
    k["threshold"] = std::isinf(v.threshold) ? ordered_json("inf") : ordered_json(v.threshold);
    k["interval"] = v.interval.to_string();
    ordered_json adm = ordered_json::object();
    for (double p : args.p) adm[p <= 0.0 ? std::string("inf") : format4(p)] = v.admissible(parse_p(p));
    if (!args.p.empty()) k["admissible"] = adm;
    j[name] = k;
  }
  if (!f.cr) {
    const auto kmin = min_degree_w12(cfg.dim, gh);
    j["min_degree_w12"] = kmin ? ordered_json(*kmin) : ordered_json(nullptr);
  }
  emit(cfg.output, dump(j));
  return kExitOk;
}

int cmd_cr_check(const RunConfig& cfg, const CrCheckArgs& args) {
  ordered_json j;
  j["run"] = cfg.header();
  bool ok = true;
  ordered_json local = ordered_json::object();
  for (int d = 1; d <= 5; ++d) {
    const bool eq = cr_mass_exact(d) == cr_mass_formula(d);
    local[std::to_string(d)] = eq;
    ok = ok && eq;
  }
  j["local_mass_matches_formula"] = local;
  ordered_json meshes = ordered_json::array();
  for (int d = 2; d <= 3; ++d) {
    RunConfig c = cfg;
    c.dim = d;
    const BuiltMesh b = build_mesh(c);
    const FeSpace V = FeSpace::crouzeix_raviart(b.mesh);
    const SpectralCertificate cert = certify_condition(V, "kuhn");
    ordered_json m;
    m["d"] = d;
    m["dofs"] = V.num_dofs();
    m["kappa"] = cert.kappa;
    m["bound_kappa"] = cert.bound_kappa;
    m["within_bound"] = cert.within_bound(cfg.tol.kappa);
    ok = ok && cert.within_bound(cfg.tol.kappa);
    if (d == 2) {
      const SparseMatrix M = V.mass();
      bool diagonal = true;
      for (int k = 0; k < M.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(M, k); it; ++it) diagonal = diagonal && (it.row() == it.col() || it.value() == 0.0);
      }
      const ApproxOperator C(V);
      const L2Projector Q(V);
      Rng rng(cfg.seed);
      double defect = 0.0;
      for (int s = 0; s < 5; ++s) {
        const Eigen::VectorXd y = random_broken(V, rng);
        const Eigen::VectorXd qy = Q.project_broken(y);
        defect = std::max(defect, mass_norm(Q.mass(), C.apply_broken(y) - qy) / mass_norm(Q.mass(), qy));
      }
      m["mass_diagonal"] = diagonal;
      m["c_minus_q"] = defect;
      ok = ok && diagonal && defect <= cfg.tol.identity;
    }
    meshes.push_back(m);
  }
  j["meshes"] = meshes;
  const CrThresholds t = cr_dimension_thresholds(args.probe_limit);
  j["thresholds"] = {{"lp_all_p_max_d", t.lp_all_p_max_d},
                     {"w1p_all_p_max_d", t.w1p_all_p_max_d},
                     {"w12_all_d", t.w12_all_d},
                     {"probe_limit", t.probe_limit}};
  j["ok"] = ok;
  emit(cfg.output, dump(j));
  return ok ? kExitOk : kExitViolation;
}

int cmd_closure_bench(const RunConfig& cfg) {
  if (cfg.alpha < 1) throw InputError("closure-bench needs --alpha >= 1");
  Mesh m = cfg.input.empty() ? kuhn_initial_mesh(cfg.dim, cfg.cells) : read_mesh_file(cfg.input);
  MarkingPolicy pol;
  pol.kind = parse_marking(cfg.policy);
  pol.fraction = cfg.fraction;
  pol.max_marked = static_cast<std::size_t>(std::max(cfg.max_marked, 0));
  pol.seed = cfg.seed;
  const ClosureReport rep = closure_benchmark(m, pol, cfg.rounds, cfg.alpha);
  std::ostringstream os;
  os << cfg.tsv_header();
  os << "round\tmarked\telements\tlg_rounds\tratio\n";
  for (const auto& r : rep.rounds) {
    char buf[160];
    if (std::isnan(r.ratio)) {
      std::snprintf(buf, sizeof buf, "%d\t%zu\t%zu\t%zu\tno-op\n", r.round, r.marked, r.elements, r.lg_rounds);
    } else {
      std::snprintf(buf, sizeof buf, "%d\t%zu\t%zu\t%zu\t%.6f\n", r.round, r.marked, r.elements, r.lg_rounds, r.ratio);
    }
    os << buf;
  }
  const bool lg = m.max_touching_level_gap() <= cfg.alpha;
  if (rep.no_op) {
    os << "# ratio no-op\n";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", rep.envelope);
    os << "# envelope " << buf << "\n";
    os << "# no_growth_rule_1.05 " << (rep.bounded ? "holds" : "violated") << "\n";
  }
  os << "# lg_property " << (lg ? "holds" : "violated") << "\n";
  emit(cfg.output, os.str());
  return lg ? kExitOk : kExitViolation;
}

int cmd_grading(const RunConfig& cfg, const GradingArgs& args) {
  const BuiltMesh b = build_mesh(cfg);
  ordered_json j;
  j["run"] = cfg.header();
  j["elements"] = b.mesh.num_active();
  j["vertex_distance"] = grading_json(b.mesh, DistanceKind::Vertex);
  j["face_distance"] = grading_json(b.mesh, DistanceKind::Face);
  ordered_json presets = ordered_json::object();
  for (const auto& name : preset_names()) {
    if (name.rfind("2D-", 0) == 0 && cfg.dim != 2) continue;
    presets[name] = preset_grading(name, cfg.dim, std::max(cfg.alpha, 1));
  }
  j["published_gradings"] = presets;
  bool ok = true;
  if (args.bound) {
    ok = j["vertex_distance"]["gamma_h"].get<double>() <= *args.bound;
    j["bound"] = *args.bound;
  }
  j["ok"] = ok;
  emit(cfg.output, dump(j));
  return ok ? kExitOk : kExitViolation;
}

} // namespace gp::cli
